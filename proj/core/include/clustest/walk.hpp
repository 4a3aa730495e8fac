#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "clustest/collision.hpp"
#include "clustest/kwise.hpp"
#include "clustest/signed_graph.hpp"

namespace clustest {

/// Constants in the default parameter formulas
///   K = ceil(walks * sqrt(N) * log2 N), L = ceil(length * log2(N)^2 / eps),
///   repetitions = ceil(repetitions * (1 / eps)).
struct Calibration {
  double walks = 0.25;
  double length = 0.001;
  double repetitions = 0.02;
};

struct TesterParams {
  double epsilon = 0.01;
  std::uint64_t walks = 1;        // K
  std::uint64_t walk_length = 1;  // L
  std::uint64_t repetitions = 1;
  /// Independence of the coin source; 0 selects the largest odd value
  /// <= min(8L + 1, K * L).
  std::uint32_t independence = 0;
  double cost_model_constant = 1.0;

  std::uint64_t domain_size() const noexcept { return walks * walk_length; }
  std::uint32_t effective_independence() const noexcept;
};

/// Default parameters for an N-vertex input. Throws Error{kConfigError} for
/// epsilon outside (0, 1] or N < 1.
TesterParams default_tester_params(std::size_t n, double epsilon, const Calibration& cal = {});

/// Throws Error{kConfigError} when K, L or repetitions is zero or epsilon is
/// outside (0, 1].
void check_tester_params(const TesterParams& params);

/// An element of Y: a walk endpoint with the signed neighbors on its occupied
/// ports, in port order.
struct EndpointRecord {
  Vertex vertex = 0;
  std::vector<Neighbor> neighborhood;

  bool operator==(const EndpointRecord&) const = default;
};

struct EndpointRecordHash {
  std::size_t operator()(const EndpointRecord& r) const noexcept;
};

/// Lazy positive walk of j steps from s using the given coins (coins[m] is
/// step m). A Move(p) coin probes port p (one query) and crosses it if the
/// edge is positive; a Stay coin costs nothing. The endpoint's d ports are
/// then scanned (d queries). Requires 1 <= j <= coins.size().
EndpointRecord walk_endpoint(QuerySession& session, Vertex s, std::span<const CoinValue> coins,
                             std::uint64_t j);

/// Same walk with coins drawn from walk i (0-based) of a K x L source.
EndpointRecord walk_endpoint(QuerySession& session, Vertex s, const KWiseSource& source,
                             std::uint64_t i, std::uint64_t j, std::uint64_t walk_length);

/// True iff a.vertex appears in b.neighborhood behind a negative edge.
bool relation_R(const EndpointRecord& a, const EndpointRecord& b) noexcept;

enum class BackendKind : std::uint8_t { kExhaustive, kQuantumCost, kQuantumWalk };

struct BackendConfig {
  BackendKind kind = BackendKind::kExhaustive;
  std::uint64_t work_budget = std::uint64_t{1} << 26;
  /// Size of Y for the cost model; 0 means N.
  std::uint64_t y_size = 0;
  QuantumWalkOptions walk;
};

/// Domain point x of X = [K] x [L]: walk x / L, prefix length x % L + 1.
struct WalkPoint {
  std::uint64_t walk = 0;
  std::uint64_t prefix = 1;

  bool operator==(const WalkPoint&) const = default;
};

inline WalkPoint to_walk_point(std::uint64_t x, std::uint64_t walk_length) noexcept {
  return {x / walk_length, x % walk_length + 1};
}

struct Witness {
  std::uint64_t repetition = 0;
  Vertex start = 0;
  WalkPoint first;
  WalkPoint second;
  /// The negative edge joining the two endpoints.
  Vertex u = 0;
  Vertex v = 0;
};

struct RepetitionLog {
  Vertex start = 0;
  std::uint64_t f_evaluations = 0;
  std::uint64_t queries = 0;
  std::optional<std::uint64_t> modeled_quantum_queries;
  std::optional<double> success_probability;
};

enum class Decision : std::uint8_t { kAccept, kReject };

struct Verdict {
  Decision decision = Decision::kAccept;
  std::optional<Witness> witness;
  std::uint64_t queries_used = 0;
  std::uint64_t modeled_quantum_queries = 0;
  std::vector<RepetitionLog> log;

  bool rejected() const noexcept { return decision == Decision::kReject; }
};

/// Algorithm loop: per repetition r, draw s from split_seed(split_seed(seed, r),
/// kStartVertex), coins from the kCoins stream, and search X for two
/// endpoints joined by a negative edge. Rejects on the first collision.
Verdict run_tester(QuerySession& session, const TesterParams& params,
                   const BackendConfig& backend, std::uint64_t seed);

}  // namespace clustest
