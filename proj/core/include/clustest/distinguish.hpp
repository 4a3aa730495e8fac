#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "clustest/families.hpp"
#include "clustest/lazy_process.hpp"
#include "clustest/signed_graph.hpp"
#include "clustest/stats.hpp"

namespace clustest {

struct TranscriptStep {
  Vertex v = 0;
  std::uint32_t port = 1;  // 1-based
  Answer answer = Answer::error_symbol();
  /// The answer vertex appeared earlier in the transcript.
  bool collision = false;
};

/// What a query strategy sees: its own queries and the answers.
class Transcript {
 public:
  explicit Transcript(Vertex start = 0) : start_(start) {}

  Vertex start() const noexcept { return start_; }
  const std::vector<TranscriptStep>& steps() const noexcept { return steps_; }
  /// Appends a step, computing the collision flag.
  const TranscriptStep& record(Vertex v, std::uint32_t port, Answer answer);

  /// Vertices in first-appearance order (start first).
  std::vector<Vertex> appearance_order() const;
  /// Ports of v that were queried, or through which v was reached
  /// (port i at u is mirrored by its family mate at the answer).
  bool port_known(Vertex v, std::uint32_t port) const;
  /// Vertices renamed by first appearance: "0.1>1+;1.3>2+;..."
  std::string canonical() const;
  bool any_collision() const noexcept;

 private:
  Vertex start_;
  std::vector<TranscriptStep> steps_;
};

/// Family port mate: 1<->2, 3<->4, 5<->6.
constexpr std::uint32_t mate_port(std::uint32_t port) noexcept {
  return port % 2 == 1 ? port + 1 : port - 1;
}

struct Query {
  Vertex v = 0;
  std::uint32_t port = 1;  // 1-based
};

/// A deterministic adaptive query strategy: the next query is a function of
/// the transcript only (any randomness is a fixed seed hashed with the
/// canonical transcript). Such a strategy is one fixed algorithm, so the
/// distribution of its transcripts is a property of the oracle alone.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string_view name() const = 0;
  virtual Query next(const Transcript& t) const = 0;
};

enum class StrategyKind : std::uint8_t { kRandomPortWalker, kBreadthFirst, kPort1Chaser };

std::string_view to_string(StrategyKind kind) noexcept;
/// Throws Error{kConfigError} for an unknown name.
StrategyKind parse_strategy(std::string_view name);
std::unique_ptr<Strategy> make_strategy(StrategyKind kind, std::uint64_t seed);

/// Fixed plan: query k is (vertex, port) where vertex is the start (index 0)
/// or the answer of an earlier step (index j >= 1). Known ports are queried
/// anyway.
class FixedPlanStrategy final : public Strategy {
 public:
  struct Item {
    std::size_t answer_index;
    std::uint32_t port;
  };
  explicit FixedPlanStrategy(std::vector<Item> plan) : plan_(std::move(plan)) {}
  std::string_view name() const override { return "fixed-plan"; }
  Query next(const Transcript& t) const override;
  std::size_t size() const noexcept { return plan_.size(); }

 private:
  std::vector<Item> plan_;
};

/// Runs `steps` queries of the strategy against the oracle from vertex 0.
Transcript run_strategy(NeighborOracle& oracle, const Strategy& strategy, std::size_t steps);

struct DistinguishConfig {
  std::size_t n = 2500;
  double delta = 0.1;
  std::uint64_t trials = 1000;
  StrategyKind strategy = StrategyKind::kRandomPortWalker;
  std::uint64_t seed = 0;
  std::uint32_t blocks = 1;
  std::uint32_t resamples = 1000;

  /// floor(delta * sqrt(N)).
  std::uint64_t query_count() const noexcept;
};

/// Throws Error{kConfigError} unless 0 < delta < 1/2, trials >= 1, blocks >= 1,
/// T >= 1 and N >= 40T; Error{kBadN} for sizes the families do not support.
void check_distinguish_config(const DistinguishConfig& cfg);

struct StepRate {
  std::uint32_t step = 1;
  double rate_p1 = 0.0;
  double rate_p2 = 0.0;
  double sigma_p1 = 0.0;
  double sigma_p2 = 0.0;
  double bound = 0.0;  // 20 (t - 1) / N
};

struct DistinguishBlock {
  std::uint32_t block = 0;
  double tv_estimate = 0.0;
  BootstrapSummary bootstrap;
  std::vector<StepRate> steps;
  /// |Pr_P1[transcript has a collision] - Pr_P2[...]|: the advantage of the
  /// cycle-spotting distinguisher.
  double acceptance_gap = 0.0;
  std::size_t distinct_histories = 0;
};

struct DistinguishReport {
  std::uint64_t queries = 0;  // T
  double bound = 0.0;         // 10 delta^2
  std::vector<DistinguishBlock> blocks;
};

DistinguishReport distinguish_experiment(const DistinguishConfig& cfg);

/// Exact distribution of canonical transcripts of a strategy against P_alpha,
/// by enumerating every branch of the process randomness.
struct ExactTranscripts {
  std::map<std::string, double> probability;
  /// collision_probability[t - 1] = Pr[step t answers an earlier vertex].
  std::vector<double> collision_probability;
};
ExactTranscripts exact_transcripts(Family family, std::size_t n, const Strategy& strategy,
                                   std::size_t steps);

/// Canonical transcript plus, for each port of the start vertex in the
/// (completed) graph, the canonical id of the neighbor or '*' if it lies
/// outside the transcript.
std::string interaction_statistic(const Transcript& t, const SignedGraph& completed);

/// Per seed block: chi-square comparison of interaction statistics from the
/// lazy process (plus completion) against direct generation plus replay.
std::vector<ChiSquareResult> uniformity_experiment(Family family, std::size_t n,
                                                   const Strategy& strategy, std::size_t steps,
                                                   std::uint64_t samples_per_block,
                                                   std::uint32_t blocks, std::uint64_t seed);

}  // namespace clustest
