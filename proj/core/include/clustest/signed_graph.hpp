#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace clustest {

using Vertex = std::uint32_t;

enum class Sign : std::uint8_t { kPositive, kNegative };

constexpr char to_char(Sign s) noexcept { return s == Sign::kPositive ? '+' : '-'; }
constexpr Sign flip(Sign s) noexcept {
  return s == Sign::kPositive ? Sign::kNegative : Sign::kPositive;
}

/// One occupied port. back_port is the 0-based port index at `to` that
/// mirrors this entry.
struct PortEntry {
  Vertex to = 0;
  Sign sign = Sign::kPositive;
  std::uint32_t back_port = 0;

  bool operator==(const PortEntry&) const = default;
};

/// Input edge for build_graph. Ports are 0-based.
struct EdgeSpec {
  Vertex u = 0;
  Vertex v = 0;
  Sign sign = Sign::kPositive;
  std::uint32_t port_u = 0;
  std::uint32_t port_v = 0;

  bool operator==(const EdgeSpec&) const = default;
};

/// Immutable bounded-degree signed graph with per-vertex port tables.
///
/// Invariants (established by build and never broken afterwards):
///  - ports[v][i] = {u, s, j} implies ports[u][j] = {v, s, i};
///  - no self-loops, no two port pairs joining the same unordered pair.
class SignedGraph {
 public:
  SignedGraph() = default;

  /// Validates and materializes a graph. Throws Error with kIdOutOfRange,
  /// kSelfLoop, kPortConflict or kDuplicateEdge naming the offending edge.
  static SignedGraph build(std::size_t n, std::uint32_t d, std::span<const EdgeSpec> edges);

  std::size_t vertex_count() const noexcept { return n_; }
  std::uint32_t degree_bound() const noexcept { return d_; }

  /// 0-based port access; no bounds checking beyond debug asserts.
  const std::optional<PortEntry>& port(Vertex v, std::uint32_t port0) const noexcept {
    return ports_[static_cast<std::size_t>(v) * d_ + port0];
  }
  std::span<const std::optional<PortEntry>> ports(Vertex v) const noexcept {
    return {ports_.data() + static_cast<std::size_t>(v) * d_, d_};
  }

  /// Every edge once, oriented from its lower-id endpoint, ordered by
  /// (u, port_u). The order is stable and used wherever edges are indexed.
  std::vector<EdgeSpec> edges() const;
  std::size_t edge_count() const noexcept { return edge_count_; }

  /// Number of occupied ports at v.
  std::uint32_t degree(Vertex v) const noexcept;

  bool operator==(const SignedGraph&) const = default;

 private:
  std::size_t n_ = 0;
  std::uint32_t d_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::optional<PortEntry>> ports_;
};

inline SignedGraph build_graph(std::size_t n, std::uint32_t d, std::span<const EdgeSpec> edges) {
  return SignedGraph::build(n, d, edges);
}

struct Neighbor {
  Vertex to = 0;
  Sign sign = Sign::kPositive;

  bool operator==(const Neighbor&) const = default;
};

/// Oracle answer: a neighbor, or the error symbol for an empty port.
class Answer {
 public:
  static Answer error_symbol() noexcept { return Answer{}; }
  static Answer neighbor(Vertex to, Sign sign) noexcept { return Answer{Neighbor{to, sign}}; }

  bool is_error() const noexcept { return !value_.has_value(); }
  const Neighbor& get() const { return value_.value(); }

  bool operator==(const Answer&) const = default;

 private:
  Answer() = default;
  explicit Answer(Neighbor n) : value_(n) {}
  std::optional<Neighbor> value_;
};

/// Anything that can answer bounded-degree neighbor queries: a stored graph
/// or a lazy process that builds one on demand. Ports are 0-based here.
class NeighborOracle {
 public:
  virtual ~NeighborOracle() = default;
  virtual std::size_t vertex_count() const = 0;
  virtual std::uint32_t degree_bound() const = 0;
  virtual Answer answer(Vertex v, std::uint32_t port0) = 0;
};

class GraphOracle final : public NeighborOracle {
 public:
  explicit GraphOracle(const SignedGraph& g) noexcept : graph_(&g) {}
  std::size_t vertex_count() const override { return graph_->vertex_count(); }
  std::uint32_t degree_bound() const override { return graph_->degree_bound(); }
  Answer answer(Vertex v, std::uint32_t port0) override;

 private:
  const SignedGraph* graph_;
};

/// Counting view over an oracle. Ports are 1-based at this surface
/// (port i maps to internal index i - 1). Every answered call, including
/// error symbols, costs one query.
class QuerySession {
 public:
  explicit QuerySession(NeighborOracle& oracle) noexcept : oracle_(&oracle) {}
  explicit QuerySession(const SignedGraph& g)
      : owned_(std::make_unique<GraphOracle>(g)), oracle_(owned_.get()) {}

  QuerySession(QuerySession&&) noexcept = default;
  QuerySession& operator=(QuerySession&&) noexcept = default;

  /// Throws Error{kIdOutOfRange} for v >= N or port outside [1, d]; such
  /// calls are not counted.
  Answer neighbor_query(Vertex v, std::uint32_t port);

  std::uint64_t queries_used() const noexcept { return queries_used_; }
  std::size_t vertex_count() const { return oracle_->vertex_count(); }
  std::uint32_t degree_bound() const { return oracle_->degree_bound(); }

 private:
  std::unique_ptr<GraphOracle> owned_;
  NeighborOracle* oracle_;
  std::uint64_t queries_used_ = 0;
};

/// JSON graph file format:
///   {"n": N, "d": d, "adjacency": [[entry|null, ...d], ...N]}
///   entry = {"to": u, "sign": "+"|"-", "back": j}   (j is 1-based)
std::string serialize_graph(const SignedGraph& g);

/// Throws Error{kFormatError} with a line/field locus for malformed text and
/// the build_graph error codes for invariant violations (an entry whose
/// mirror disagrees is a kPortConflict).
SignedGraph parse_graph(std::string_view text);

}  // namespace clustest
