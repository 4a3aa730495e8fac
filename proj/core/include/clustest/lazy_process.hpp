#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "clustest/families.hpp"
#include "clustest/random.hpp"
#include "clustest/signed_graph.hpp"

namespace clustest {

struct HistoryEntry {
  Vertex v = 0;
  std::uint32_t port = 1;  // 1-based
  Vertex u = 0;
  Sign sign = Sign::kPositive;
  /// The answer was already in the history before this query (case 2a or a
  /// 2b answer drawn from the open-port sets).
  bool collision = false;
};

/// One possible 2b answer: an existing history vertex, or a fresh one.
struct AnswerOption {
  std::optional<Vertex> existing;
  double probability = 0.0;
};

/// The adaptive oracle P_alpha: answers neighbor queries while lazily
/// building a uniformly random member of the family. Only vertices that
/// appear in the history carry state, so a process is cheap to create even
/// for large N.
class LazyProcess final : public NeighborOracle {
 public:
  /// Throws Error{kBadN} unless N is a multiple of 10 and at least 30.
  LazyProcess(Family family, std::size_t n, std::uint64_t seed);

  std::size_t vertex_count() const override { return n_; }
  std::uint32_t degree_bound() const override { return kFamilyDegree; }
  /// Throws Error{kIdOutOfRange}, Error{kExhaustedLabelClass}.
  Answer answer(Vertex v, std::uint32_t port0) override;

  Family family() const noexcept { return family_; }
  const std::vector<HistoryEntry>& history() const noexcept { return history_; }
  std::optional<Label> label(Vertex v) const;
  /// Number of history vertices with label p.
  std::size_t label_count(Label p) const noexcept { return counts_[p]; }
  std::size_t labeled_count() const noexcept { return order_.size(); }
  /// History vertices in first-appearance order.
  const std::vector<Vertex>& labeled_vertices() const noexcept { return order_; }
  /// X_{p,i}: history vertices with label p whose port i (1-based) is empty.
  std::vector<Vertex> open_ports(Label p, std::uint32_t port) const;
  std::optional<PortEntry> known_port(Vertex v, std::uint32_t port0) const;

  // Branch interface, used by answer() and by exact enumeration.

  /// Case (1) label probabilities for a vertex outside the history.
  std::array<double, kLabelCount> label_distribution() const noexcept;
  void assign_label(Vertex v, Label p);
  /// Case 2b options for a labeled vertex with an empty port: feasible open
  /// candidates (uniform within the open share) followed by the fresh
  /// option, zero-probability entries omitted.
  std::vector<AnswerOption> answer_options(Vertex v, std::uint32_t port0) const;
  /// Records the edge for a chosen option. A fresh option takes `fresh` if
  /// given, else the smallest unlabeled id.
  Answer commit(Vertex v, std::uint32_t port0, const AnswerOption& option,
                std::optional<Vertex> fresh = std::nullopt);

  /// Second stage: extends the history to a uniformly random family member
  /// consistent with it. Throws Error{kInfeasibleHistory} if rejection
  /// sampling of a layer fails `max_attempts` times.
  FamilyInstance complete_graph(Rng& rng, std::uint64_t max_attempts = 1'000'000) const;

 private:
  struct State {
    Label label = 0;
    std::array<std::optional<PortEntry>, kFamilyDegree> ports;
  };

  State& state(Vertex v) { return states_.at(v); }
  const State* find(Vertex v) const;
  Vertex sample_unlabeled();
  Vertex smallest_unlabeled() const;
  /// Walks layer edges from v against (backward=true) or along the tail
  /// direction; returns the path end and vertex count, or nullopt if v
  /// lies on a closed cycle.
  std::optional<std::pair<Vertex, std::size_t>> path_end(Vertex v, std::size_t layer,
                                                         bool backward) const;
  bool closing_allowed(Vertex v, std::size_t layer, std::size_t cycle_vertices) const;

  Family family_;
  std::size_t n_;
  Rng rng_;
  std::unordered_map<Vertex, State> states_;
  std::vector<Vertex> order_;
  std::array<std::size_t, kLabelCount> counts_{};
  std::vector<HistoryEntry> history_;
};

}  // namespace clustest
