#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "clustest/signed_graph.hpp"

namespace clustest {

/// A cycle with exactly one negative edge. vertices is closed
/// (front() == back()); the edge vertices[negative_position] ->
/// vertices[negative_position + 1] is the negative one.
struct BadCycle {
  std::vector<Vertex> vertices;
  std::size_t negative_position = 0;
};

/// Component id per vertex. Ids are dense and numbered by first vertex.
struct ClusterWitness {
  std::vector<std::uint32_t> component;
  std::uint32_t component_count = 0;
};

/// Components of the positive-edge subgraph; clusterable iff no negative
/// edge lies inside one component.
std::optional<ClusterWitness> is_clusterable(const SignedGraph& g);

/// For each negative edge (u, v), looks for a positive-only path u -> v.
std::optional<BadCycle> find_bad_cycle(const SignedGraph& g);

bool is_valid_witness(const SignedGraph& g, const ClusterWitness& w);
bool is_valid_bad_cycle(const SignedGraph& g, const BadCycle& c);

struct DistanceResult {
  enum class Kind { kExact, kExceedsBudget };
  Kind kind = Kind::kExact;
  /// Exact minimum number of deletions, or k_max when kind is kExceedsBudget
  /// (certifying the distance is strictly larger).
  std::size_t deletions = 0;

  bool exact() const noexcept { return kind == Kind::kExact; }
};

inline constexpr std::uint64_t kDefaultDistanceWorkBudget = 5'000'000;

/// Minimum number of edge deletions that make g clusterable, searched
/// exhaustively over deletion sets of size 0..k_max in lexicographic order
/// of g.edges() indices. Throws Error{kWorkBudgetExceeded} if
/// C(|E|, k_max) > work_budget.
DistanceResult distance_to_clusterable(const SignedGraph& g, std::size_t k_max,
                                       std::uint64_t work_budget = kDefaultDistanceWorkBudget);

/// Clusterability of g with the listed edges (indices into g.edges())
/// ignored.
bool is_clusterable_without(const SignedGraph& g, std::span<const EdgeSpec> edges,
                            std::span<const std::size_t> removed);

}  // namespace clustest
