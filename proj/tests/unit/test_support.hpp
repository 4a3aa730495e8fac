#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "clustest/random.hpp"
#include "clustest/signed_graph.hpp"

namespace clustest::testing {

/// Random simple signed graph with degree bound d: each candidate pair is
/// tried in random order and kept when both endpoints have a free port.
inline SignedGraph random_signed_graph(std::size_t n, std::uint32_t d, double edge_prob,
                                       double negative_prob, Rng& rng) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  rng.shuffle(std::span(pairs));
  std::vector<std::vector<std::uint32_t>> free_ports(n);
  for (auto& f : free_ports) {
    for (std::uint32_t p = 0; p < d; ++p) f.push_back(p);
    rng.shuffle(std::span(f));
  }
  std::vector<EdgeSpec> edges;
  for (auto [u, v] : pairs) {
    if (!rng.bernoulli(edge_prob) || free_ports[u].empty() || free_ports[v].empty()) continue;
    const Sign s = rng.bernoulli(negative_prob) ? Sign::kNegative : Sign::kPositive;
    edges.push_back({u, v, s, free_ports[u].back(), free_ports[v].back()});
    free_ports[u].pop_back();
    free_ports[v].pop_back();
  }
  return build_graph(n, d, edges);
}

/// Calls visit(block) for every set partition of [n] (restricted growth strings).
inline void for_each_partition(std::size_t n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> block(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
    if (i == n) {
      visit(block);
      return;
    }
    for (int b = 0; b <= used; ++b) {
      block[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  if (n == 0) {
    visit(block);
    return;
  }
  block[0] = 0;
  rec(1, 1);
}

/// Edges violating a partition: positive across blocks or negative inside.
inline std::size_t violations(const SignedGraph& g, const std::vector<int>& block) {
  std::size_t bad = 0;
  for (const auto& e : g.edges()) {
    const bool same = block[e.u] == block[e.v];
    if (same != (e.sign == Sign::kPositive)) ++bad;
  }
  return bad;
}

/// Minimum deletions to clusterability by enumerating every partition.
inline std::size_t brute_force_distance(const SignedGraph& g) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for_each_partition(g.vertex_count(), [&](const std::vector<int>& b) {
    best = std::min(best, violations(g, b));
  });
  return best;
}

/// Triangle 0-1-2 with the given signs on (0,1), (1,2), (0,2), degree 2.
inline SignedGraph triangle(Sign s01, Sign s12, Sign s02) {
  const std::vector<EdgeSpec> edges = {{0, 1, s01, 0, 0}, {1, 2, s12, 1, 0}, {0, 2, s02, 1, 1}};
  return build_graph(3, 2, edges);
}

}  // namespace clustest::testing
