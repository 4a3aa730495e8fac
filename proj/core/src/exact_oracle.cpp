#include "clustest/exact_oracle.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "clustest/error.hpp"

namespace clustest {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> rank_;
};

// Saturating binomial coefficient.
std::uint64_t choose(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  __uint128_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

std::optional<ClusterWitness> is_clusterable(const SignedGraph& g) {
  const std::size_t n = g.vertex_count();
  DisjointSets sets(n);
  const auto edges = g.edges();
  for (const auto& e : edges) {
    if (e.sign == Sign::kPositive) sets.unite(e.u, e.v);
  }
  for (const auto& e : edges) {
    if (e.sign == Sign::kNegative && sets.find(e.u) == sets.find(e.v)) return std::nullopt;
  }
  ClusterWitness w;
  w.component.assign(n, 0);
  std::vector<std::uint32_t> id_of_root(n, UINT32_MAX);
  for (std::size_t v = 0; v < n; ++v) {
    auto& id = id_of_root[sets.find(v)];
    if (id == UINT32_MAX) id = w.component_count++;
    w.component[v] = id;
  }
  return w;
}

std::optional<BadCycle> find_bad_cycle(const SignedGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<Vertex> parent(n);
  std::vector<std::uint32_t> seen(n, 0);
  std::uint32_t epoch = 0;
  std::vector<Vertex> queue;
  queue.reserve(n);

  for (const auto& e : g.edges()) {
    if (e.sign != Sign::kNegative) continue;
    ++epoch;
    queue.clear();
    queue.push_back(e.u);
    seen[e.u] = epoch;
    bool found = false;
    for (std::size_t head = 0; head < queue.size() && !found; ++head) {
      const Vertex x = queue[head];
      for (const auto& slot : g.ports(x)) {
        if (!slot || slot->sign != Sign::kPositive || seen[slot->to] == epoch) continue;
        seen[slot->to] = epoch;
        parent[slot->to] = x;
        if (slot->to == e.v) {
          found = true;
          break;
        }
        queue.push_back(slot->to);
      }
    }
    if (!found) continue;

    std::vector<Vertex> path;
    for (Vertex x = e.v; x != e.u; x = parent[x]) path.push_back(x);
    path.push_back(e.u);
    std::reverse(path.begin(), path.end());  // u ... v
    BadCycle c;
    c.negative_position = path.size() - 1;
    c.vertices = std::move(path);
    c.vertices.push_back(e.u);
    return c;
  }
  return std::nullopt;
}

bool is_valid_witness(const SignedGraph& g, const ClusterWitness& w) {
  if (w.component.size() != g.vertex_count()) return false;
  for (const auto& e : g.edges()) {
    const bool same = w.component[e.u] == w.component[e.v];
    if (same != (e.sign == Sign::kPositive)) return false;
  }
  return true;
}

bool is_valid_bad_cycle(const SignedGraph& g, const BadCycle& c) {
  const auto& vs = c.vertices;
  if (vs.size() < 4 || vs.front() != vs.back()) return false;  // at least a triangle
  if (c.negative_position + 1 >= vs.size()) return false;
  // Only first and last coincide.
  std::vector<Vertex> inner(vs.begin(), vs.end() - 1);
  std::sort(inner.begin(), inner.end());
  if (std::adjacent_find(inner.begin(), inner.end()) != inner.end()) return false;
  for (std::size_t k = 0; k + 1 < vs.size(); ++k) {
    std::optional<Sign> sign;
    if (vs[k] >= g.vertex_count()) return false;
    for (const auto& slot : g.ports(vs[k])) {
      if (slot && slot->to == vs[k + 1]) sign = slot->sign;
    }
    if (!sign) return false;
    const Sign expected = k == c.negative_position ? Sign::kNegative : Sign::kPositive;
    if (*sign != expected) return false;
  }
  return true;
}

bool is_clusterable_without(const SignedGraph& g, std::span<const EdgeSpec> edges,
                            std::span<const std::size_t> removed) {
  DisjointSets sets(g.vertex_count());
  auto is_removed = [&](std::size_t idx) {
    return std::find(removed.begin(), removed.end(), idx) != removed.end();
  };
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (edges[k].sign == Sign::kPositive && !is_removed(k)) sets.unite(edges[k].u, edges[k].v);
  }
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (edges[k].sign == Sign::kNegative && !is_removed(k) &&
        sets.find(edges[k].u) == sets.find(edges[k].v)) {
      return false;
    }
  }
  return true;
}

DistanceResult distance_to_clusterable(const SignedGraph& g, std::size_t k_max,
                                       std::uint64_t work_budget) {
  const auto edges = g.edges();
  const std::size_t m = edges.size();
  const std::uint64_t work = choose(m, std::min(k_max, m), work_budget);
  if (work > work_budget) {
    std::ostringstream out;
    out << "C(" << m << ", " << k_max << ") exceeds work budget " << work_budget;
    throw Error(ErrorCode::kWorkBudgetExceeded, out.str());
  }

  std::vector<std::size_t> subset;
  for (std::size_t size = 0; size <= std::min(k_max, m); ++size) {
    subset.resize(size);
    std::iota(subset.begin(), subset.end(), std::size_t{0});
    while (true) {
      if (is_clusterable_without(g, edges, subset)) {
        return {DistanceResult::Kind::kExact, size};
      }
      // Next combination in lexicographic order.
      std::size_t pos = size;
      while (pos > 0 && subset[pos - 1] == m - size + pos - 1) --pos;
      if (pos == 0) break;
      ++subset[pos - 1];
      for (std::size_t j = pos; j < size; ++j) subset[j] = subset[j - 1] + 1;
    }
  }
  return {DistanceResult::Kind::kExceedsBudget, k_max};
}

}  // namespace clustest
