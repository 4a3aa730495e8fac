#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "clustest/error.hpp"
#include "clustest/random.hpp"

namespace clustest {

/// Two distinct domain points whose images are related.
struct CollisionPair {
  std::uint64_t first = 0;
  std::uint64_t second = 0;

  bool operator==(const CollisionPair&) const = default;
};

struct CollisionReport {
  std::optional<CollisionPair> found;
  std::uint64_t f_evaluations = 0;
  std::optional<std::uint64_t> modeled_quantum_queries;
  std::optional<double> success_probability;
};

/// f: [0, domain_size) -> Y and a symmetric relation on Y. f must be pure;
/// the backends may call it in any order.
template <class Y>
struct CollisionProblem {
  std::uint64_t domain_size = 0;
  std::function<Y(std::uint64_t)> f;
  std::function<bool(const Y&, const Y&)> related;
};

namespace detail {

inline void check_budget(std::uint64_t domain_size, std::uint64_t work_budget) {
  if (domain_size > work_budget) {
    std::ostringstream out;
    out << "|X| = " << domain_size << " exceeds work budget " << work_budget;
    throw Error(ErrorCode::kWorkBudgetExceeded, out.str());
  }
}

}  // namespace detail

/// Evaluates f on every point once, then scans all pairs of distinct images
/// (plus repeated images when an image is related to itself). Complete and
/// exact. The first pair in evaluation order is reported.
template <class Y, class Hash = std::hash<Y>>
CollisionReport exhaustive_collide(const CollisionProblem<Y>& problem, std::uint64_t work_budget) {
  detail::check_budget(problem.domain_size, work_budget);

  struct Group {
    Y value;
    std::uint64_t first;
    std::optional<std::uint64_t> second;
  };
  std::vector<Group> groups;
  std::unordered_map<Y, std::size_t, Hash> index;
  for (std::uint64_t x = 0; x < problem.domain_size; ++x) {
    Y y = problem.f(x);
    auto [it, inserted] = index.try_emplace(y, groups.size());
    if (inserted) {
      groups.push_back({std::move(y), x, std::nullopt});
    } else if (!groups[it->second].second) {
      groups[it->second].second = x;
    }
  }

  CollisionReport report;
  report.f_evaluations = problem.domain_size;
  for (std::size_t b = 0; b < groups.size(); ++b) {
    for (std::size_t a = 0; a < b; ++a) {
      if (problem.related(groups[a].value, groups[b].value)) {
        report.found = CollisionPair{groups[a].first, groups[b].first};
        return report;
      }
    }
    if (groups[b].second && problem.related(groups[b].value, groups[b].value)) {
      report.found = CollisionPair{groups[b].first, *groups[b].second};
      return report;
    }
  }
  return report;
}

/// ceil(c * |X|^(2/3) * (1 + log2 |Y|)).
std::uint64_t modeled_quantum_queries(std::uint64_t domain_size, std::uint64_t y_size, double c);

/// Exact outcome via exhaustive_collide plus the modeled quantum query count
/// of the collision-finding walk.
template <class Y, class Hash = std::hash<Y>>
CollisionReport quantum_cost_collide(const CollisionProblem<Y>& problem, std::uint64_t y_size,
                                     double c, std::uint64_t work_budget) {
  CollisionReport report = exhaustive_collide<Y, Hash>(problem, work_budget);
  report.modeled_quantum_queries = modeled_quantum_queries(problem.domain_size, y_size, c);
  return report;
}

inline constexpr std::uint32_t kMaxWalkDomain = 10;

struct WalkIterations {
  std::uint32_t outer = 1;  // t1: phase flips
  std::uint32_t inner = 1;  // t2: walk steps per phase flip
};

/// Dense statevector of the Johnson-graph walk over basis states (S, y):
/// S an r-subset of [n], y outside S. `marked[mask]` tells whether subset
/// mask contains a colliding pair.
class JohnsonWalkSimulator {
 public:
  JohnsonWalkSimulator(std::uint32_t n, std::uint32_t r, std::vector<bool> marked_subsets);

  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t r() const noexcept { return r_; }

  /// Marked mass of the uniform start state.
  double initial_marked_mass() const;

  /// Runs the algorithm and returns the final probability of measuring a
  /// marked subset.
  double success_probability(WalkIterations it) const;

  /// Per-subset measurement probabilities (indexed by subset mask) after
  /// running `it`.
  std::vector<double> subset_distribution(WalkIterations it) const;

  /// Default iteration counts: t1 = ceil(n / r), t2 = ceil(sqrt(r)).
  WalkIterations default_iterations() const noexcept;

  /// Best (t1, t2) in [1, max]^2 by success probability; ties go to the
  /// smallest t1 then t2.
  WalkIterations sweep(std::uint32_t max_outer = 8, std::uint32_t max_inner = 8) const;

 private:
  std::vector<double> run(WalkIterations it) const;
  void reflect_outside(std::vector<double>& amp) const;
  void reflect_inside(std::vector<double>& amp) const;

  std::uint32_t n_;
  std::uint32_t r_;
  std::vector<bool> marked_;
  std::vector<std::uint32_t> subsets_;   // r-subsets
  std::vector<std::uint32_t> supersets_; // (r+1)-subsets
  std::vector<std::int32_t> subset_index_;
};

struct QuantumWalkOptions {
  std::uint32_t subset_size = 0;  // r; 0 selects ceil(|X|^(2/3)) clamped to [1, |X|-1]
  std::uint32_t trials = 1;
  std::optional<WalkIterations> iterations;  // unset: default_iterations()
  bool sweep = false;                        // overrides `iterations`
  std::uint64_t seed = 0;
};

struct QuantumWalkReport {
  CollisionReport report;
  WalkIterations iterations;
  std::uint32_t subset_size = 0;
  double initial_marked_mass = 0.0;
  std::uint32_t successful_trials = 0;
};

std::uint32_t default_subset_size(std::uint32_t domain_size) noexcept;

namespace detail {

QuantumWalkReport simulate_walk(std::uint32_t n, std::vector<bool> marked,
                                const std::function<std::optional<CollisionPair>(std::uint32_t)>&
                                    extract_pair,
                                const QuantumWalkOptions& options);

}  // namespace detail

/// Toy-scale quantum-walk collision search (|X| <= 10). Marking is computed
/// from classical evaluations of f; the walk is simulated exactly. Each trial
/// measures once; a marked outcome yields a pair from the measured subset.
/// Throws Error{kTooLarge} when |X| > 10.
template <class Y>
QuantumWalkReport quantum_walk_simulate(const CollisionProblem<Y>& problem,
                                        const QuantumWalkOptions& options) {
  if (problem.domain_size > kMaxWalkDomain) {
    throw Error(ErrorCode::kTooLarge, "|X| = " + std::to_string(problem.domain_size) +
                                          " exceeds the statevector limit of " +
                                          std::to_string(kMaxWalkDomain));
  }
  const auto n = static_cast<std::uint32_t>(problem.domain_size);
  std::vector<Y> images;
  images.reserve(n);
  for (std::uint32_t x = 0; x < n; ++x) images.push_back(problem.f(x));

  // related_pairs[x] has bit x' set when (f(x), f(x')) in R, x != x'.
  std::vector<std::uint32_t> related_pairs(n, 0);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = a + 1; b < n; ++b) {
      if (problem.related(images[a], images[b])) {
        related_pairs[a] |= 1u << b;
        related_pairs[b] |= 1u << a;
      }
    }
  }
  auto extract = [&](std::uint32_t mask) -> std::optional<CollisionPair> {
    for (std::uint32_t a = 0; a < n; ++a) {
      if (!((mask >> a) & 1)) continue;
      const std::uint32_t partners = related_pairs[a] & mask & ~((2u << a) - 1);
      if (partners) {
        return CollisionPair{a, static_cast<std::uint32_t>(__builtin_ctz(partners))};
      }
    }
    return std::nullopt;
  };
  std::vector<bool> marked(std::size_t{1} << n, false);
  for (std::uint32_t mask = 0; mask < marked.size(); ++mask) marked[mask] = extract(mask).has_value();

  QuantumWalkReport out = detail::simulate_walk(n, std::move(marked), extract, options);
  out.report.f_evaluations = n;
  return out;
}

}  // namespace clustest
