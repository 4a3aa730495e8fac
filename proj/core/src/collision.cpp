#include "clustest/collision.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace clustest {

std::uint64_t modeled_quantum_queries(std::uint64_t domain_size, std::uint64_t y_size, double c) {
  const double cube_root = std::cbrt(static_cast<double>(domain_size));
  const double polylog = 1.0 + std::log2(static_cast<double>(std::max<std::uint64_t>(y_size, 1)));
  const double value = c * cube_root * cube_root * polylog;
  // Round away floating noise before taking the ceiling (8^(2/3) must be 4).
  return static_cast<std::uint64_t>(std::ceil(value * (1.0 - 1e-12)));
}

std::uint32_t default_subset_size(std::uint32_t domain_size) noexcept {
  if (domain_size < 2) return 1;
  const double cube_root = std::cbrt(static_cast<double>(domain_size));
  auto r = static_cast<std::uint32_t>(std::ceil(cube_root * cube_root * (1.0 - 1e-12)));
  return std::clamp<std::uint32_t>(r, 1, domain_size - 1);
}

JohnsonWalkSimulator::JohnsonWalkSimulator(std::uint32_t n, std::uint32_t r,
                                           std::vector<bool> marked_subsets)
    : n_(n), r_(r), marked_(std::move(marked_subsets)), subset_index_(std::size_t{1} << n, -1) {
  if (n > kMaxWalkDomain) {
    throw Error(ErrorCode::kTooLarge, "Johnson walk over " + std::to_string(n) + " points");
  }
  if (r < 1 || r >= n) {
    throw Error(ErrorCode::kConfigError,
                "subset size r=" + std::to_string(r) + " must lie in [1, " + std::to_string(n) + ")");
  }
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const auto pop = static_cast<std::uint32_t>(std::popcount(mask));
    if (pop == r) {
      subset_index_[mask] = static_cast<std::int32_t>(subsets_.size());
      subsets_.push_back(mask);
    } else if (pop == r + 1) {
      supersets_.push_back(mask);
    }
  }
}

WalkIterations JohnsonWalkSimulator::default_iterations() const noexcept {
  return {(n_ + r_ - 1) / r_, static_cast<std::uint32_t>(std::ceil(std::sqrt(double(r_))))};
}

// Reflection about the uniform superposition of y over the complement of S,
// independently for every S.
void JohnsonWalkSimulator::reflect_outside(std::vector<double>& amp) const {
  const double inv = 1.0 / static_cast<double>(n_ - r_);
  for (std::size_t s = 0; s < subsets_.size(); ++s) {
    const std::uint32_t mask = subsets_[s];
    double* row = amp.data() + s * n_;
    double sum = 0.0;
    for (std::uint32_t y = 0; y < n_; ++y) {
      if (!((mask >> y) & 1)) sum += row[y];
    }
    const double twice_mean = 2.0 * sum * inv;
    for (std::uint32_t y = 0; y < n_; ++y) {
      if (!((mask >> y) & 1)) row[y] = twice_mean - row[y];
    }
  }
}

// (S, y) <-> (T = S + y, y). Reflection about the uniform superposition of
// the removed element y over T, independently for every (r+1)-subset T.
void JohnsonWalkSimulator::reflect_inside(std::vector<double>& amp) const {
  const double inv = 1.0 / static_cast<double>(r_ + 1);
  for (const std::uint32_t t : supersets_) {
    double sum = 0.0;
    for (std::uint32_t y = 0; y < n_; ++y) {
      if ((t >> y) & 1) sum += amp[subset_index_[t & ~(1u << y)] * n_ + y];
    }
    const double twice_mean = 2.0 * sum * inv;
    for (std::uint32_t y = 0; y < n_; ++y) {
      if ((t >> y) & 1) {
        double& a = amp[subset_index_[t & ~(1u << y)] * n_ + y];
        a = twice_mean - a;
      }
    }
  }
}

std::vector<double> JohnsonWalkSimulator::run(WalkIterations it) const {
  std::vector<double> amp(subsets_.size() * n_, 0.0);
  const double a0 = 1.0 / std::sqrt(static_cast<double>(subsets_.size() * (n_ - r_)));
  for (std::size_t s = 0; s < subsets_.size(); ++s) {
    for (std::uint32_t y = 0; y < n_; ++y) {
      if (!((subsets_[s] >> y) & 1)) amp[s * n_ + y] = a0;
    }
  }
  for (std::uint32_t outer = 0; outer < it.outer; ++outer) {
    for (std::size_t s = 0; s < subsets_.size(); ++s) {
      if (!marked_[subsets_[s]]) continue;
      for (std::uint32_t y = 0; y < n_; ++y) amp[s * n_ + y] = -amp[s * n_ + y];
    }
    for (std::uint32_t step = 0; step < it.inner; ++step) {
      reflect_outside(amp);
      reflect_inside(amp);
    }
  }
  return amp;
}

std::vector<double> JohnsonWalkSimulator::subset_distribution(WalkIterations it) const {
  const auto amp = run(it);
  std::vector<double> dist(std::size_t{1} << n_, 0.0);
  for (std::size_t s = 0; s < subsets_.size(); ++s) {
    double p = 0.0;
    for (std::uint32_t y = 0; y < n_; ++y) p += amp[s * n_ + y] * amp[s * n_ + y];
    dist[subsets_[s]] = p;
  }
  return dist;
}

double JohnsonWalkSimulator::success_probability(WalkIterations it) const {
  const auto dist = subset_distribution(it);
  double p = 0.0;
  for (const std::uint32_t mask : subsets_) {
    if (marked_[mask]) p += dist[mask];
  }
  return p;
}

double JohnsonWalkSimulator::initial_marked_mass() const {
  std::size_t count = 0;
  for (const std::uint32_t mask : subsets_) count += marked_[mask] ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(subsets_.size());
}

WalkIterations JohnsonWalkSimulator::sweep(std::uint32_t max_outer, std::uint32_t max_inner) const {
  WalkIterations best{1, 1};
  double best_p = -1.0;
  for (std::uint32_t t1 = 1; t1 <= max_outer; ++t1) {
    for (std::uint32_t t2 = 1; t2 <= max_inner; ++t2) {
      const double p = success_probability({t1, t2});
      if (p > best_p + 1e-12) {
        best_p = p;
        best = {t1, t2};
      }
    }
  }
  return best;
}

namespace detail {

QuantumWalkReport simulate_walk(
    std::uint32_t n, std::vector<bool> marked,
    const std::function<std::optional<CollisionPair>(std::uint32_t)>& extract_pair,
    const QuantumWalkOptions& options) {
  QuantumWalkReport out;
  if (n < 2) {
    out.report.success_probability = 0.0;
    return out;
  }
  const std::uint32_t r = options.subset_size ? options.subset_size : default_subset_size(n);
  JohnsonWalkSimulator sim(n, r, std::move(marked));
  out.subset_size = r;
  out.initial_marked_mass = sim.initial_marked_mass();
  out.iterations = options.sweep ? sim.sweep()
                                 : options.iterations.value_or(sim.default_iterations());

  const auto dist = sim.subset_distribution(out.iterations);
  double success = 0.0;
  for (std::uint32_t mask = 0; mask < dist.size(); ++mask) {
    if (extract_pair(mask) && dist[mask] > 0.0) success += dist[mask];
  }
  // No marked state: the walk can never report a collision.
  if (out.initial_marked_mass == 0.0) success = 0.0;
  out.report.success_probability = std::clamp(success, 0.0, 1.0);

  Rng rng(options.seed);
  for (std::uint32_t trial = 0; trial < options.trials; ++trial) {
    double u = rng.uniform();
    std::uint32_t measured = 0;
    for (std::uint32_t mask = 0; mask < dist.size(); ++mask) {
      if (dist[mask] <= 0.0) continue;
      measured = mask;
      if (u < dist[mask]) break;
      u -= dist[mask];
    }
    if (out.initial_marked_mass == 0.0) continue;
    if (auto pair = extract_pair(measured)) {
      ++out.successful_trials;
      if (!out.report.found) out.report.found = pair;
    }
  }
  return out;
}

}  // namespace detail
}  // namespace clustest
