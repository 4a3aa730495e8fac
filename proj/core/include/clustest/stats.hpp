#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clustest/random.hpp"

namespace clustest {

/// Plug-in total variation distance between two empirical distributions
/// given as count tables over the same key space.
double total_variation(const std::map<std::string, std::uint64_t>& a, std::uint64_t a_total,
                       const std::map<std::string, std::uint64_t>& b, std::uint64_t b_total);

struct BootstrapSummary {
  double mean = 0.0;
  double sigma = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

/// Resamples both count vectors (multinomially, same totals) and recomputes
/// the plug-in TV `resamples` times.
BootstrapSummary bootstrap_total_variation(std::span<const std::uint64_t> a,
                                           std::span<const std::uint64_t> b,
                                           std::uint32_t resamples, Rng& rng);

/// Walker alias table for O(1) sampling from a discrete distribution.
class AliasTable {
 public:
  explicit AliasTable(std::span<const double> weights);
  std::size_t sample(Rng& rng) const noexcept;
  std::size_t size() const noexcept { return prob_.size(); }

 private:
  std::vector<double> prob_;
  std::vector<std::size_t> alias_;
};

struct ChiSquareResult {
  double statistic = 0.0;
  std::uint32_t degrees_of_freedom = 0;
  double p_value = 1.0;
};

/// Two-sample chi-square homogeneity test on count tables. Cells whose
/// expected count is below `min_expected` in either sample are pooled into
/// one cell (dropped if the pool itself stays below the threshold).
ChiSquareResult chi_square_two_sample(const std::map<std::string, std::uint64_t>& a,
                                      const std::map<std::string, std::uint64_t>& b,
                                      double min_expected = 5.0);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// 95% confidence interval for the slope (t distribution, n - 2 dof);
  /// unset when there are fewer than 3 points.
  std::optional<double> ci_low;
  std::optional<double> ci_high;
};

/// Least squares fit of y on x; nullopt with fewer than 2 distinct x values.
std::optional<LinearFit> fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace clustest
