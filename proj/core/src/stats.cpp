#include "clustest/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "clustest/error.hpp"

namespace clustest {

double total_variation(const std::map<std::string, std::uint64_t>& a, std::uint64_t a_total,
                       const std::map<std::string, std::uint64_t>& b, std::uint64_t b_total) {
  if (a_total == 0 || b_total == 0) throw Error(ErrorCode::kConfigError, "empty sample");
  const double na = static_cast<double>(a_total);
  const double nb = static_cast<double>(b_total);
  double sum = 0.0;
  for (const auto& [key, count] : a) {
    auto it = b.find(key);
    const double pb = it == b.end() ? 0.0 : static_cast<double>(it->second) / nb;
    sum += std::abs(static_cast<double>(count) / na - pb);
  }
  for (const auto& [key, count] : b) {
    if (!a.contains(key)) sum += static_cast<double>(count) / nb;
  }
  return sum / 2.0;
}

AliasTable::AliasTable(std::span<const double> weights) : prob_(weights.size()), alias_(weights.size()) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (weights.empty() || !(total > 0.0)) throw Error(ErrorCode::kConfigError, "alias table weights");
  const double n = static_cast<double>(weights.size());
  std::vector<double> scaled(weights.size());
  std::vector<std::size_t> small, large;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    scaled[i] = weights[i] * n / total;
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    const std::size_t s = small.back();
    small.pop_back();
    const std::size_t l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (std::size_t i : large) prob_[i] = 1.0, alias_[i] = i;
  for (std::size_t i : small) prob_[i] = 1.0, alias_[i] = i;
}

std::size_t AliasTable::sample(Rng& rng) const noexcept {
  const std::size_t i = rng.below(prob_.size());
  return rng.uniform() < prob_[i] ? i : alias_[i];
}

BootstrapSummary bootstrap_total_variation(std::span<const std::uint64_t> a,
                                           std::span<const std::uint64_t> b,
                                           std::uint32_t resamples, Rng& rng) {
  if (a.size() != b.size() || a.empty()) throw Error(ErrorCode::kConfigError, "bootstrap tables");
  const std::uint64_t na = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
  const std::uint64_t nb = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
  if (na == 0 || nb == 0 || resamples == 0) throw Error(ErrorCode::kConfigError, "empty bootstrap");
  const std::vector<double> wa(a.begin(), a.end());
  const std::vector<double> wb(b.begin(), b.end());
  const AliasTable ta(wa), tb(wb);
  std::vector<double> tvs;
  tvs.reserve(resamples);
  std::vector<std::int64_t> diff(a.size());
  for (std::uint32_t r = 0; r < resamples; ++r) {
    // Counts scaled to a common denominator na * nb keep the sum exact.
    std::fill(diff.begin(), diff.end(), 0);
    for (std::uint64_t i = 0; i < na; ++i) diff[ta.sample(rng)] += static_cast<std::int64_t>(nb);
    for (std::uint64_t i = 0; i < nb; ++i) diff[tb.sample(rng)] -= static_cast<std::int64_t>(na);
    double sum = 0.0;
    for (std::int64_t d : diff) sum += static_cast<double>(d < 0 ? -d : d);
    tvs.push_back(sum / (2.0 * static_cast<double>(na) * static_cast<double>(nb)));
  }
  BootstrapSummary out;
  out.mean = std::accumulate(tvs.begin(), tvs.end(), 0.0) / static_cast<double>(resamples);
  double var = 0.0;
  for (double t : tvs) var += (t - out.mean) * (t - out.mean);
  out.sigma = resamples > 1 ? std::sqrt(var / static_cast<double>(resamples - 1)) : 0.0;
  std::sort(tvs.begin(), tvs.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(resamples - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min<std::size_t>(lo + 1, resamples - 1);
    return tvs[lo] + (pos - static_cast<double>(lo)) * (tvs[hi] - tvs[lo]);
  };
  out.ci_low = quantile(0.025);
  out.ci_high = quantile(0.975);
  return out;
}

ChiSquareResult chi_square_two_sample(const std::map<std::string, std::uint64_t>& a,
                                      const std::map<std::string, std::uint64_t>& b,
                                      double min_expected) {
  std::map<std::string, std::pair<double, double>> cells;
  double na = 0.0, nb = 0.0;
  for (const auto& [k, c] : a) cells[k].first += static_cast<double>(c), na += static_cast<double>(c);
  for (const auto& [k, c] : b) cells[k].second += static_cast<double>(c), nb += static_cast<double>(c);
  if (na == 0.0 || nb == 0.0) throw Error(ErrorCode::kConfigError, "empty chi-square sample");
  const double total = na + nb;

  std::vector<std::pair<double, double>> kept;
  std::pair<double, double> pool{0.0, 0.0};
  for (const auto& [k, c] : cells) {
    const double row = c.first + c.second;
    if (row * std::min(na, nb) / total < min_expected) {
      pool.first += c.first;
      pool.second += c.second;
    } else {
      kept.push_back(c);
    }
  }
  if ((pool.first + pool.second) * std::min(na, nb) / total >= min_expected) kept.push_back(pool);

  ChiSquareResult out;
  if (kept.size() < 2) return out;
  for (const auto& [x, y] : kept) {
    const double row = x + y;
    const double ea = row * na / total;
    const double eb = row * nb / total;
    out.statistic += (x - ea) * (x - ea) / ea + (y - eb) * (y - eb) / eb;
  }
  out.degrees_of_freedom = static_cast<std::uint32_t>(kept.size() - 1);
  const boost::math::chi_squared dist(out.degrees_of_freedom);
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  return out;
}

std::optional<LinearFit> fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::kConfigError, "fit_line: size mismatch");
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) return std::nullopt;
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n >= 3) {
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      sse += r * r;
    }
    const double se = std::sqrt(sse / static_cast<double>(n - 2) / sxx);
    const boost::math::students_t t(static_cast<double>(n - 2));
    const double q = boost::math::quantile(boost::math::complement(t, 0.025));
    fit.ci_low = fit.slope - q * se;
    fit.ci_high = fit.slope + q * se;
  }
  return fit;
}

}  // namespace clustest
