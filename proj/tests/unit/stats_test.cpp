#include <gtest/gtest.h>

#include <cmath>

#include "clustest/stats.hpp"

namespace clustest {
namespace {

TEST(TotalVariation, HandComputed) {
  const std::map<std::string, std::uint64_t> a = {{"x", 3}, {"y", 1}};
  const std::map<std::string, std::uint64_t> b = {{"y", 2}, {"z", 2}};
  // P = (3/4, 1/4, 0), Q = (0, 1/2, 1/2): TV = (3/4 + 1/4 + 1/2) / 2.
  EXPECT_DOUBLE_EQ(total_variation(a, 4, b, 4), 0.75);
  EXPECT_DOUBLE_EQ(total_variation(a, 4, a, 4), 0.0);
}

TEST(Bootstrap, IdenticalTablesCenterNearPlugIn) {
  Rng rng(3);
  const std::vector<std::uint64_t> a = {500, 300, 200};
  const auto s = bootstrap_total_variation(a, a, 400, rng);
  EXPECT_GT(s.sigma, 0.0);
  EXPECT_LE(s.ci_low, s.mean);
  EXPECT_GE(s.ci_high, s.mean);
  // Two samples of 1000 from the same 3-point law: TV is of order 1/sqrt(n).
  EXPECT_LT(s.mean, 0.06);
}

TEST(AliasTable, MatchesWeights) {
  const std::vector<double> w = {1.0, 0.0, 3.0, 6.0};
  const AliasTable t(w);
  Rng rng(9);
  std::vector<int> hist(4, 0);
  constexpr int kDraws = 200000;
  for (int i = 0; i < kDraws; ++i) ++hist[t.sample(rng)];
  EXPECT_EQ(hist[1], 0);
  for (int i : {0, 2, 3}) {
    const double p = w[i] / 10.0;
    EXPECT_NEAR(hist[i], kDraws * p, 5 * std::sqrt(kDraws * p * (1 - p)));
  }
}

TEST(ChiSquare, KnownStatistic) {
  // 2x2 table {10, 20; 20, 10}: statistic 20/3 with one degree of freedom.
  const std::map<std::string, std::uint64_t> a = {{"x", 10}, {"y", 20}};
  const std::map<std::string, std::uint64_t> b = {{"x", 20}, {"y", 10}};
  const auto r = chi_square_two_sample(a, b);
  EXPECT_NEAR(r.statistic, 20.0 / 3.0, 1e-9);
  EXPECT_EQ(r.degrees_of_freedom, 1u);
  EXPECT_NEAR(r.p_value, std::erfc(std::sqrt(r.statistic / 2.0)), 1e-9);
}

TEST(ChiSquare, PoolsRareCells) {
  const std::map<std::string, std::uint64_t> a = {{"x", 100}, {"y", 100}, {"r1", 4}, {"r2", 3}};
  const std::map<std::string, std::uint64_t> b = {{"x", 100}, {"y", 100}, {"r2", 2}, {"r3", 5}};
  // r1, r2, r3 each fall below 5 expected and pool into one cell of 7 + 7.
  const auto r = chi_square_two_sample(a, b);
  EXPECT_EQ(r.degrees_of_freedom, 2u);
  EXPECT_NEAR(r.statistic, 0.0, 1e-12);

  // A pool that stays below the threshold is dropped.
  const std::map<std::string, std::uint64_t> c = {{"x", 100}, {"y", 100}, {"r1", 1}};
  const std::map<std::string, std::uint64_t> d = {{"x", 100}, {"y", 100}, {"r3", 2}};
  EXPECT_EQ(chi_square_two_sample(c, d).degrees_of_freedom, 1u);
}

TEST(FitLine, ExactLineAndIntervals) {
  const std::vector<double> x = {1, 2, 3, 4};
  const std::vector<double> y = {3, 5, 7, 9};
  const auto f = fit_line(x, y);
  ASSERT_TRUE(f);
  EXPECT_NEAR(f->slope, 2.0, 1e-12);
  EXPECT_NEAR(f->intercept, 1.0, 1e-12);
  EXPECT_NEAR(*f->ci_low, 2.0, 1e-9);
  EXPECT_NEAR(*f->ci_high, 2.0, 1e-9);

  const std::vector<double> two_x = {1, 2}, two_y = {1, 3};
  const auto g = fit_line(two_x, two_y);
  ASSERT_TRUE(g);
  EXPECT_FALSE(g->ci_low);
  const std::vector<double> one_x = {1, 1};
  EXPECT_FALSE(fit_line(one_x, two_y));
}

TEST(FitLine, IntervalUsesStudentT) {
  // Residuals +-1 around y = x: slope SE = sqrt(s^2 / Sxx) with s^2 = 4/2.
  const std::vector<double> x = {0, 1, 2, 3};
  const std::vector<double> y = {1, 0, 1, 4};
  const auto f = fit_line(x, y);
  ASSERT_TRUE(f);
  double sxx = 0, mean_x = 1.5;
  for (double v : x) sxx += (v - mean_x) * (v - mean_x);
  double sse = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f->intercept + f->slope * x[i]);
    sse += r * r;
  }
  const double se = std::sqrt(sse / 2.0 / sxx);
  EXPECT_NEAR(*f->ci_high - f->slope, 4.302652729911275 * se, 1e-9);  // t_{0.975, 2}
}

}  // namespace
}  // namespace clustest
