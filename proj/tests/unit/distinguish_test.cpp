#include <gtest/gtest.h>

#include "clustest/distinguish.hpp"
#include "clustest/error.hpp"

namespace clustest {
namespace {

TEST(Transcript, CanonicalRenamesByFirstAppearance) {
  Transcript t(42);
  t.record(42, 1, Answer::neighbor(7, Sign::kPositive));
  t.record(7, 5, Answer::neighbor(13, Sign::kNegative));
  t.record(13, 6, Answer::neighbor(7, Sign::kNegative));
  EXPECT_EQ(t.canonical(), "0.1>1+;1.5>2-;2.6>1-;");
  EXPECT_EQ(t.appearance_order(), (std::vector<Vertex>{42, 7, 13}));
  EXPECT_FALSE(t.steps()[1].collision);
  EXPECT_TRUE(t.steps()[2].collision);
  EXPECT_TRUE(t.any_collision());

  Transcript renamed(3);
  renamed.record(3, 1, Answer::neighbor(99, Sign::kPositive));
  renamed.record(99, 5, Answer::neighbor(0, Sign::kNegative));
  renamed.record(0, 6, Answer::neighbor(99, Sign::kNegative));
  EXPECT_EQ(renamed.canonical(), t.canonical());
}

TEST(Transcript, KnownPortsIncludeMirrors) {
  Transcript t(0);
  t.record(0, 3, Answer::neighbor(4, Sign::kPositive));
  EXPECT_TRUE(t.port_known(0, 3));
  EXPECT_TRUE(t.port_known(4, 4));
  EXPECT_FALSE(t.port_known(4, 3));
  EXPECT_EQ(mate_port(5), 6u);
  EXPECT_EQ(mate_port(2), 1u);
}

TEST(Strategies, NamesRoundTrip) {
  for (auto k : {StrategyKind::kRandomPortWalker, StrategyKind::kBreadthFirst,
                 StrategyKind::kPort1Chaser}) {
    EXPECT_EQ(parse_strategy(to_string(k)), k);
    EXPECT_EQ(make_strategy(k, 1)->name(), to_string(k));
  }
  EXPECT_THROW(parse_strategy("greedy"), Error);
}

TEST(Strategies, DeterministicGivenTranscript) {
  const auto s = make_strategy(StrategyKind::kRandomPortWalker, 9);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    LazyProcess a(Family::kFar, 100, seed), b(Family::kFar, 100, seed);
    EXPECT_EQ(run_strategy(a, *s, 8).canonical(), run_strategy(b, *s, 8).canonical());
  }
}

TEST(Strategies, Port1ChaserFollowsTheArcLayer) {
  const auto s = make_strategy(StrategyKind::kPort1Chaser, 0);
  LazyProcess p(Family::kFar, 100, 3);
  const Transcript t = run_strategy(p, *s, 4);
  for (const auto& step : t.steps()) EXPECT_EQ(step.port, 1u);
}

TEST(DistinguishConfig, Validation) {
  DistinguishConfig cfg;
  EXPECT_EQ(cfg.query_count(), 5u);
  EXPECT_NO_THROW(check_distinguish_config(cfg));
  cfg.n = 100;
  cfg.delta = 0.4;
  EXPECT_THROW(check_distinguish_config(cfg), Error);
  cfg = {};
  cfg.trials = 0;
  EXPECT_THROW(check_distinguish_config(cfg), Error);
  cfg = {};
  cfg.delta = 0.5;
  EXPECT_THROW(check_distinguish_config(cfg), Error);
}

TEST(Distinguish, SingleQueryIsIndistinguishable) {
  DistinguishConfig cfg;
  cfg.n = 400;
  cfg.delta = 0.06;  // T = 1
  cfg.trials = 2000;
  cfg.resamples = 50;
  const auto report = distinguish_experiment(cfg);
  ASSERT_EQ(report.queries, 1u);
  // One fresh answer reads "0.p>1s;" with the same sign per port in both
  // processes; only sampling noise separates the two tables.
  EXPECT_LT(report.blocks[0].tv_estimate, 0.06);
  EXPECT_EQ(report.blocks[0].steps[0].rate_p1, 0.0);
  EXPECT_EQ(report.blocks[0].acceptance_gap, 0.0);
}

TEST(Distinguish, DeterministicPerSeed) {
  DistinguishConfig cfg;
  cfg.trials = 300;
  cfg.resamples = 20;
  cfg.seed = 4;
  const auto a = distinguish_experiment(cfg);
  const auto b = distinguish_experiment(cfg);
  EXPECT_EQ(a.blocks[0].tv_estimate, b.blocks[0].tv_estimate);
  EXPECT_EQ(a.blocks[0].bootstrap.sigma, b.blocks[0].bootstrap.sigma);
}

TEST(Uniformity, InteractionStatisticIncludesStartPorts) {
  LazyProcess p(Family::kClusterable, 30, 1);
  const auto s = make_strategy(StrategyKind::kBreadthFirst, 0);
  const Transcript t = run_strategy(p, *s, 2);
  Rng rng(1);
  const auto g = p.complete_graph(rng);
  const std::string stat = interaction_statistic(t, g.graph);
  EXPECT_EQ(stat.substr(0, stat.find('|')), t.canonical());
  // Ports 1 and 2 of the start were queried: their neighbors are ids 1, 2.
  EXPECT_EQ(stat.substr(stat.find('|') + 1, 4), "1,2,");
}

}  // namespace
}  // namespace clustest
