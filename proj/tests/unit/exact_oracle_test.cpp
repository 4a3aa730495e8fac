#include <gtest/gtest.h>

#include "clustest/error.hpp"
#include "clustest/exact_oracle.hpp"
#include "clustest/families.hpp"
#include "test_support.hpp"

namespace clustest {
namespace {

using testing::triangle;
constexpr Sign P = Sign::kPositive;
constexpr Sign M = Sign::kNegative;

TEST(IsClusterable, Triangles) {
  const auto all_pos = is_clusterable(triangle(P, P, P));
  ASSERT_TRUE(all_pos);
  EXPECT_EQ(all_pos->component_count, 1u);

  EXPECT_FALSE(is_clusterable(triangle(P, P, M)));

  // Two negative edges: {0,1 | 2} with (0,1) positive.
  const auto two_neg = is_clusterable(triangle(P, M, M));
  ASSERT_TRUE(two_neg);
  EXPECT_EQ(two_neg->component_count, 2u);
  EXPECT_EQ(two_neg->component[0], two_neg->component[1]);
  EXPECT_NE(two_neg->component[0], two_neg->component[2]);
}

TEST(IsClusterable, IsolatedVerticesAreSingletons) {
  const SignedGraph g = build_graph(4, 1, std::vector<EdgeSpec>{});
  const auto w = is_clusterable(g);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->component_count, 4u);
}

TEST(FindBadCycle, NegativeTriangle) {
  const SignedGraph g = triangle(P, P, M);
  const auto c = find_bad_cycle(g);
  ASSERT_TRUE(c);
  EXPECT_TRUE(is_valid_bad_cycle(g, *c));
  EXPECT_EQ(c->vertices.size(), 4u);
  const Vertex a = c->vertices[c->negative_position];
  const Vertex b = c->vertices[c->negative_position + 1];
  EXPECT_EQ(std::min(a, b), 0u);
  EXPECT_EQ(std::max(a, b), 2u);
}

TEST(ExactOracle, ClusterableIffNoBadCycleAgainstPartitionOracle) {
  Rng rng(2024);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 1 + rng.below(8);
    const auto d = static_cast<std::uint32_t>(1 + rng.below(4));
    const SignedGraph g = testing::random_signed_graph(n, d, rng.uniform(), rng.uniform(), rng);
    bool any_valid_partition = false;
    testing::for_each_partition(n, [&](const std::vector<int>& b) {
      if (testing::violations(g, b) == 0) any_valid_partition = true;
    });
    const auto w = is_clusterable(g);
    const auto c = find_bad_cycle(g);
    ASSERT_EQ(w.has_value(), any_valid_partition);
    ASSERT_EQ(c.has_value(), !any_valid_partition);
    if (w) {
      EXPECT_TRUE(is_valid_witness(g, *w));
    }
    if (c) {
      EXPECT_TRUE(is_valid_bad_cycle(g, *c));
    }
  }
}

TEST(ExactOracle, WitnessCheckersRejectBrokenWitnesses) {
  const SignedGraph g = triangle(P, M, M);
  auto w = *is_clusterable(g);
  w.component[2] = w.component[0];
  EXPECT_FALSE(is_valid_witness(g, w));

  const SignedGraph bad = triangle(P, P, M);
  auto c = *find_bad_cycle(bad);
  c.negative_position = (c.negative_position + 1) % 3;
  EXPECT_FALSE(is_valid_bad_cycle(bad, c));
  BadCycle open{{0, 1, 2}, 0};
  EXPECT_FALSE(is_valid_bad_cycle(bad, open));
}

TEST(ExactOracle, MonotoneUnderConsistentEdgeAdditions) {
  Rng rng(77);
  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const SignedGraph g = testing::random_signed_graph(8, 3, 0.3, 0.5, rng);
    const auto w = is_clusterable(g);
    if (!w) continue;
    // Add one consistent edge between two vertices with a free port each.
    std::vector<EdgeSpec> edges = g.edges();
    const auto u = static_cast<Vertex>(rng.below(8));
    const auto v = static_cast<Vertex>(rng.below(8));
    if (u == v) continue;
    bool adjacent = false;
    for (const auto& e : edges) adjacent |= (e.u == std::min(u, v) && e.v == std::max(u, v));
    if (adjacent || g.degree(u) == 3 || g.degree(v) == 3) continue;
    auto free_port = [&g](Vertex x) {
      for (std::uint32_t p = 0;; ++p) {
        if (!g.port(x, p)) return p;
      }
    };
    const Sign s = w->component[u] == w->component[v] ? P : M;
    edges.push_back({u, v, s, free_port(u), free_port(v)});
    EXPECT_TRUE(is_clusterable(build_graph(8, 3, edges)));
    ++checked;
  }
  EXPECT_GT(checked, 200);
}

TEST(Distance, SmallExamples) {
  EXPECT_EQ(distance_to_clusterable(triangle(P, P, P), 2).deletions, 0u);
  const auto d = distance_to_clusterable(triangle(P, P, M), 1);
  EXPECT_TRUE(d.exact());
  EXPECT_EQ(d.deletions, 1u);
}

TEST(Distance, MatchesPartitionOracle) {
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.below(6);
    const SignedGraph g = testing::random_signed_graph(n, 3, 0.7, 0.5, rng);
    const std::size_t truth = testing::brute_force_distance(g);
    const auto got = distance_to_clusterable(g, 3);
    if (truth <= 3) {
      ASSERT_TRUE(got.exact());
      EXPECT_EQ(got.deletions, truth);
    } else {
      EXPECT_FALSE(got.exact());
      EXPECT_EQ(got.deletions, 3u);
    }
  }
}

TEST(Distance, BudgetGuard) {
  const SignedGraph g = gen_g1(100, 1).graph;  // 300 edges
  try {
    distance_to_clusterable(g, 4, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kWorkBudgetExceeded);
  }
}

TEST(Distance, FarInstanceNeedsMoreThanOneDeletion) {
  // Independent check: delete each edge in turn and look for a bad cycle.
  const FamilyInstance inst = gen_g1(30, 3);
  const auto edges = inst.graph.edges();
  bool single_deletion_suffices = false;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::vector<EdgeSpec> kept;
    for (std::size_t j = 0; j < edges.size(); ++j) {
      if (j != i) kept.push_back(edges[j]);
    }
    if (!find_bad_cycle(build_graph(30, 6, kept))) single_deletion_suffices = true;
  }
  const auto d = distance_to_clusterable(inst.graph, 1);
  EXPECT_EQ(d.exact(), single_deletion_suffices);
  EXPECT_FALSE(single_deletion_suffices);
}

}  // namespace
}  // namespace clustest
