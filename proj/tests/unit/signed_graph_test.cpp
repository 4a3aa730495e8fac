#include <gtest/gtest.h>

#include "clustest/error.hpp"
#include "clustest/families.hpp"
#include "clustest/signed_graph.hpp"
#include "test_support.hpp"

namespace clustest {
namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::kConfigError;
}

TEST(BuildGraph, SmallestSymmetricGraph) {
  const std::vector<EdgeSpec> edges = {{0, 1, Sign::kPositive, 0, 0}};
  const SignedGraph g = build_graph(2, 1, edges);
  EXPECT_EQ(g.edge_count(), 1u);
  ASSERT_TRUE(g.port(0, 0));
  EXPECT_EQ(*g.port(0, 0), (PortEntry{1, Sign::kPositive, 0}));
  EXPECT_EQ(*g.port(1, 0), (PortEntry{0, Sign::kPositive, 0}));
}

TEST(BuildGraph, RejectsInvalidEdges) {
  const EdgeSpec e{0, 1, Sign::kPositive, 0, 0};
  EXPECT_EQ(code_of([&] { std::vector<EdgeSpec> es{e, e}; build_graph(2, 1, es); }),
            ErrorCode::kDuplicateEdge);
  EXPECT_EQ(code_of([] {
              std::vector<EdgeSpec> es{{0, 1, Sign::kPositive, 0, 0}, {0, 2, Sign::kPositive, 0, 0}};
              build_graph(3, 1, es);
            }),
            ErrorCode::kPortConflict);
  EXPECT_EQ(code_of([&] {
              std::vector<EdgeSpec> es{{0, 1, Sign::kPositive, 0, 0}, {1, 0, Sign::kNegative, 1, 1}};
              build_graph(2, 2, es);
            }),
            ErrorCode::kDuplicateEdge);
  EXPECT_EQ(code_of([] {
              std::vector<EdgeSpec> es{{0, 0, Sign::kPositive, 0, 1}};
              build_graph(1, 2, es);
            }),
            ErrorCode::kSelfLoop);
  EXPECT_EQ(code_of([] {
              std::vector<EdgeSpec> es{{0, 2, Sign::kPositive, 0, 0}};
              build_graph(2, 1, es);
            }),
            ErrorCode::kIdOutOfRange);
  EXPECT_EQ(code_of([] {
              std::vector<EdgeSpec> es{{0, 1, Sign::kPositive, 1, 0}};
              build_graph(2, 1, es);
            }),
            ErrorCode::kIdOutOfRange);
}

TEST(BuildGraph, ErrorNamesTheEdge) {
  try {
    std::vector<EdgeSpec> es{{0, 1, Sign::kPositive, 0, 0}, {2, 1, Sign::kPositive, 0, 0}};
    build_graph(3, 1, es);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos) << e.what();
  }
}

TEST(NeighborQuery, AnswersAndCounts) {
  const std::vector<EdgeSpec> edges = {{0, 1, Sign::kPositive, 0, 0}};
  const SignedGraph g = build_graph(3, 1, edges);
  QuerySession s(g);
  EXPECT_EQ(s.neighbor_query(0, 1), Answer::neighbor(1, Sign::kPositive));
  EXPECT_TRUE(s.neighbor_query(2, 1).is_error());
  EXPECT_EQ(s.queries_used(), 2u);
  EXPECT_EQ(code_of([&] { s.neighbor_query(3, 1); }), ErrorCode::kIdOutOfRange);
  EXPECT_EQ(code_of([&] { s.neighbor_query(0, 0); }), ErrorCode::kIdOutOfRange);
  EXPECT_EQ(code_of([&] { s.neighbor_query(0, 2); }), ErrorCode::kIdOutOfRange);
  EXPECT_EQ(s.queries_used(), 2u);
  for (int q = 0; q < 10; ++q) s.neighbor_query(1, 1);
  EXPECT_EQ(s.queries_used(), 12u);
}

TEST(NeighborQuery, IsPureAndMatchesPortTable) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const SignedGraph g = testing::random_signed_graph(8, 4, 0.5, 0.4, rng);
    QuerySession s(g);
    for (Vertex v = 0; v < 8; ++v) {
      for (std::uint32_t i = 1; i <= 4; ++i) {
        const Answer a = s.neighbor_query(v, i);
        EXPECT_EQ(a, s.neighbor_query(v, i));
        const auto& slot = g.port(v, i - 1);
        ASSERT_EQ(a.is_error(), !slot.has_value());
        if (slot) {
          EXPECT_EQ(a.get(), (Neighbor{slot->to, slot->sign}));
        }
      }
    }
  }
}

TEST(SignedGraph, SymmetryHoldsOnRandomGraphs) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const SignedGraph g = testing::random_signed_graph(10, 4, 0.6, 0.5, rng);
    std::size_t occupied = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      for (std::uint32_t i = 0; i < g.degree_bound(); ++i) {
        const auto& e = g.port(v, i);
        if (!e) continue;
        ++occupied;
        ASSERT_NE(e->to, v);
        const auto& m = g.port(e->to, e->back_port);
        ASSERT_TRUE(m);
        EXPECT_EQ(*m, (PortEntry{v, e->sign, i}));
      }
    }
    EXPECT_EQ(occupied, 2 * g.edge_count());
  }
}

TEST(GraphIo, RoundTripsFamilyInstances) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SignedGraph g = gen_g2(30, seed).graph;
    const std::string text = serialize_graph(g);
    EXPECT_EQ(parse_graph(text), g);
    EXPECT_EQ(serialize_graph(parse_graph(text)), text);
  }
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const SignedGraph g = testing::random_signed_graph(9, 3, 0.5, 0.5, rng);
    EXPECT_EQ(parse_graph(serialize_graph(g)), g);
  }
}

TEST(GraphIo, FormatErrorsCarryALocus) {
  const std::string uneven =
      R"({"n":2,"d":1,"adjacency":[[{"to":1,"sign":"+","back":1}],[{"to":0,"sign":"+","back":1},null]]})";
  try {
    parse_graph(uneven);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFormatError);
    EXPECT_NE(std::string(e.what()).find("adjacency[1]"), std::string::npos) << e.what();
  }
  EXPECT_EQ(code_of([] { parse_graph("{\"n\":2,"); }), ErrorCode::kFormatError);
  EXPECT_EQ(code_of([] { parse_graph(R"({"n":1,"d":1,"adjacency":[[{"to":0,"sign":"x","back":1}]]})"); }),
            ErrorCode::kFormatError);
  EXPECT_EQ(code_of([] { parse_graph(R"({"d":1,"adjacency":[]})"); }), ErrorCode::kFormatError);
}

TEST(GraphIo, InvariantViolations) {
  const std::string asymmetric =
      R"({"n":2,"d":1,"adjacency":[[{"to":1,"sign":"+","back":1}],[null]]})";
  EXPECT_EQ(code_of([&] { parse_graph(asymmetric); }), ErrorCode::kPortConflict);
  const std::string sign_mismatch =
      R"({"n":2,"d":1,"adjacency":[[{"to":1,"sign":"+","back":1}],[{"to":0,"sign":"-","back":1}]]})";
  EXPECT_EQ(code_of([&] { parse_graph(sign_mismatch); }), ErrorCode::kPortConflict);
  const std::string self =
      R"({"n":1,"d":1,"adjacency":[[{"to":0,"sign":"+","back":1}]]})";
  EXPECT_EQ(code_of([&] { parse_graph(self); }), ErrorCode::kSelfLoop);
  const std::string out_of_range =
      R"({"n":2,"d":1,"adjacency":[[{"to":5,"sign":"+","back":1}],[null]]})";
  EXPECT_EQ(code_of([&] { parse_graph(out_of_range); }), ErrorCode::kIdOutOfRange);
}

}  // namespace
}  // namespace clustest
