#include <gtest/gtest.h>

#include "support/brute_force.hpp"
#include "vicinity/degree_reduction.hpp"
#include "vicinity/generators.hpp"

using namespace vicinity;
using namespace vicinity::testing;

TEST(Reduce, StarWithDeltaTwo) {
  const Graph s5 = star(4);
  const auto rg = reduce(s5, 2);
  EXPECT_EQ(rg.gd.node_count(), 6u);
  ASSERT_EQ(rg.copies[0], (std::vector<NodeId>{0, 5}));
  EXPECT_EQ(rg.origin[5], 0u);
  // leaves 1,2 go to copy 0; leaves 3,4 go to copy 5
  EXPECT_TRUE(rg.gd.has_edge(0, 1));
  EXPECT_TRUE(rg.gd.has_edge(0, 2));
  EXPECT_TRUE(rg.gd.has_edge(5, 3));
  EXPECT_TRUE(rg.gd.has_edge(5, 4));
  EXPECT_EQ(*rg.gd.edge_weight(0, 5), 0.0);
  EXPECT_EQ(rg.gd.degree(0), 3u);
  EXPECT_EQ(rg.gd.degree(5), 3u);
  const auto rep = distance_preservation_check(s5, rg);
  EXPECT_EQ(rep.max_discrepancy, 0.0);
  // independent check on the reduced graph
  const auto fw = floyd_warshall(rg.gd);
  EXPECT_EQ(fw.at(3, 1), 2.0);
}

TEST(Reduce, IdentityWhenDeltaCoversDegrees) {
  const auto rg = reduce(fix_p5(), 2);
  EXPECT_EQ(rg.gd.edges(), fix_p5().edges());
  for (NodeId v = 0; v < 5; ++v) EXPECT_EQ(rg.copies[v], std::vector<NodeId>{v});
  const Graph g = gen_gnm(60, 150, 4);
  EXPECT_EQ(reduce(g, g.max_degree()).gd.edges(), g.edges());
}

TEST(Reduce, PathWithDeltaOne) {
  const auto rg = reduce(fix_p5(), 1);
  EXPECT_EQ(rg.gd.node_count(), 8u);
  EXPECT_EQ(distance_preservation_check(fix_p5(), rg).max_discrepancy, 0.0);
  const Edge e[] = {{0, 1, 2.5}};
  const Graph single = Graph::from_edges(2, e);
  EXPECT_EQ(distance_preservation_check(single, reduce(single, 1)).max_discrepancy, 0.0);
}

TEST(Reduce, RandomGraphsPreserveDistances) {
  for (std::size_t delta : {1, 2, 4}) {
    for (std::uint64_t s = 0; s < 50; ++s) {
      const std::size_t n = 40 + (s * 7) % 88;
      const Graph g = gen_gnm(n, n * delta / 2, s * 31 + delta);
      const auto rg = reduce(g, delta);
      ASSERT_LE(rg.gd.node_count(), 2 * n);
      ASSERT_LE(rg.gd.max_degree(), delta + 2);
      // floyd-warshall on G as the independent reference
      const auto fw = floyd_warshall(g);
      const auto dr = exact_oracle(rg.gd);
      for (NodeId u = 0; u < n; ++u)
        for (NodeId v = 0; v < n; ++v) ASSERT_TRUE(fw.at(u, v) == dr.at(u, v) || approx_eq(fw.at(u, v), dr.at(u, v)));
      EXPECT_EQ(distance_preservation_check(g, rg).max_discrepancy, 0.0);
    }
  }
}

TEST(Reduce, EdgeSlotsPerCopy) {
  const Graph g = gen_gnm(100, 600, 3);
  const std::size_t delta = 4;
  const auto rg = reduce(g, delta);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto& cs = rg.copies[v];
    EXPECT_EQ(cs.size(), copy_count(g.degree(v), delta));
    for (std::size_t i = 0; i < cs.size(); ++i) {
      std::size_t original = 0;
      for (const Arc& a : rg.gd.neighbors(cs[i])) original += rg.origin[a.to] != v ? 1 : 0;
      const std::size_t expect = i + 1 < cs.size() ? delta : g.degree(v) - (cs.size() - 1) * delta;
      EXPECT_EQ(original, expect);
    }
  }
}

TEST(DegreeProportionalProbability, Examples) {
  const Graph s = star(13);  // center degree 13
  EXPECT_DOUBLE_EQ(degree_proportional_probability(0, s, 4.0, 13.0), 0.25);
  EXPECT_DOUBLE_EQ(degree_proportional_probability(0, s, 2.0, 4.0), 1.0);  // deg = 3*4+1
  EXPECT_DOUBLE_EQ(degree_proportional_probability(1, s, 10.0, 6.0), 0.1);
  EXPECT_THROW(degree_proportional_probability(1, s, 0.5, 6.0), ArgumentError);
}

TEST(Sidecar, Format) {
  EXPECT_EQ(copies_sidecar(reduce(star(4), 2)), "0 0 5\n1 1\n2 2\n3 3\n4 4\n");
}
