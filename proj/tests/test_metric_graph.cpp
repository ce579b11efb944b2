#include <gtest/gtest.h>

#include <sstream>

#include "acyl/error.hpp"
#include "acyl/lemmas.hpp"
#include "acyl/metric_graph.hpp"
#include "oracles.hpp"

using namespace acyl;

namespace {

oracle::Adjacency adjacency_of(const MetricGraph& g) {
  oracle::Adjacency adj(g.size());
  for (Vertex v = 0; v < g.size(); ++v) adj[v] = g.neighbors(v);
  return adj;
}

void expect_distances_match(const MetricGraph& g) {
  auto d = oracle::all_pairs(adjacency_of(g));
  for (Vertex u = 0; u < g.size(); ++u)
    for (Vertex v = 0; v < g.size(); ++v) ASSERT_EQ(g.distance(u, v), d[u][v]) << u << "," << v;
}

}  // namespace

TEST(MetricGraph, DistancesMatchDijkstra) {
  expect_distances_match(instances::free_group_tree(3));
  expect_distances_match(instances::cycle(9));
  expect_distances_match(instances::grid(4, 5));
  expect_distances_match(instances::torus(4, 4));
  auto weighted = MetricGraph::from_edges({{"1", "2", 3}, {"2", "3", 1}, {"1", "3", 5}, {"3", "4", 2}}, "1");
  expect_distances_match(weighted);
  EXPECT_EQ(weighted.distance("1", "3"), 4);
}

TEST(MetricGraph, GeneratedSizes) {
  EXPECT_EQ(instances::free_group_tree(4).size(), 161u);
  EXPECT_EQ(instances::free_group_tree(4).edge_count(), 160u);
  EXPECT_EQ(instances::cycle(8).size(), 8u);
  EXPECT_EQ(instances::grid(6, 6).size(), 36u);
  EXPECT_EQ(instances::torus(6, 6).edge_count(), 72u);
}

TEST(MetricGraph, GeodesicIsLexMinimalShortestPath) {
  for (const auto& g : {instances::grid(4, 4), instances::cycle(8), instances::torus(3, 4)}) {
    auto adj = adjacency_of(g);
    auto d = oracle::all_pairs(adj);
    for (Vertex u = 0; u < g.size(); ++u) {
      for (Vertex v = 0; v < g.size(); ++v) {
        auto geo = g.geodesic(u, v);
        EXPECT_EQ(geo.length, d[u][v]);
        EXPECT_EQ(geo.path, oracle::lex_min_geodesic(adj, d, u, v));
      }
    }
  }
}

TEST(MetricGraph, NumericIdsSortNumerically) {
  auto g = MetricGraph::from_edges({{"10", "9"}, {"9", "2"}}, "2");
  EXPECT_EQ(g.name(0), "2");
  EXPECT_EQ(g.name(1), "9");
  EXPECT_EQ(g.name(2), "10");
}

TEST(MetricGraph, ParseWriteRoundTrip) {
  std::istringstream in("# comment\nbase x\nx y 2\ny z\n");
  auto g = MetricGraph::parse(in);
  EXPECT_EQ(g.name(g.basepoint()), "x");
  EXPECT_EQ(g.distance("x", "z"), 3);
  std::ostringstream out;
  g.write(out);
  std::istringstream back(out.str());
  auto h = MetricGraph::parse(back);
  EXPECT_EQ(h.size(), g.size());
  EXPECT_EQ(h.distance("x", "z"), 3);
}

TEST(MetricGraph, RejectsBadGraphs) {
  std::istringstream disconnected("base 1\n1 2\n3 4\n");
  EXPECT_THROW(MetricGraph::parse(disconnected), Error);
  std::istringstream no_base("1 2\n");
  EXPECT_THROW(MetricGraph::parse(no_base), Error);
  std::istringstream bad_weight("base 1\n1 2 0\n");
  EXPECT_THROW(MetricGraph::parse(bad_weight), Error);
  auto g = instances::cycle(5);
  EXPECT_THROW(g.index("99"), Error);
  EXPECT_THROW(MetricGraph::load("/nonexistent/graph.txt"), Error);
}

TEST(MetricGraph, GromovProductFormula) {
  auto g = instances::cycle(8);
  for (Vertex x = 0; x < 8; ++x)
    for (Vertex y = 0; y < 8; ++y)
      for (Vertex z = 0; z < 8; ++z)
        EXPECT_EQ(g.gromov_product(x, y, z) * 2,
                  Rational(g.distance(x, z) + g.distance(y, z) - g.distance(x, y)));
}

TEST(Delta, FourPointMatchesBruteForce) {
  for (const auto& g : {instances::cycle(8), instances::cycle(7), instances::grid(3, 4),
                        instances::free_group_tree(2), instances::torus(4, 4)}) {
    auto d = oracle::all_pairs(adjacency_of(g));
    auto rep = measure_delta(g, SampleMode::kExhaustive);
    EXPECT_EQ(rep.delta_4pt, half(oracle::twice_delta(d)));
  }
  EXPECT_EQ(measure_delta(instances::free_group_tree(3), SampleMode::kExhaustive).delta_4pt, Rational(0));
}

TEST(Delta, SampledNeverExceedsExhaustive) {
  auto g = instances::grid(4, 4);
  auto full = measure_delta(g, SampleMode::kExhaustive);
  auto sampled = measure_delta(g, SampleMode::kSampled, 500, 3);
  EXPECT_LE(sampled.delta_4pt, full.delta_4pt);
  EXPECT_LE(sampled.delta_slim, full.delta_slim);
  EXPECT_EQ(sampled.quadruples, 500u);
}

TEST(UkSet, MatchesDefinition) {
  auto g = instances::free_group_tree(3);
  const Vertex x = g.index("aba");
  for (int K2 = 0; K2 <= 6; ++K2) {
    const Rational K(K2, 2);
    std::vector<Vertex> expect;
    for (Vertex s = 0; s < g.size(); ++s)
      if (g.gromov_product(x, s, g.basepoint()) > K) expect.push_back(s);
    EXPECT_EQ(u_k_set(g, x, K), expect);
  }
}

TEST(Lemmas, TreeDefectsAreZero) {
  auto rep = verify_constant_lemmas(instances::free_group_tree(3), nullptr);
  EXPECT_EQ(rep.delta.delta_4pt, Rational(0));
  EXPECT_TRUE(rep.all_passed());
  for (const auto& c : rep.checks) EXPECT_EQ(c.measured, Rational(0)) << c.name;
}

TEST(Lemmas, CycleAndGridPassWithMeasuredDelta) {
  for (const auto& g : {instances::cycle(8), instances::grid(5, 5)}) {
    auto d = oracle::all_pairs(adjacency_of(g));
    auto rep = verify_constant_lemmas(g, nullptr);
    EXPECT_EQ(rep.delta.delta_4pt, half(oracle::twice_delta(d)));
    EXPECT_TRUE(rep.all_passed());
    for (const auto& c : rep.checks) EXPECT_LE(c.measured, c.bound) << c.name;
  }
}
