#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace wraplay;
using namespace testing_graphs;

TEST(Graph, RejectsInvalidInput) {
  EXPECT_THROW(Graph(0), InvalidInput);
  EXPECT_THROW(Graph(3, {{0, 0}}), InvalidInput);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), InvalidInput);
  EXPECT_THROW(Graph(3, {{0, 3}}), InvalidInput);
  EXPECT_THROW(Graph(3, {{0, 1}}, {"a", "b"}), InvalidInput);
}

TEST(Graph, LabelsDefaultToIds) {
  const Graph g(3, {{0, 1}, {1, 2}});
  EXPECT_FALSE(g.has_labels());
  EXPECT_EQ(g.label(2), "2");
  const Graph h(2, {{0, 1}}, {"left", "right"});
  EXPECT_EQ(h.label(1), "right");
}

TEST(Clustering, RejectsGapsAndEmptyClusters) {
  EXPECT_THROW(Clustering({0, 2, 2}), InvalidInput);
  EXPECT_THROW(Clustering({1, 1}), InvalidInput);
  EXPECT_THROW(Clustering({0, -1}), InvalidInput);
  const Clustering c({0, 1, 0, 2});
  EXPECT_EQ(c.cluster_count(), 3u);
  EXPECT_EQ(c.members()[0], (std::vector<NodeId>{0, 2}));
}

TEST(ShortestPaths, PathOfThree) {
  const auto dm = shortest_paths(path(3));
  EXPECT_EQ(dm(0, 2), 2);
  EXPECT_EQ(dm.diameter(), 2);
  EXPECT_EQ(dm.d_min(), 1);
}

TEST(ShortestPaths, CompleteGraph) {
  const auto dm = shortest_paths(complete(4));
  for (int u = 0; u < 4; ++u)
    for (int v = 0; v < 4; ++v) EXPECT_EQ(dm(u, v), u == v ? 0 : 1);
  EXPECT_EQ(dm.diameter(), 1);
}

TEST(ShortestPaths, DisconnectedThrows) {
  const Graph g(4, {{0, 1}, {2, 3}});
  EXPECT_FALSE(g.is_connected());
  EXPECT_THROW(shortest_paths(g), DisconnectedGraph);
  EXPECT_THROW(graph_diameter(g), DisconnectedGraph);
}

TEST(ShortestPaths, MatchesFloydWarshallOnRandomGraphs) {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng.uniform_below(39);
    const Graph g = random_connected(n, rng.uniform_below(2 * n), rng);
    EXPECT_EQ(shortest_paths(g).data(), oracle::floyd_warshall(g)) << "trial " << trial;
  }
}

TEST(ShortestPaths, MatchesFloydWarshallOnSmallWorldGraph) {
  LegacySpec spec;
  spec.size_class = LegacyClass::Large;
  spec.model = LegacyModel::SmallWorld;
  spec.seed = 5;
  const Graph g = generate_legacy_graph(spec);
  ASSERT_EQ(g.node_count(), 15u);
  const auto fw = oracle::floyd_warshall(g);
  EXPECT_EQ(shortest_paths(g).data(), fw);
  EXPECT_EQ(graph_diameter(g), *std::max_element(fw.begin(), fw.end()));
}

TEST(GraphDiameter, StarAndCycle) {
  EXPECT_EQ(graph_diameter(star(4)), 2);
  EXPECT_EQ(graph_diameter(cycle(8)), 4);
}

TEST(Density, CompleteAndPath) {
  EXPECT_DOUBLE_EQ(density(complete(4)), 1.0);
  EXPECT_DOUBLE_EQ(density(path(4)), 0.5);
}

TEST(Modularity, SingleClusterIsZero) {
  const Graph g = bridged_triangles();
  EXPECT_NEAR(modularity(g, Clustering(std::vector<int>(6, 0))), 0.0, 1e-15);
}

TEST(Modularity, BridgedTrianglesByHand) {
  // m = 7; each triangle holds 3 edges and degree total 7:
  // Q = 2 (3/7 - (7/14)^2) = 5/14
  const Graph g = bridged_triangles();
  const Clustering c({0, 0, 0, 1, 1, 1});
  EXPECT_NEAR(modularity(g, c), 5.0 / 14.0, 1e-15);
}

TEST(Modularity, PerClusterValuesAverageToQ) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = random_connected(30, 40, rng);
    std::vector<int> a(30);
    for (int v = 0; v < 30; ++v) a[v] = v % 4;
    const Clustering c(a);
    const auto per = cluster_modularities(g, c);
    const double m = static_cast<double>(g.edge_count());
    std::vector<double> deg(4, 0.0);
    for (const Edge& e : g.edges()) {
      deg[a[e.source]] += 1;
      deg[a[e.target]] += 1;
    }
    double weighted = 0.0;
    for (int k = 0; k < 4; ++k) weighted += per[k] * deg[k] / (2 * m);
    EXPECT_NEAR(weighted, modularity(g, c), 1e-12);
    EXPECT_GE(modularity(g, c), -0.5);
    EXPECT_LE(modularity(g, c), 1.0);
  }
}
