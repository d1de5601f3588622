#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace wraplay;
using namespace testing_graphs;

TEST(GraphJson, RoundTripWithClustersAndMeta) {
  const Graph g = bridged_triangles();
  const Clustering c({0, 0, 0, 1, 1, 1});
  const ojson j = graph_to_json(g, &c, {{"modularity", 0.5}});
  EXPECT_EQ(j.dump(), R"({"nodes":[{"id":0,"cluster":0},{"id":1,"cluster":0},{"id":2,"cluster":0},)"
                      R"({"id":3,"cluster":1},{"id":4,"cluster":1},{"id":5,"cluster":1}],)"
                      R"("links":[{"source":0,"target":1},{"source":1,"target":2},{"source":0,"target":2},)"
                      R"({"source":3,"target":4},{"source":4,"target":5},{"source":3,"target":5},)"
                      R"({"source":2,"target":3}],"meta":{"modularity":0.5}})");
  const auto doc = graph_from_json(parse_json(j.dump()));
  EXPECT_EQ(doc.graph.node_count(), 6u);
  EXPECT_EQ(doc.graph.edge_count(), 7u);
  ASSERT_TRUE(doc.clustering.has_value());
  EXPECT_EQ((*doc.clustering)[4], 1);
  EXPECT_EQ(doc.meta["modularity"], 0.5);
  EXPECT_EQ(graph_to_json(doc.graph, &*doc.clustering, doc.meta), j);
}

TEST(GraphJson, LabelsAndUnorderedIds) {
  const auto doc = graph_from_json(parse_json(
      R"({"nodes":[{"id":1,"label":"b"},{"id":0,"label":"a"}],"links":[{"source":1,"target":0}]})"));
  EXPECT_EQ(doc.graph.label(0), "a");
  EXPECT_EQ(doc.graph.label(1), "b");
  EXPECT_FALSE(doc.clustering.has_value());
}

TEST(GraphJson, Rejections) {
  auto load = [](const char* text) { return graph_from_json(parse_json(text)); };
  EXPECT_THROW(parse_json("{"), InvalidInput);
  EXPECT_THROW(load(R"({"nodes":[]})"), InvalidInput);
  EXPECT_THROW(load(R"({"nodes":[],"links":[]})"), InvalidInput);
  EXPECT_THROW(load(R"({"nodes":[{"id":0},{"id":0}],"links":[]})"), InvalidInput);
  EXPECT_THROW(load(R"({"nodes":[{"id":0},{"id":2}],"links":[]})"), InvalidInput);
  EXPECT_THROW(load(R"({"nodes":[{"id":0},{"id":1}],"links":[{"source":0,"target":0}]})"), InvalidInput);
  EXPECT_THROW(load(R"({"nodes":[{"id":0},{"id":1}],"links":[{"source":0,"target":1},{"source":1,"target":0}]})"),
               InvalidInput);
  EXPECT_THROW(load(R"({"nodes":[{"id":0,"cluster":0},{"id":1}],"links":[{"source":0,"target":1}]})"), InvalidInput);
  EXPECT_THROW(load(R"({"nodes":[{"id":0},{"id":1},{"id":2}],"links":[{"source":0,"target":1}]})"), DisconnectedGraph);
}

TEST(LayoutJson, TorusRoundTripIsExact) {
  Rng rng(3);
  auto l = random_torus(5, rng, 650.0);
  l.ideal_unit = 650.0 / 3;
  l.converged = true;
  l.iterations = 42;
  auto d = make_document(l, 7, "pairwise");
  d.pan = PanVector{0.25, -0.125};
  const std::string text = dump(layout_to_json(d));
  const auto back = layout_from_json(parse_json(text));
  EXPECT_EQ(back.topology, Topology::Torus);
  EXPECT_EQ(back.planar, l.positions);
  EXPECT_EQ(back.cell_size, 650.0);
  EXPECT_EQ(back.iterations, 42);
  EXPECT_TRUE(back.converged);
  EXPECT_EQ(back.seed, 7u);
  ASSERT_TRUE(back.pan.has_value());
  EXPECT_EQ(back.pan->dx, 0.25);
  EXPECT_EQ(dump(layout_to_json(back)), text);
  // key order is fixed
  const auto j = parse_json(text);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"topology", "cell_size", "L", "positions", "converged", "iterations",
                                            "seed", "algorithm", "view"}));
  EXPECT_THROW(back.flat_layout(), TopologyMismatch);
  EXPECT_EQ(back.torus_layout().positions, l.positions);
}

TEST(LayoutJson, SphereRotateView) {
  SphereLayout s;
  s.positions = {{1, 0, 0}, {0, 0, 1}};
  auto d = make_document(s, kPi, 1, "pairwise");
  d.rotate = RotationTriple{0.1, 0.2, 0.3};
  const auto back = layout_from_json(layout_to_json(d));
  EXPECT_EQ(back.sphere_layout().view_rotation, (RotationTriple{0.1, 0.2, 0.3}));
  EXPECT_EQ(back.node_count(), 2u);
}

TEST(LayoutJson, Rejections) {
  auto load = [](const char* text) { return layout_from_json(parse_json(text)); };
  EXPECT_THROW(load(R"({"topology":"flat"})"), InvalidInput);
  EXPECT_THROW(load(R"({"topology":"klein","L":1,"positions":[],"converged":true,"iterations":1,"seed":1})"),
               InvalidInput);
  EXPECT_THROW(load(R"({"topology":"torus","L":1,"positions":[],"converged":true,"iterations":1,"seed":1})"),
               InvalidInput);
  EXPECT_THROW(load(R"({"topology":"flat","L":1,"positions":[[1,2,3]],"converged":true,"iterations":1,"seed":1})"),
               InvalidInput);
  EXPECT_THROW(load(R"({"topology":"flat","L":1,"positions":[[1,2]],"converged":true,"iterations":1,"seed":1,)"
                    R"("view":{"pan":[0,0]}})"),
               TopologyMismatch);
  EXPECT_THROW(load(R"({"topology":"torus","cell_size":1,"L":1,"positions":[[0,0]],"converged":true,)"
                    R"("iterations":1,"seed":1,"view":{"rotate":[0,0,0]}})"),
               TopologyMismatch);
}

TEST(MetricsCsv, RowLayout) {
  MetricsRow row;
  row.graph = "g,1";
  row.topology = "torus";
  row.algorithm = "pairwise-torus";
  row.seed = 3;
  MetricsReport r;
  r.stress = 0.1;
  r.crossings = 4;
  r.link_length_variance = 0.5;
  r.angle_deviation = 0.25;
  r.wrapping = WrapCounts{1, 2, 0};
  row.report = r;
  row.converged = true;
  row.iterations = 9;
  EXPECT_EQ(row.csv(), "\"g,1\",torus,pairwise-torus,3,0.10000000000000001,4,0.5,0.25,1,2,0,,true,9,ok");
  row.report.reset();
  row.status = "error: boom";
  EXPECT_EQ(row.csv(), "\"g,1\",torus,pairwise-torus,3,,,,,,,,,true,9,error: boom");
  std::size_t commas = 0;
  for (char ch : MetricsRow::header()) commas += ch == ',';
  EXPECT_EQ(commas, 14u);
  EXPECT_EQ(std::stod(format_real(0.1)), 0.1);
}

TEST(Manifest, DigestAndShape) {
  EXPECT_EQ(hex_digest(""), "cbf29ce484222325");
  EXPECT_EQ(hex_digest("a"), "af63dc4c8601ec8c");
  RunManifest m({"wraplay", "layout"});
  m.add_seed(5);
  LayoutParams p;
  m.set_params(params_to_json(p));
  m.add_input("g.json", "");
  const int v = m.stage("layout", [] { return 3; });
  EXPECT_EQ(v, 3);
  m.stage("noop", [] {});
  const ojson j = m.to_json();
  EXPECT_EQ(j["seeds"][0], 5);
  EXPECT_EQ(j["inputs"][0]["fnv1a64"], "cbf29ce484222325");
  EXPECT_EQ(j["stages"].size(), 2u);
  EXPECT_EQ(j["params"]["tau"], 80.0);
  EXPECT_EQ(j["params"]["tau_max"], 200);
}
