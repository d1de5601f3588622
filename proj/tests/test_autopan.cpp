#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace wraplay;
using namespace testing_graphs;

namespace {

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Wrapcost, SumOfInverseLengths) {
  const std::vector<double> lengths{0.5, 0.25};
  EXPECT_DOUBLE_EQ(wrapcost(lengths), 6.0);
  const std::vector<double> zero{0.0};
  EXPECT_THROW(wrapcost(zero), ZeroLengthEdge);
}

TEST(ApplyPan, WrapsIntoCell) {
  const auto l = apply_pan(torus({{0.9, 0.1}}), {0.2, -0.3});
  EXPECT_NEAR(l.positions[0].x, 0.1, 1e-12);
  EXPECT_NEAR(l.positions[0].y, 0.8, 1e-12);
}

TEST(Autopan, UnwrapsAnEdgeAcrossTheSeam) {
  const Graph g = path(3);
  const auto l = torus({{0.95, 0.5}, {0.05, 0.5}, {0.15, 0.5}});
  EXPECT_EQ(wrapping_counts(l, g), (WrapCounts{1, 0, 0}));
  const auto panned = apply_pan(l, autopan_torus(l, g));
  EXPECT_EQ(wrapping_counts(panned, g), (WrapCounts{0, 0, 0}));
  EXPECT_NEAR(separable_wrapcost(panned, g), 0.0, 1e-15);
  // the drawing is centred on the cell
  double lo = 1, hi = 0;
  for (const Vec2& p : panned.positions) lo = std::min(lo, p.x), hi = std::max(hi, p.x);
  EXPECT_NEAR(0.5 * (lo + hi), 0.5, 1e-12);
}

TEST(Autopan, CycleAlwaysWrapsOnce) {
  // A cycle that winds once around x cannot be unwrapped; the cut lands on the longest link.
  const Graph g = cycle(4);
  const auto l = torus({{0.1, 0.5}, {0.3, 0.5}, {0.6, 0.5}, {0.8, 0.5}});
  const auto r = autopan_torus_detailed(l, g);
  EXPECT_NEAR(r.cut_x.cost, 1.0 / 0.3, 1e-12);
  EXPECT_NEAR(r.cut_x.position, 0.45, 1e-12);
  EXPECT_NEAR(r.cut_y.cost, 0.0, 1e-15);
}

TEST(Autopan, TieGoesToSmallestPosition) {
  const Graph g = cycle(4);
  const auto l = torus({{0.0, 0.5}, {0.25, 0.5}, {0.5, 0.5}, {0.75, 0.5}});
  const auto r = autopan_torus_detailed(l, g);
  EXPECT_NEAR(r.cut_x.position, 0.125, 1e-12);
}

TEST(Autopan, SweepMatchesDirectEvaluation) {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = random_connected(20, 15, rng);
    const auto l = random_torus(20, rng);
    for (Axis axis : {Axis::X, Axis::Y}) {
      const auto edges = axis_edges(l, g, axis);
      std::vector<double> coords;
      for (const Vec2& p : l.positions) coords.push_back(axis == Axis::X ? p.x : p.y);
      for (const AxisCut& c : sweep_axis_cuts(coords, edges, g, 1.0)) {
        EXPECT_NEAR(c.cost, axis_wrapcost_at(edges, c.position), 1e-9);
        EXPECT_NEAR(c.cost, oracle::axis_cost(l.positions, g, 1.0, axis == Axis::Y, c.position), 1e-9);
      }
    }
  }
}

TEST(Autopan, ReachesOracleMinimumAndNeverWorsens) {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const double cell = trial % 3 == 0 ? 650.0 : 1.0;
    const Graph g = random_connected(5 + rng.uniform_below(40), 5 + rng.uniform_below(40), rng);
    const auto l = random_torus(g.node_count(), rng, cell);
    const double before = oracle::separable_cost(l.positions, g, cell);
    const double best = oracle::min_separable_cost(l.positions, g, cell);
    const auto panned = apply_pan(l, autopan_torus(l, g));
    const double after = oracle::separable_cost(panned.positions, g, cell);
    EXPECT_LE(relative_gap(after, best), 1e-12) << "trial " << trial;
    EXPECT_LE(after, before * (1 + 1e-12) + 1e-12);
    EXPECT_NEAR(separable_wrapcost(panned, g), after, 1e-9 * std::max(1.0, after));
    // panning never changes the drawing on the torus
    EXPECT_EQ(crossings(panned, g), crossings(l, g));
  }
}

TEST(Autopan, WrapcostStableUnderSmallPans) {
  Rng rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = random_connected(12, 8, rng);
    const auto l = random_torus(12, rng);
    const double base = separable_wrapcost(l, g);
    // a pan too small to move any node across a boundary keeps the wrapped set
    double margin = 1.0;
    for (const Vec2& p : l.positions) margin = std::min({margin, p.x, p.y, 1.0 - p.x, 1.0 - p.y});
    const auto moved = apply_pan(l, {0.5 * margin, -0.5 * margin});
    EXPECT_EQ(wrapping_counts(moved, g), wrapping_counts(l, g));
    EXPECT_NEAR(separable_wrapcost(moved, g), base, 1e-9 * std::max(1.0, base));
  }
}

TEST(Autopan, PreservesStressWhenIdealsAreUnderHalfACell) {
  // Only the four nearest copies can win once every ideal distance is below
  // cell/2, and that set is the same before and after a pan.
  Rng rng(3);
  const Graph g = random_connected(15, 10, rng);
  const auto dm = shortest_paths(g);
  auto l = random_torus(15, rng);
  l.ideal_unit = 0.45 / dm.diameter();
  const auto panned = apply_pan(l, autopan_torus(l, g));
  EXPECT_NEAR(stress(panned, dm), stress(l, dm), 1e-9);
}

TEST(SphereRotation, SplitCountMatchesOracle) {
  Rng rng(8);
  const Graph g = random_connected(30, 30, rng);
  SphereLayout l;
  for (int i = 0; i < 30; ++i) l.positions.push_back(detail::random_unit_vector(rng));
  for (int i = 0; i < 200; ++i) {
    const RotationTriple r = random_rotation(rng);
    EXPECT_EQ(split_edge_count_orthographic(l, g, r), oracle::split_edges(l.positions, g, r.lambda, r.phi, r.gamma));
  }
}

TEST(SphereRotation, ViewAxisSpinKeepsSplitCount) {
  Rng rng(81);
  const Graph g = random_connected(30, 30, rng);
  SphereLayout l;
  for (int i = 0; i < 30; ++i) l.positions.push_back(detail::random_unit_vector(rng));
  for (int i = 0; i < 50; ++i) {
    RotationTriple r = random_rotation(rng);
    const int base = split_edge_count_orthographic(l, g, r);
    r.gamma = rng.uniform(-kPi, kPi);
    EXPECT_EQ(split_edge_count_orthographic(l, g, r), base);
  }
  SphereLayout pair;
  pair.positions = {{1, 0, 0}, {-1, 0, 0}};
  EXPECT_EQ(split_edge_count_orthographic(pair, path(2), {}), 1);
}

TEST(SphereRotation, SearchIsExhaustiveOverItsSamples) {
  Rng rng(5);
  const Graph g = random_connected(25, 25, rng);
  SphereLayout l;
  for (int i = 0; i < 25; ++i) l.positions.push_back(detail::random_unit_vector(rng));
  RotationSearch s;
  s.trials = 300;
  s.seed = 17;
  const auto best = autorotate_orthographic(l, g, s);
  const int best_count = split_edge_count_orthographic(l, g, best);
  EXPECT_LE(best_count, split_edge_count_orthographic(l, g, {}));
  Rng replay(17);
  for (int i = 1; i < s.trials; ++i) EXPECT_LE(best_count, split_edge_count_orthographic(l, g, random_rotation(replay)));
  EXPECT_EQ(autorotate_orthographic(l, g, s), best);
  s.trials = 0;
  EXPECT_THROW(autorotate_orthographic(l, g, s), InvalidInput);
}

TEST(SphereRotation, ClusteredLayoutSplitsFewEdgesAfterSearch) {
  // Two tight clusters at opposite poles joined by one edge.
  Rng rng(10);
  std::vector<Edge> e;
  for (NodeId i = 0; i < 9; ++i) e.push_back({i, i + 1});
  for (NodeId i = 10; i < 19; ++i) e.push_back({i, i + 1});
  e.push_back({9, 10});
  const Graph g(20, e);
  SphereLayout l;
  for (int i = 0; i < 20; ++i) {
    const double z = i < 10 ? 1.0 : -1.0;
    l.positions.push_back(normalized(Vec3{rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2), z}));
  }
  const auto r = autorotate_orthographic(l, g, {});
  EXPECT_LE(split_edge_count_orthographic(l, g, r), 1);
}

TEST(SphereRotation, BoundaryPixelTrivialCases) {
  MaskParams mp;
  RotationSearch s;
  s.trials = 5;
  s.seed = 3;
  s.include_identity = false;
  SphereLayout l;
  l.positions = {from_lon_lat({-0.1, 0.0}), from_lon_lat({0.1, 0.1})};
  Rng replay(3);
  EXPECT_EQ(autorotate_boundary_pixels(l, Graph(2), ProjectionTag::EqualEarth, s, mp), random_rotation(replay));
  s.include_identity = true;
  const auto band = border_band_mask(ProjectionTag::EqualEarth, mp.width, mp.height, mp.border_band);
  EXPECT_EQ(boundary_pixel_cost(l, path(2), {ProjectionTag::EqualEarth, {}}, band, mp), 0u);
  const auto r = autorotate_boundary_pixels(l, path(2), ProjectionTag::EqualEarth, s, mp);
  EXPECT_EQ(boundary_pixel_cost(l, path(2), {ProjectionTag::EqualEarth, r}, band, mp), 0u);
}

TEST(SphereRotation, BoundaryPixelObjective) {
  Rng rng(30);
  const Graph g = random_connected(20, 10, rng);
  SphereLayout l;
  for (int i = 0; i < 20; ++i) l.positions.push_back(detail::random_unit_vector(rng));
  RotationSearch s;
  s.trials = 40;
  MaskParams mp;
  const auto band = border_band_mask(ProjectionTag::EqualEarth, mp.width, mp.height, mp.border_band);
  const auto best = autorotate_boundary_pixels(l, g, ProjectionTag::EqualEarth, s, mp);
  const auto cost = boundary_pixel_cost(l, g, {ProjectionTag::EqualEarth, best}, band, mp);
  EXPECT_LE(cost, boundary_pixel_cost(l, g, {ProjectionTag::EqualEarth, {}}, band, mp));
  mp.width = 32;
  EXPECT_THROW(autorotate_boundary_pixels(l, g, ProjectionTag::EqualEarth, s, mp), RasterTooSmall);
}

TEST(SphereRotation, BoundaryPixelSearchBeatsRandomRotationsOnMiniCorpus) {
  MaskParams mp;
  const auto band = border_band_mask(ProjectionTag::EqualEarth, mp.width, mp.height, mp.border_band);
  double reduction = 0;
  for (std::uint64_t i = 0; i < 10; ++i) {
    CorpusSpec spec;
    spec.modularity_target = 0.30;
    spec.seed = Rng(1, i).next();
    const auto cg = generate_partition_graph(spec);
    const auto dm = shortest_paths(cg.graph);
    LayoutParams p;
    p.seed = 1;
    const auto l = layout_sphere(cg.graph, dm, p);
    Rng baseline_rng(2000 + i);
    double baseline = 0;
    for (int k = 0; k < 10; ++k)
      baseline += static_cast<double>(
          boundary_pixel_cost(l, cg.graph, {ProjectionTag::EqualEarth, random_rotation(baseline_rng)}, band, mp));
    baseline /= 10;
    RotationSearch s;
    s.trials = 200;
    s.seed = i;
    const auto best = autorotate_boundary_pixels(l, cg.graph, ProjectionTag::EqualEarth, s, mp);
    const auto cost = static_cast<double>(boundary_pixel_cost(l, cg.graph, {ProjectionTag::EqualEarth, best}, band, mp));
    reduction += (baseline - cost) / baseline;
  }
  EXPECT_GE(reduction / 10, 0.05) << "mean reduction " << reduction / 10;
}
