#pragma once

// View selection before display: a translation for torus layouts and a
// rotation for sphere layouts, chosen to keep edges off the view boundary.
//
// Torus. Panning by -s makes coordinate s the new cell boundary. Along one
// axis the set of edges split by the boundary only changes when a node
// crosses it, so the candidate boundaries are the midpoints of the gaps
// between consecutive distinct node coordinates (including the gap that
// wraps around). A sweep visits them in order, toggling the edges incident to
// each node passed, and scores each by wrapcost = sum over split edges of
// 1 / length. Axes are optimised independently; the layout is then centred.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "wraplay/errors.hpp"
#include "wraplay/geometry.hpp"
#include "wraplay/graph.hpp"
#include "wraplay/layout.hpp"
#include "wraplay/raster.hpp"
#include "wraplay/rng.hpp"

namespace wraplay {

// Sum of 1/length over wrapped edges.
inline double wrapcost(std::span<const double> wrapped_lengths) {
  double total = 0.0;
  for (double d : wrapped_lengths) {
    if (d < 1e-12) throw ZeroLengthEdge();
    total += 1.0 / d;
  }
  return total;
}

struct PanVector {
  double dx = 0.0, dy = 0.0;
};

inline TorusLayout apply_pan(const TorusLayout& layout, PanVector pan) {
  TorusLayout out = layout;
  for (auto& p : out.positions) p = wrap_point({p.x + pan.dx, p.y + pan.dy}, layout.cell_size);
  return out;
}

enum class Axis { X, Y };

// One edge seen along one axis: endpoint coordinates and the tile offset of
// its minimum-image segment along that axis.
struct AxisEdge {
  double from = 0.0, to = 0.0;
  int offset = 0;
  double length = 0.0;
};

inline std::vector<AxisEdge> axis_edges(const TorusLayout& layout, const Graph& g, Axis axis) {
  std::vector<AxisEdge> out;
  out.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    const Vec2 a = layout.positions[e.source], b = layout.positions[e.target];
    const Wrapping w = minimum_image(a, b, layout.cell_size);
    if (axis == Axis::X) out.push_back({a.x, b.x, w.offset.dx, w.distance});
    else out.push_back({a.y, b.y, w.offset.dy, w.distance});
  }
  return out;
}

// Whether a boundary placed at `cut` splits the edge.
inline bool cut_splits(const AxisEdge& e, double cut) {
  if (e.offset == 0) return std::min(e.from, e.to) < cut && cut < std::max(e.from, e.to);
  if (e.offset > 0) return cut > e.from || cut < e.to;
  return cut < e.from || cut > e.to;
}

// Cost of the boundary at the current view, i.e. cut = 0 (edges whose
// minimum image leaves the cell along this axis).
inline double axis_wrapcost(std::span<const AxisEdge> edges) {
  std::vector<double> lengths;
  for (const AxisEdge& e : edges)
    if (e.offset != 0) lengths.push_back(e.length);
  return wrapcost(lengths);
}

inline double axis_wrapcost_at(std::span<const AxisEdge> edges, double cut) {
  std::vector<double> lengths;
  for (const AxisEdge& e : edges)
    if (cut_splits(e, cut)) lengths.push_back(e.length);
  return wrapcost(lengths);
}

// wrapcost of the current view with each axis scored separately: an edge
// split by both boundaries contributes once per axis.
inline double separable_wrapcost(const TorusLayout& layout, const Graph& g) {
  return axis_wrapcost(axis_edges(layout, g, Axis::X)) + axis_wrapcost(axis_edges(layout, g, Axis::Y));
}

struct AxisCut {
  double position = 0.0;
  double cost = 0.0;
};

// Candidate boundaries and their costs, by sweep, in increasing position.
// Costs are running sums and may carry round-off; callers re-evaluate the
// chosen cut with axis_wrapcost_at().
inline std::vector<AxisCut> sweep_axis_cuts(std::span<const double> coords, std::span<const AxisEdge> edges,
                                            const Graph& g, double cell) {
  std::vector<double> sorted(coords.begin(), coords.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const std::size_t k = sorted.size();
  std::vector<double> cuts(k);
  for (std::size_t i = 0; i + 1 < k; ++i) cuts[i] = 0.5 * (sorted[i] + sorted[i + 1]);
  cuts[k - 1] = wrap_coordinate(0.5 * (sorted[k - 1] + sorted[0] + cell), cell);

  // node ids grouped by coordinate
  std::map<double, std::vector<NodeId>> at;
  for (std::size_t v = 0; v < coords.size(); ++v) at[coords[v]].push_back(static_cast<NodeId>(v));
  std::vector<std::vector<std::size_t>> incident(coords.size());
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    incident[g.edges()[i].source].push_back(i);
    incident[g.edges()[i].target].push_back(i);
  }

  std::vector<char> open(edges.size(), 0);
  double cost = 0.0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (cut_splits(edges[i], cuts[0])) {
      if (edges[i].length < 1e-12) throw ZeroLengthEdge();
      open[i] = 1;
      cost += 1.0 / edges[i].length;
    }
  }
  std::vector<AxisCut> out(k);
  out[0] = {cuts[0], cost};
  for (std::size_t c = 1; c < k; ++c) {
    for (NodeId v : at[sorted[c]]) {
      for (std::size_t ei : incident[v]) {
        if (edges[ei].length < 1e-12) throw ZeroLengthEdge();
        open[ei] ^= 1;
        cost += (open[ei] ? 1.0 : -1.0) / edges[ei].length;
      }
    }
    out[c] = {cuts[c], cost};
  }
  std::sort(out.begin(), out.end(), [](const AxisCut& a, const AxisCut& b) { return a.position < b.position; });
  return out;
}

inline bool cost_less(double a, double b) { return a < b - 1e-12 * std::max(1.0, std::abs(b)); }

// Lowest-cost cut; ties go to the smallest position.
inline AxisCut best_axis_cut(std::span<const AxisCut> cuts) {
  AxisCut best = cuts[0];
  for (const AxisCut& c : cuts.subspan(1))
    if (cost_less(c.cost, best.cost)) best = c;
  return best;
}

struct TorusPanResult {
  PanVector pan;
  AxisCut cut_x, cut_y;
};

inline TorusPanResult autopan_torus_detailed(const TorusLayout& layout, const Graph& g) {
  const double cell = layout.cell_size;
  TorusPanResult r;
  if (layout.positions.empty()) return r;
  std::vector<double> xs, ys;
  for (const Vec2& p : layout.positions) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  const auto ex = axis_edges(layout, g, Axis::X);
  const auto ey = axis_edges(layout, g, Axis::Y);
  r.cut_x = best_axis_cut(sweep_axis_cuts(xs, ex, g, cell));
  r.cut_y = best_axis_cut(sweep_axis_cuts(ys, ey, g, cell));
  r.cut_x.cost = axis_wrapcost_at(ex, r.cut_x.position);
  r.cut_y.cost = axis_wrapcost_at(ey, r.cut_y.position);

  // centre: midpoint of the extreme nodes goes to the cell centre
  auto centring = [&](const std::vector<double>& c, double cut) {
    double lo = cell, hi = 0.0;
    for (double v : c) {
      const double s = wrap_coordinate(v - cut, cell);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    double shift = 0.5 * cell - 0.5 * (lo + hi) - cut;
    shift = wrap_coordinate(shift + 0.5 * cell, cell) - 0.5 * cell;
    return shift;
  };
  r.pan = {centring(xs, r.cut_x.position), centring(ys, r.cut_y.position)};
  return r;
}

inline PanVector autopan_torus(const TorusLayout& layout, const Graph& g) {
  return autopan_torus_detailed(layout, g).pan;
}

// ---------------------------------------------------------------------------
// Sphere

inline RotationTriple random_rotation(Rng& rng) {
  return {rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)};
}

// Edges whose endpoints land on different hemisphere discs.
inline int split_edge_count_orthographic(const SphereLayout& layout, const Graph& g, const RotationTriple& r) {
  std::vector<char> front(layout.positions.size());
  for (std::size_t i = 0; i < front.size(); ++i) front[i] = rotate(layout.positions[i], r).x >= 0.0;
  int count = 0;
  for (const Edge& e : g.edges())
    if (front[e.source] != front[e.target]) ++count;
  return count;
}

struct RotationSearch {
  int trials = 1000;
  std::uint64_t seed = 0;
  // Candidate 0 is the identity (the current view) when set.
  bool include_identity = true;
};

namespace detail {

template <typename CostFn>
RotationTriple best_sampled_rotation(const RotationSearch& search, CostFn cost) {
  if (search.trials < 1) throw InvalidInput("trials must be at least 1");
  Rng rng(search.seed);
  RotationTriple best;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int i = 0; i < search.trials; ++i) {
    const RotationTriple r = (i == 0 && search.include_identity) ? RotationTriple{} : random_rotation(rng);
    const double c = cost(r);
    if (c < best_cost) {
      best_cost = c;
      best = r;
    }
  }
  return best;
}

}  // namespace detail

inline RotationTriple autorotate_orthographic(const SphereLayout& layout, const Graph& g,
                                              const RotationSearch& search = {}) {
  return detail::best_sampled_rotation(search, [&](const RotationTriple& r) {
    return static_cast<double>(split_edge_count_orthographic(layout, g, r));
  });
}

struct MaskParams {
  int width = 900;
  int height = 317;
  int border_band = 6;
};

inline std::size_t boundary_pixel_cost(const SphereLayout& layout, const Graph& g, const ProjectionKind& kind,
                                       const EdgeMask& band, const MaskParams& mp) {
  return rasterize_edges_mask(layout, g, kind, mp.width, mp.height, mp.border_band).count_within(band);
}

inline RotationTriple autorotate_boundary_pixels(const SphereLayout& layout, const Graph& g, ProjectionTag projection,
                                                 const RotationSearch& search = {}, const MaskParams& mp = {}) {
  if (mp.width < 64) throw RasterTooSmall();
  const EdgeMask band = border_band_mask(projection, mp.width, mp.height, mp.border_band);
  return detail::best_sampled_rotation(search, [&](const RotationTriple& r) {
    return static_cast<double>(boundary_pixel_cost(layout, g, {projection, r}, band, mp));
  });
}

}  // namespace wraplay
