#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wraplay/convex.hpp"
#include "wraplay/errors.hpp"
#include "wraplay/geometry.hpp"
#include "wraplay/graph.hpp"
#include "wraplay/layout.hpp"

namespace wraplay {

// ---------------------------------------------------------------------------
// Stress. Sums run over unordered pairs.

inline double stress(const FlatLayout& layout, const DistanceMatrix& dm) {
  const auto& x = layout.positions;
  double s = 0.0;
  for (std::size_t u = 0; u < x.size(); ++u) {
    for (std::size_t v = u + 1; v < x.size(); ++v) {
      const double ideal = layout.ideal_unit * dm(u, v);
      const double r = ideal - norm(x[v] - x[u]);
      s += r * r / (ideal * ideal);
    }
  }
  return s;
}

inline double stress(const TorusLayout& layout, const DistanceMatrix& dm) {
  const auto& x = layout.positions;
  double s = 0.0;
  for (std::size_t u = 0; u < x.size(); ++u) {
    for (std::size_t v = u + 1; v < x.size(); ++v) {
      const double ideal = layout.ideal_unit * dm(u, v);
      const double r = ideal - best_wrapping(x[u], x[v], layout.cell_size, ideal).distance;
      s += r * r / (ideal * ideal);
    }
  }
  return s;
}

inline double stress(const SphereLayout& layout, const DistanceMatrix& dm) {
  const auto& x = layout.positions;
  const double unit = sphere_ideal_unit(dm);
  double s = 0.0;
  for (std::size_t u = 0; u < x.size(); ++u) {
    for (std::size_t v = u + 1; v < x.size(); ++v) {
      const double ideal = unit * dm(u, v);
      const double r = ideal - arc_length(x[u], x[v]);
      s += r * r / (ideal * ideal);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Edge geometry

struct Segment {
  Vec2 a, b;
  std::size_t edge = 0;  // owning edge index
};

// Edge vector from source to target: plain difference on the plane,
// minimum image on the torus.
inline std::vector<Vec2> edge_vectors(const FlatLayout& layout, const Graph& g) {
  std::vector<Vec2> out;
  out.reserve(g.edge_count());
  for (const Edge& e : g.edges()) out.push_back(layout.positions[e.target] - layout.positions[e.source]);
  return out;
}

inline std::vector<Vec2> edge_vectors(const TorusLayout& layout, const Graph& g) {
  std::vector<Vec2> out;
  out.reserve(g.edge_count());
  for (const Edge& e : g.edges())
    out.push_back(minimum_image(layout.positions[e.source], layout.positions[e.target], layout.cell_size).vector);
  return out;
}

// Splits the segment start -> start + vec at every cell boundary it crosses
// and translates each piece back into the centre cell. Pieces are in order.
inline std::vector<Segment> split_at_cell_boundaries(Vec2 start, Vec2 vec, double cell, std::size_t edge = 0) {
  std::vector<double> ts{0.0, 1.0};
  const Vec2 end = start + vec;
  auto add_crossings = [&](double from, double delta) {
    if (delta == 0.0) return;
    const double lo = std::min(from, from + delta), hi = std::max(from, from + delta);
    for (double k = std::ceil(lo / cell); k * cell < hi; k += 1.0) {
      const double t = (k * cell - from) / delta;
      if (t > 0.0 && t < 1.0) ts.push_back(t);
    }
  };
  add_crossings(start.x, vec.x);
  add_crossings(start.y, vec.y);
  std::sort(ts.begin(), ts.end());
  std::vector<Segment> out;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (ts[i + 1] - ts[i] <= 0.0) continue;
    Vec2 a = start + ts[i] * vec;
    Vec2 b = i + 2 == ts.size() ? end : start + ts[i + 1] * vec;
    const Vec2 mid = 0.5 * (a + b);
    const Vec2 shift{cell * std::floor(mid.x / cell), cell * std::floor(mid.y / cell)};
    out.push_back({a - shift, b - shift, edge});
  }
  return out;
}

inline std::vector<Segment> edge_segments(const FlatLayout& layout, const Graph& g) {
  std::vector<Segment> out;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edges()[i];
    out.push_back({layout.positions[e.source], layout.positions[e.target], i});
  }
  return out;
}

inline std::vector<Segment> edge_segments(const TorusLayout& layout, const Graph& g) {
  std::vector<Segment> out;
  const auto vecs = edge_vectors(layout, g);
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    auto pieces = split_at_cell_boundaries(layout.positions[g.edges()[i].source], vecs[i], layout.cell_size, i);
    out.insert(out.end(), pieces.begin(), pieces.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Crossings

inline constexpr double kOrientEps = 1e-12;

inline int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double o = cross(b - a, c - a);
  if (o > kOrientEps) return 1;
  if (o < -kOrientEps) return -1;
  return 0;
}

// Proper crossing only: touching and collinear overlap do not count.
inline bool segments_cross(const Segment& s, const Segment& t) {
  const int o1 = orientation(s.a, s.b, t.a), o2 = orientation(s.a, s.b, t.b);
  const int o3 = orientation(t.a, t.b, s.a), o4 = orientation(t.a, t.b, s.b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

inline bool edges_share_node(const Graph& g, std::size_t e, std::size_t f) {
  const Edge& a = g.edges()[e];
  const Edge& b = g.edges()[f];
  return e == f || a.source == b.source || a.source == b.target || a.target == b.source || a.target == b.target;
}

inline long long count_crossings_brute(std::span<const Segment> segs, const Graph& g) {
  long long count = 0;
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (std::size_t j = i + 1; j < segs.size(); ++j)
      if (!edges_share_node(g, segs[i].edge, segs[j].edge) && segments_cross(segs[i], segs[j])) ++count;
  return count;
}

// Sweep over x: segments enter the active list at their left end and leave
// once the sweep passes their right end. Only x-overlapping pairs are tested,
// with the same predicate as the brute-force count.
inline long long count_crossings_sweep(std::span<const Segment> segs, const Graph& g) {
  struct Span {
    double lo, hi;
    std::size_t index;
  };
  std::vector<Span> spans;
  spans.reserve(segs.size());
  for (std::size_t i = 0; i < segs.size(); ++i)
    spans.push_back({std::min(segs[i].a.x, segs[i].b.x), std::max(segs[i].a.x, segs[i].b.x), i});
  std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.index < b.index);
  });
  long long count = 0;
  std::vector<Span> active;
  for (const Span& s : spans) {
    std::erase_if(active, [&](const Span& a) { return a.hi < s.lo; });
    const Segment& seg = segs[s.index];
    const double ylo = std::min(seg.a.y, seg.b.y), yhi = std::max(seg.a.y, seg.b.y);
    for (const Span& a : active) {
      const Segment& other = segs[a.index];
      if (std::max(other.a.y, other.b.y) < ylo || std::min(other.a.y, other.b.y) > yhi) continue;
      if (!edges_share_node(g, seg.edge, other.edge) && segments_cross(seg, other)) ++count;
    }
    active.push_back(s);
  }
  return count;
}

template <typename LayoutT>
long long crossings(const LayoutT& layout, const Graph& g) {
  const auto segs = edge_segments(layout, g);
  return count_crossings_sweep(segs, g);
}

// ---------------------------------------------------------------------------
// Link length variance and incidence angle

inline double link_length_variance(std::span<const double> lengths) {
  if (lengths.empty()) return 0.0;
  double mean = 0.0;
  for (double l : lengths) mean += l;
  mean /= static_cast<double>(lengths.size());
  if (mean <= 0.0) return 0.0;
  double var = 0.0;
  for (double l : lengths) {
    const double r = 1.0 - l / mean;
    var += r * r;
  }
  return var / static_cast<double>(lengths.size());
}

template <typename LayoutT>
double link_length_variance(const LayoutT& layout, const Graph& g) {
  std::vector<double> lengths;
  for (const Vec2& v : edge_vectors(layout, g)) lengths.push_back(norm(v));
  return link_length_variance(lengths);
}

// Mean over nodes of |theta_v - min angle| / theta_v with theta_v = 2 pi / deg.
// Nodes of degree < 2 contribute 0.
inline double incidence_angle_deviation(const Graph& g, std::span<const Vec2> edge_vecs) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<double>> angles(n);
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edges()[i];
    const Vec2 v = edge_vecs[i];
    angles[e.source].push_back(std::atan2(v.y, v.x));
    angles[e.target].push_back(std::atan2(-v.y, -v.x));
  }
  double total = 0.0;
  for (auto& a : angles) {
    if (a.size() < 2) continue;
    std::sort(a.begin(), a.end());
    double min_gap = a.front() + 2.0 * kPi - a.back();
    for (std::size_t i = 1; i < a.size(); ++i) min_gap = std::min(min_gap, a[i] - a[i - 1]);
    const double ideal = 2.0 * kPi / static_cast<double>(a.size());
    total += std::abs(ideal - min_gap) / ideal;
  }
  return total / static_cast<double>(n);
}

template <typename LayoutT>
double incidence_angle_deviation(const LayoutT& layout, const Graph& g) {
  const auto vecs = edge_vectors(layout, g);
  return incidence_angle_deviation(g, vecs);
}

// ---------------------------------------------------------------------------
// Torus wrapping

struct WrapCounts {
  int lr = 0, tb = 0, corner = 0;
  friend bool operator==(const WrapCounts&, const WrapCounts&) = default;
};

// Corner-wrapped edges count only as corner.
inline WrapCounts wrapping_counts(const TorusLayout& layout, const Graph& g) {
  WrapCounts c;
  for (const Edge& e : g.edges()) {
    const auto w = minimum_image(layout.positions[e.source], layout.positions[e.target], layout.cell_size).offset;
    if (w.dx != 0 && w.dy != 0) ++c.corner;
    else if (w.dx != 0) ++c.lr;
    else if (w.dy != 0) ++c.tb;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Cluster distance

inline std::vector<std::vector<Vec2>> cluster_points(const FlatLayout& layout, const Clustering& c) {
  std::vector<std::vector<Vec2>> out(c.cluster_count());
  for (std::size_t v = 0; v < layout.positions.size(); ++v)
    out[static_cast<std::size_t>(c[static_cast<NodeId>(v)])].push_back(layout.positions[v]);
  return out;
}

// Torus: the first member of each cluster stays in the centre cell; every
// later member takes the tile copy nearest the running centroid of the
// members placed so far.
inline std::vector<std::vector<Vec2>> cluster_points(const TorusLayout& layout, const Clustering& c) {
  const double cell = layout.cell_size;
  std::vector<std::vector<Vec2>> out;
  for (const auto& members : c.members()) {
    std::vector<Vec2> pts;
    Vec2 sum{};
    for (NodeId v : members) {
      const Vec2 p = layout.positions[v];
      if (pts.empty()) {
        pts.push_back(p);
        sum = p;
        continue;
      }
      const Vec2 centroid = (1.0 / static_cast<double>(pts.size())) * sum;
      Vec2 best = p;
      double best_d = std::numeric_limits<double>::infinity();
      for (const WrapChoice& w : kWrapChoices) {
        const Vec2 q{p.x + w.dx * cell, p.y + w.dy * cell};
        const double d = norm2(q - centroid);
        if (d < best_d) {
          best_d = d;
          best = q;
        }
      }
      pts.push_back(best);
      sum += best;
    }
    out.push_back(std::move(pts));
  }
  return out;
}

inline double cluster_distance_from_points(const std::vector<std::vector<Vec2>>& clusters) {
  if (clusters.size() < 2) throw InvalidInput("cluster distance needs at least two clusters");
  std::vector<std::vector<Vec2>> hulls;
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    const auto& pts = clusters[k];
    if (pts.empty()) throw InvalidInput("empty cluster");
    if (pts.size() > 1 && std::all_of(pts.begin(), pts.end(), [&](Vec2 p) { return p == pts[0]; }))
      throw DegenerateHull(static_cast<int>(k));
    hulls.push_back(convex_hull(pts));
  }
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < hulls.size(); ++i) {
    for (std::size_t j = i + 1; j < hulls.size(); ++j) {
      total += signed_hull_distance(hulls[i], hulls[j]);
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

template <typename LayoutT>
double cluster_distance(const LayoutT& layout, const Graph& g, const Clustering& c) {
  if (c.node_count() != g.node_count()) throw InvalidInput("clustering size mismatch");
  return cluster_distance_from_points(cluster_points(layout, c));
}

// ---------------------------------------------------------------------------

struct MetricsReport {
  double stress = 0.0;
  long long crossings = 0;
  double link_length_variance = 0.0;
  double angle_deviation = 0.0;
  std::optional<WrapCounts> wrapping;
  std::optional<double> cluster_distance;
};

inline MetricsReport compute_metrics(const FlatLayout& layout, const Graph& g, const DistanceMatrix& dm,
                                     const Clustering* clustering = nullptr) {
  MetricsReport r;
  r.stress = stress(layout, dm);
  r.crossings = crossings(layout, g);
  r.link_length_variance = link_length_variance(layout, g);
  r.angle_deviation = incidence_angle_deviation(layout, g);
  if (clustering && clustering->cluster_count() >= 2) r.cluster_distance = cluster_distance(layout, g, *clustering);
  return r;
}

inline MetricsReport compute_metrics(const TorusLayout& layout, const Graph& g, const DistanceMatrix& dm,
                                     const Clustering* clustering = nullptr) {
  MetricsReport r;
  r.stress = stress(layout, dm);
  r.crossings = crossings(layout, g);
  r.link_length_variance = link_length_variance(layout, g);
  r.angle_deviation = incidence_angle_deviation(layout, g);
  r.wrapping = wrapping_counts(layout, g);
  if (clustering && clustering->cluster_count() >= 2) r.cluster_distance = cluster_distance(layout, g, *clustering);
  return r;
}

}  // namespace wraplay
