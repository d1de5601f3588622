#pragma once

// 2-D convex hulls, GJK separation distance and EPA penetration depth.
// Both work on the Minkowski difference A - B through support functions only.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "wraplay/geometry.hpp"

namespace wraplay {

// Andrew's monotone chain. Counter-clockwise, no repeated or collinear
// vertices. Degenerate inputs give a point (size 1) or a segment (size 2).
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

inline Vec2 support(std::span<const Vec2> poly, Vec2 dir) {
  Vec2 best = poly[0];
  double best_dot = dot(best, dir);
  for (const Vec2& p : poly.subspan(1)) {
    const double d = dot(p, dir);
    if (d > best_dot) {
      best_dot = d;
      best = p;
    }
  }
  return best;
}

// Support of A - B.
inline Vec2 minkowski_support(std::span<const Vec2> a, std::span<const Vec2> b, Vec2 dir) {
  return support(a, dir) - support(b, -dir);
}

struct GjkResult {
  bool intersecting = false;
  double distance = 0.0;
  std::vector<Vec2> simplex;  // final simplex in A - B
};

namespace detail {

struct SimplexClosest {
  Vec2 point;
  std::vector<Vec2> subset;
  bool contains_origin = false;
};

inline SimplexClosest closest_on_segment(Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = norm2(ab);
  if (len2 == 0.0) return {a, {a}};
  const double t = std::clamp(-dot(a, ab) / len2, 0.0, 1.0);
  if (t == 0.0) return {a, {a}};
  if (t == 1.0) return {b, {b}};
  return {a + t * ab, {a, b}};
}

// Closest point of a simplex (1-3 points) to the origin, with the minimal
// supporting subset.
inline SimplexClosest closest_on_simplex(const std::vector<Vec2>& s) {
  if (s.size() == 1) return {s[0], {s[0]}};
  if (s.size() == 2) return closest_on_segment(s[0], s[1]);
  const Vec2 a = s[0], b = s[1], c = s[2];
  const double area = cross(b - a, c - a);
  if (area != 0.0) {
    const double w0 = cross(b, c) / area;
    const double w1 = cross(c, a) / area;
    const double w2 = cross(a, b) / area;
    if (w0 >= 0.0 && w1 >= 0.0 && w2 >= 0.0) return {{0.0, 0.0}, s, true};
  }
  SimplexClosest best = closest_on_segment(a, b);
  for (const auto& cand : {closest_on_segment(b, c), closest_on_segment(c, a)})
    if (norm2(cand.point) < norm2(best.point)) best = cand;
  return best;
}

}  // namespace detail

inline GjkResult gjk(std::span<const Vec2> a, std::span<const Vec2> b) {
  GjkResult out;
  std::vector<Vec2> simplex{a[0] - b[0]};
  Vec2 v = simplex[0];
  for (int iter = 0; iter < 128; ++iter) {
    const double vv = norm2(v);
    if (vv <= 1e-24) {
      out.intersecting = true;
      out.simplex = simplex;
      return out;
    }
    const Vec2 w = minkowski_support(a, b, -v);
    if (vv - dot(v, w) <= 1e-12 * vv ||
        std::find(simplex.begin(), simplex.end(), w) != simplex.end()) {
      out.distance = std::sqrt(vv);
      out.simplex = simplex;
      return out;
    }
    simplex.push_back(w);
    auto closest = detail::closest_on_simplex(simplex);
    simplex = closest.subset;
    if (closest.contains_origin) {
      out.intersecting = true;
      out.simplex = simplex;
      return out;
    }
    v = closest.point;
  }
  out.distance = norm(v);
  out.simplex = simplex;
  return out;
}

// Penetration depth of overlapping convex polygons: the distance from the
// origin to the boundary of A - B, found by expanding the GJK simplex.
// Zero when A - B has no area (touching points or collinear segments).
inline double epa_depth(std::span<const Vec2> a, std::span<const Vec2> b, std::vector<Vec2> simplex) {
  // seed with a few axis and diagonal supports so point and segment simplices
  // still start from a polygon with area
  for (const Vec2 d : {Vec2{1, 0}, Vec2{0, 1}, Vec2{-1, 0}, Vec2{0, -1}, Vec2{1, 1}, Vec2{-1, 1}, Vec2{-1, -1},
                       Vec2{1, -1}})
    simplex.push_back(minkowski_support(a, b, d));
  std::vector<Vec2> poly = convex_hull(std::move(simplex));
  if (poly.size() < 3) return 0.0;

  double best = 0.0;
  for (int iter = 0; iter < 256; ++iter) {
    double edge_dist = std::numeric_limits<double>::infinity();
    Vec2 edge_normal;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Vec2 p = poly[i], q = poly[(i + 1) % poly.size()];
      const Vec2 e = q - p;
      const double len = norm(e);
      if (len == 0.0) continue;
      const Vec2 n{e.y / len, -e.x / len};  // outward for CCW
      const double d = dot(n, p);
      if (d < edge_dist) {
        edge_dist = d;
        edge_normal = n;
      }
    }
    best = std::max(0.0, edge_dist);
    const Vec2 s = minkowski_support(a, b, edge_normal);
    if (dot(s, edge_normal) - edge_dist <= 1e-12) return best;
    if (std::find(poly.begin(), poly.end(), s) != poly.end()) return best;
    poly.push_back(s);
    poly = convex_hull(std::move(poly));
  }
  return best;
}

// Positive separation when disjoint, negative penetration depth otherwise.
inline double signed_hull_distance(std::span<const Vec2> a, std::span<const Vec2> b) {
  const GjkResult g = gjk(a, b);
  if (!g.intersecting) return g.distance;
  return -epa_depth(a, b, g.simplex);
}

}  // namespace wraplay
