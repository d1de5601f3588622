#pragma once

// Projected great-circle edge paths and the monochrome edge mask. The SVG
// renderer and the boundary-pixel auto-rotation both go through
// projected_edge_paths(), so what is drawn is exactly what is scored.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "wraplay/errors.hpp"
#include "wraplay/geometry.hpp"
#include "wraplay/graph.hpp"
#include "wraplay/layout.hpp"
#include "wraplay/projection.hpp"

namespace wraplay {

inline constexpr int kGreatCircleSegments = 64;

// Point at fraction t along the shorter great-circle arc a -> b. Antipodal
// endpoints take a fixed deterministic plane through a.
inline Vec3 great_circle_point(Vec3 a, Vec3 b, double t) {
  const double theta = arc_length(a, b);
  if (theta < 1e-12) return a;
  Vec3 axis = cross(a, b);
  if (norm(axis) < 1e-12) {
    const Vec3 e = std::abs(a.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    axis = cross(a, e);
  }
  axis = normalized(axis);
  const Vec3 ortho = cross(axis, a);
  return normalized(std::cos(t * theta) * a + std::sin(t * theta) * ortho);
}

using PixelPath = std::vector<Vec2>;

namespace detail {

template <typename SideFn>
double bisect_side_change(Vec3 a, Vec3 b, double t0, double t1, SideFn side) {
  const bool s0 = side(great_circle_point(a, b, t0));
  for (int i = 0; i < 40; ++i) {
    const double mid = 0.5 * (t0 + t1);
    if (side(great_circle_point(a, b, mid)) == s0) t0 = mid; else t1 = mid;
  }
  return 0.5 * (t0 + t1);
}

}  // namespace detail

// Pixel-space polylines for one edge (already rotated endpoints). An edge is
// cut where it crosses the antimeridian (Equal Earth) or the terminator
// (hemisphere discs), so one edge can yield several paths.
inline std::vector<PixelPath> project_edge_path(Vec3 a, Vec3 b, ProjectionTag tag, const ScreenFrame& frame,
                                                int segments = kGreatCircleSegments) {
  std::vector<PixelPath> out;
  PixelPath current;
  if (tag == ProjectionTag::EqualEarth) {
    auto to_px = [&](Vec3 p, double forced_lon_sign = 0.0) {
      LonLat g = to_lon_lat(p);
      if (forced_lon_sign != 0.0) g.lon = forced_lon_sign * kPi;
      return frame.to_pixel(project_equal_earth(g.lon, g.lat), frame.centre);
    };
    Vec3 prev = a;
    current.push_back(to_px(a));
    for (int i = 1; i <= segments; ++i) {
      const double t = static_cast<double>(i) / segments;
      const Vec3 p = great_circle_point(a, b, t);
      const double lon_prev = to_lon_lat(prev).lon, lon_p = to_lon_lat(p).lon;
      if (std::abs(lon_p - lon_prev) > kPi && (prev.x < 0.0 || p.x < 0.0)) {
        const double tc = detail::bisect_side_change(a, b, static_cast<double>(i - 1) / segments, t,
                                                     [](Vec3 q) { return q.y >= 0.0; });
        const Vec3 c = great_circle_point(a, b, tc);
        current.push_back(to_px(c, lon_prev < 0.0 ? -1.0 : 1.0));
        out.push_back(std::move(current));
        current = {to_px(c, lon_p < 0.0 ? -1.0 : 1.0)};
      }
      current.push_back(to_px(p));
      prev = p;
    }
  } else {
    auto to_px = [&](Vec3 q, HemisphereFace face) {
      const double u = face == HemisphereFace::East ? q.y : -q.y;
      return frame.to_pixel({u, q.z}, face == HemisphereFace::East ? frame.east_centre : frame.west_centre);
    };
    auto face_of = [](Vec3 q) { return q.x >= 0.0 ? HemisphereFace::East : HemisphereFace::West; };
    Vec3 prev = a;
    current.push_back(to_px(a, face_of(a)));
    for (int i = 1; i <= segments; ++i) {
      const double t = static_cast<double>(i) / segments;
      const Vec3 p = great_circle_point(a, b, t);
      if (face_of(p) != face_of(prev)) {
        const double tc = detail::bisect_side_change(a, b, static_cast<double>(i - 1) / segments, t,
                                                     [](Vec3 q) { return q.x >= 0.0; });
        Vec3 c = great_circle_point(a, b, tc);
        c.x = 0.0;
        current.push_back(to_px(c, face_of(prev)));
        out.push_back(std::move(current));
        current = {to_px(c, face_of(p))};
      }
      current.push_back(to_px(p, face_of(p)));
      prev = p;
    }
  }
  out.push_back(std::move(current));
  return out;
}

inline std::vector<PixelPath> projected_edge_paths(const SphereLayout& layout, const Graph& g,
                                                   const ProjectionKind& kind, const ScreenFrame& frame) {
  std::vector<PixelPath> out;
  for (const Edge& e : g.edges()) {
    const Vec3 a = rotate(layout.positions[e.source], kind.rotation);
    const Vec3 b = rotate(layout.positions[e.target], kind.rotation);
    for (auto& path : project_edge_path(a, b, kind.tag, frame)) out.push_back(std::move(path));
  }
  return out;
}

// ---------------------------------------------------------------------------

class EdgeMask {
 public:
  EdgeMask(int width, int height, int border_band = 6)
      : width_(width), height_(height), border_band_(border_band),
        bits_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0) {
    if (width <= 0 || height <= 0) throw InvalidInput("mask dimensions must be positive");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  int border_band() const { return border_band_; }

  bool get(int x, int y) const { return bits_[index(x, y)] != 0; }
  void set(int x, int y, bool on = true) { bits_[index(x, y)] = on ? 1 : 0; }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto b : bits_) n += b;
    return n;
  }

  // Set pixels that are also set in `region`.
  std::size_t count_within(const EdgeMask& region) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < bits_.size(); ++i) n += bits_[i] & region.bits_[i];
    return n;
  }

  const std::vector<std::uint8_t>& bits() const { return bits_; }

  // Binary PBM (P4), rows packed MSB first and padded to whole bytes.
  std::string to_pbm() const {
    std::string out = "P4\n" + std::to_string(width_) + " " + std::to_string(height_) + "\n";
    const int row_bytes = (width_ + 7) / 8;
    for (int y = 0; y < height_; ++y) {
      for (int bx = 0; bx < row_bytes; ++bx) {
        unsigned char byte = 0;
        for (int bit = 0; bit < 8; ++bit) {
          const int x = bx * 8 + bit;
          if (x < width_ && get(x, y)) byte |= static_cast<unsigned char>(0x80u >> bit);
        }
        out.push_back(static_cast<char>(byte));
      }
    }
    return out;
  }

  friend bool operator==(const EdgeMask&, const EdgeMask&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_, height_, border_band_;
  std::vector<std::uint8_t> bits_;
};

inline void draw_line(EdgeMask& mask, Vec2 from, Vec2 to) {
  auto clamp_px = [](double v, int limit) {
    return std::clamp(static_cast<int>(std::floor(v)), 0, limit - 1);
  };
  int x0 = clamp_px(from.x, mask.width()), y0 = clamp_px(from.y, mask.height());
  const int x1 = clamp_px(to.x, mask.width()), y1 = clamp_px(to.y, mask.height());
  const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
  const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  for (;;) {
    mask.set(x0, y0);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) { err += dy; x0 += sx; }
    if (e2 <= dx) { err += dx; y0 += sy; }
  }
}

inline EdgeMask rasterize_edges_mask(const SphereLayout& layout, const Graph& g, const ProjectionKind& kind,
                                     int width, int height, int border_band = 6) {
  if (width < 64) throw RasterTooSmall();
  EdgeMask mask(width, height, border_band);
  const ScreenFrame frame = make_frame(kind.tag, width, height);
  for (const auto& path : projected_edge_paths(layout, g, kind, frame))
    for (std::size_t i = 0; i + 1 < path.size(); ++i) draw_line(mask, path[i], path[i + 1]);
  return mask;
}

// Pixels inside the projection outline and within `band` pixels of it.
inline EdgeMask border_band_mask(ProjectionTag tag, int width, int height, int band) {
  if (width < 64) throw RasterTooSmall();
  if (band <= 0 || 2 * band >= std::min(width, height)) throw InvalidInput("border band out of range");
  EdgeMask region(width, height, band);
  const ScreenFrame frame = make_frame(tag, width, height);
  if (tag == ProjectionTag::OrthographicHemisphere) {
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const Vec2 p{x + 0.5, y + 0.5};
        for (Vec2 c : {frame.west_centre, frame.east_centre}) {
          const double r = norm(p - c);
          if (r <= frame.disc_radius && frame.disc_radius - r <= band) region.set(x, y);
        }
      }
    }
    return region;
  }
  // Equal Earth: right half of the outline as a pixel polyline; the left half
  // and the flat top/bottom follow by symmetry.
  std::vector<Vec2> curve;
  constexpr int kSamples = 512;
  for (int i = 0; i <= kSamples; ++i) {
    const double t = -kPi / 3.0 + 2.0 * kPi / 3.0 * i / kSamples;
    curve.push_back({kPi * equal_earth::x_scale_of_theta(t) * frame.scale, equal_earth::y_of_theta(t) * frame.scale});
  }
  const double ymax_px = equal_earth::y_max() * frame.scale;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Vec2 p{std::abs(x + 0.5 - frame.centre.x), frame.centre.y - (y + 0.5)};
      if (std::abs(p.y) > ymax_px) continue;
      const double half = equal_earth::half_width_at(p.y / frame.scale) * frame.scale;
      if (p.x > half) continue;
      double dist = ymax_px - std::abs(p.y);
      if (half - p.x <= 3.0 * band) {
        for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
          const Vec2 a = curve[i], ab = curve[i + 1] - curve[i];
          const double t = std::clamp(dot(p - a, ab) / norm2(ab), 0.0, 1.0);
          dist = std::min(dist, norm(p - (a + t * ab)));
        }
      }
      if (dist <= band) region.set(x, y);
    }
  }
  return region;
}

}  // namespace wraplay
