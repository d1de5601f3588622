#pragma once

// Cartographic projections for sphere layouts, plus the pixel mapping used by
// both the SVG renderer and the edge rasterizer.
//
// Equal Earth (Savric, Patterson & Jenny 2018):
//   sin(theta) = (sqrt(3)/2) sin(lat)
//   x = 2 sqrt(3) lon cos(theta) / (3 (9 A4 theta^8 + 7 A3 theta^6 + 3 A2 theta^2 + A1))
//   y = A4 theta^9 + A3 theta^7 + A2 theta^3 + A1 theta
//   A1 = 1.340264, A2 = -0.081106, A3 = 0.000893, A4 = 0.003796
//
// Orthographic hemispheres: after the view rotation, the +x axis points at
// the centre of the "east" disc and -x at the centre of the "west" disc. The
// west disc is mirrored so both read as seen from outside the sphere.

#include <algorithm>
#include <cmath>
#include <vector>

#include "wraplay/geometry.hpp"

namespace wraplay {

enum class ProjectionTag { EqualEarth, OrthographicHemisphere };

inline const char* to_string(ProjectionTag t) {
  return t == ProjectionTag::EqualEarth ? "equal-earth" : "orthographic-hemisphere";
}

struct ProjectionKind {
  ProjectionTag tag = ProjectionTag::EqualEarth;
  RotationTriple rotation;
};

struct LonLat {
  double lon = 0.0, lat = 0.0;
};

inline LonLat to_lon_lat(Vec3 p) {
  return {std::atan2(p.y, p.x), std::asin(std::clamp(p.z, -1.0, 1.0))};
}

inline Vec3 from_lon_lat(LonLat g) {
  return {std::cos(g.lat) * std::cos(g.lon), std::cos(g.lat) * std::sin(g.lon), std::sin(g.lat)};
}

namespace equal_earth {

inline constexpr double A1 = 1.340264;
inline constexpr double A2 = -0.081106;
inline constexpr double A3 = 0.000893;
inline constexpr double A4 = 0.003796;

inline double y_of_theta(double t) {
  const double t2 = t * t, t6 = t2 * t2 * t2;
  return t * (A1 + A2 * t2 + t6 * (A3 + A4 * t2));
}

inline double x_scale_of_theta(double t) {
  const double t2 = t * t, t6 = t2 * t2 * t2;
  return 2.0 * std::sqrt(3.0) * std::cos(t) / (3.0 * (A1 + 3.0 * A2 * t2 + t6 * (7.0 * A3 + 9.0 * A4 * t2)));
}

inline double theta_of_lat(double lat) { return std::asin(std::sqrt(3.0) / 2.0 * std::sin(lat)); }

// Inverse of y_of_theta on [0, pi/3] by bisection.
inline double theta_of_y(double y) {
  const double sign = y < 0.0 ? -1.0 : 1.0;
  double lo = 0.0, hi = kPi / 3.0;
  const double target = std::abs(y);
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (y_of_theta(mid) < target) lo = mid; else hi = mid;
  }
  return sign * 0.5 * (lo + hi);
}

inline double x_max() { return kPi * x_scale_of_theta(0.0); }
inline double y_max() { return y_of_theta(kPi / 3.0); }

// Half-width of the outline at height y.
inline double half_width_at(double y) { return kPi * x_scale_of_theta(theta_of_y(std::min(std::abs(y), y_max()))); }

}  // namespace equal_earth

inline Vec2 project_equal_earth(double lon, double lat) {
  const double t = equal_earth::theta_of_lat(lat);
  return {lon * equal_earth::x_scale_of_theta(t), equal_earth::y_of_theta(t)};
}

enum class HemisphereFace { West, East };

struct HemispherePoint {
  HemisphereFace face = HemisphereFace::East;
  double u = 0.0, v = 0.0;
};

inline HemispherePoint project_orthographic_hemisphere(Vec3 p, const RotationTriple& r) {
  const Vec3 q = rotate(p, r);
  if (q.x >= 0.0) return {HemisphereFace::East, q.y, q.z};
  return {HemisphereFace::West, -q.y, q.z};
}

// Rotated vector recovered from a disc point.
inline Vec3 unproject_orthographic_hemisphere(const HemispherePoint& h) {
  const double depth = std::sqrt(std::max(0.0, 1.0 - h.u * h.u - h.v * h.v));
  if (h.face == HemisphereFace::East) return {depth, h.u, h.v};
  return {-depth, -h.u, h.v};
}

// Projected-units to pixel mapping for a viewport.
struct ScreenFrame {
  double width = 900.0, height = 317.0;
  double scale = 1.0;
  Vec2 centre;               // equal earth
  Vec2 west_centre, east_centre;  // orthographic discs
  double disc_radius = 1.0;

  Vec2 to_pixel(Vec2 p, Vec2 origin) const { return {origin.x + p.x * scale, origin.y - p.y * scale}; }
};

inline ScreenFrame make_frame(ProjectionTag tag, double width, double height, double margin = 2.0) {
  ScreenFrame f;
  f.width = width;
  f.height = height;
  f.centre = {width / 2.0, height / 2.0};
  if (tag == ProjectionTag::EqualEarth) {
    f.scale = std::min((width - 2 * margin) / (2 * equal_earth::x_max()), (height - 2 * margin) / (2 * equal_earth::y_max()));
  } else {
    f.scale = std::min((width - 2 * margin) / 4.0, (height - 2 * margin) / 2.0);
    f.west_centre = {width / 4.0, height / 2.0};
    f.east_centre = {3.0 * width / 4.0, height / 2.0};
  }
  f.disc_radius = f.scale;
  return f;
}

}  // namespace wraplay
