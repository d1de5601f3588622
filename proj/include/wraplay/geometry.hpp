#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace wraplay {

struct Vec2 {
  double x = 0.0, y = 0.0;

  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double norm2(Vec2 a) { return dot(a, a); }

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(Vec3 a) { return (1.0 / norm(a)) * a; }

// Angle between unit vectors, clamped against rounding outside [-1, 1].
inline double arc_length(Vec3 a, Vec3 b) {
  return std::acos(std::clamp(dot(a, b), -1.0, 1.0));
}

// Reduce into [0, cell).
inline double wrap_coordinate(double v, double cell) {
  double r = v - cell * std::floor(v / cell);
  if (r >= cell || r < 0.0) r = 0.0;
  return r;
}

inline Vec2 wrap_point(Vec2 p, double cell) { return {wrap_coordinate(p.x, cell), wrap_coordinate(p.y, cell)}; }

// One of the nine tile adjacencies of the 3x3 tiling.
struct WrapChoice {
  int dx = 0, dy = 0;
  friend bool operator==(const WrapChoice&, const WrapChoice&) = default;
};

// Scan order (dy, dx) lexicographic, which is also the tie-break order.
inline constexpr std::array<WrapChoice, 9> kWrapChoices{{
    {-1, -1}, {0, -1}, {1, -1},
    {-1, 0},  {0, 0},  {1, 0},
    {-1, 1},  {0, 1},  {1, 1},
}};

struct Wrapping {
  WrapChoice offset;
  Vec2 vector;  // from u to the chosen copy of v
  double distance = 0.0;
};

// Copy of v (among nine) whose distance to u is closest to `ideal`.
// ideal = 0 gives the minimum-image convention.
inline Wrapping best_wrapping(Vec2 xu, Vec2 xv, double cell, double ideal = 0.0) {
  Wrapping best;
  double best_residual = std::numeric_limits<double>::infinity();
  for (const WrapChoice& w : kWrapChoices) {
    const Vec2 vec{xv.x + w.dx * cell - xu.x, xv.y + w.dy * cell - xu.y};
    const double d = norm(vec);
    const double r = (d - ideal) * (d - ideal);
    if (r < best_residual) {
      best_residual = r;
      best = {w, vec, d};
    }
  }
  return best;
}

inline Wrapping minimum_image(Vec2 xu, Vec2 xv, double cell) { return best_wrapping(xu, xv, cell, 0.0); }

inline constexpr double kPi = 3.14159265358979323846;

// Reduce into [-pi, pi).
inline double reduce_angle(double a) {
  double r = std::fmod(a + kPi, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  r -= kPi;
  if (r >= kPi) r -= 2.0 * kPi;
  return r;
}

// Three-axis view rotation (lambda about z, then phi about y, then gamma about
// the x view axis). Same composition order as d3-geo's geoRotation.
struct RotationTriple {
  double lambda = 0.0, phi = 0.0, gamma = 0.0;

  RotationTriple normalized() const { return {reduce_angle(lambda), reduce_angle(phi), reduce_angle(gamma)}; }
  friend bool operator==(const RotationTriple&, const RotationTriple&) = default;
};

inline Vec3 rotate(Vec3 p, const RotationTriple& r) {
  const double cl = std::cos(r.lambda), sl = std::sin(r.lambda);
  const Vec3 a{cl * p.x - sl * p.y, sl * p.x + cl * p.y, p.z};
  const double cp = std::cos(r.phi), sp = std::sin(r.phi);
  const Vec3 b{cp * a.x + sp * a.z, a.y, -sp * a.x + cp * a.z};
  const double cg = std::cos(r.gamma), sg = std::sin(r.gamma);
  return {b.x, cg * b.y - sg * b.z, sg * b.y + cg * b.z};
}

}  // namespace wraplay
