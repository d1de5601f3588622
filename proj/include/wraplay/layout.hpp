#pragma once

// Stress-minimising layouts on the flat plane, the flat torus (one unit cell
// of a 3x3 periodic tiling) and the unit sphere.
//
// Pairwise: stochastic pairwise descent. Each iteration visits every
// unordered pair once in a fresh random order and moves both endpoints
// symmetrically by eta(t) * (d - ideal) / 2 along the line joining them. On
// the torus the line goes to whichever of the nine tile copies of v has the
// distance closest to the ideal, and both nodes are wrapped back into the
// centre cell after each move.
//
// All-Pairs: full gradient descent on the same stress, with the step length
// taken from the quadratic model g.g / g.H.g.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wraplay/errors.hpp"
#include "wraplay/geometry.hpp"
#include "wraplay/graph.hpp"
#include "wraplay/rng.hpp"

namespace wraplay {

enum class Topology { Flat, Torus, Sphere };

inline const char* to_string(Topology t) {
  switch (t) {
    case Topology::Flat: return "flat";
    case Topology::Torus: return "torus";
    case Topology::Sphere: return "sphere";
  }
  return "flat";
}

struct LayoutParams {
  double cell_size = 1.0;
  int tau = 80;
  double epsilon_exp = 0.1;
  double epsilon_conv = 0.001;
  double delta_stop = 0.03;
  int tau_max = 200;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(cell_size > 0.0)) throw InvalidInput("cell_size must be positive");
    if (!(tau > 0 && tau < tau_max)) throw InvalidInput("need 0 < tau < tau_max");
    if (!(epsilon_exp > 0.0 && epsilon_exp < 1.0)) throw InvalidInput("epsilon_exp must lie in (0, 1)");
    if (!(epsilon_conv > 0.0 && epsilon_conv < 1.0)) throw InvalidInput("epsilon_conv must lie in (0, 1)");
    if (!(delta_stop > 0.0)) throw InvalidInput("delta_stop must be positive");
  }
};

struct FlatLayout {
  std::vector<Vec2> positions;
  double ideal_unit = 1.0;
  bool converged = false;
  int iterations = 0;
};

struct TorusLayout {
  std::vector<Vec2> positions;  // all inside [0, cell_size)^2
  double cell_size = 1.0;
  double ideal_unit = 1.0;
  bool converged = false;
  int iterations = 0;
};

struct SphereLayout {
  std::vector<Vec3> positions;  // unit vectors
  RotationTriple view_rotation;
  bool converged = false;
  int iterations = 0;
};

// Ideal link length. min(diameter, 2) is intentional: it caps at cell/3.
inline double ideal_unit(const DistanceMatrix& dm, const LayoutParams& p) {
  return p.cell_size / (std::min(dm.diameter(), 2) + 1);
}

// Sphere counterpart: arc per graph-distance unit, so the diameter spans pi.
inline double sphere_ideal_unit(const DistanceMatrix& dm) { return kPi / std::max(1, dm.diameter()); }

// Two-phase step-size cap: exponential decay until tau, then 1/(1 + lambda2 t).
// lambda  : D_max^2 e^{-lambda tau} = D_min^2 eps_exp
// lambda2 : the phase-2 cap for a D_min pair equals eps_conv at t = tau_max
class AnnealingSchedule {
 public:
  AnnealingSchedule(const DistanceMatrix& dm, const LayoutParams& p)
      : d_max2_(static_cast<double>(dm.d_max()) * dm.d_max()),
        d_min2_(static_cast<double>(dm.d_min()) * dm.d_min()),
        tau_(p.tau) {
    if (d_min2_ <= 0.0) d_min2_ = d_max2_ = 1.0;
    lambda_exp_ = std::log(d_max2_ / (d_min2_ * p.epsilon_exp)) / p.tau;
    lambda_conv_ = (1.0 / p.epsilon_conv - 1.0) / p.tau_max;
  }

  double eta(int t, double d_uv) const {
    const double inv = 1.0 / (d_uv * d_uv);
    if (t <= tau_) return std::min(1.0, d_max2_ * inv * std::exp(-lambda_exp_ * t));
    return std::min(1.0, d_min2_ * inv / (1.0 + lambda_conv_ * t));
  }

  double lambda_exp() const { return lambda_exp_; }
  double lambda_conv() const { return lambda_conv_; }

 private:
  double d_max2_, d_min2_;
  int tau_;
  double lambda_exp_ = 0.0, lambda_conv_ = 0.0;
};

inline double annealing_eta(int t, double d_uv, const DistanceMatrix& dm, const LayoutParams& p) {
  return AnnealingSchedule(dm, p).eta(t, d_uv);
}

namespace detail {

struct NodePair {
  NodeId u, v;
};

inline std::vector<NodePair> all_pairs(std::size_t n) {
  std::vector<NodePair> out;
  out.reserve(n * (n - 1) / 2);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) out.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
  return out;
}

inline Vec2 random_direction(Rng& rng) {
  const double a = rng.uniform(0.0, 2.0 * kPi);
  return {std::cos(a), std::sin(a)};
}

inline Vec3 random_unit_vector(Rng& rng) {
  const double z = rng.uniform(-1.0, 1.0);
  const double a = rng.uniform(0.0, 2.0 * kPi);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(a), r * std::sin(a), z};
}

inline std::vector<Vec2> centre_start(std::size_t n, double cell, Rng& rng) {
  std::vector<Vec2> x(n);
  const double jitter = 1e-3 * cell;
  for (auto& p : x) p = {0.5 * cell + jitter * rng.uniform(-1.0, 1.0), 0.5 * cell + jitter * rng.uniform(-1.0, 1.0)};
  return x;
}

struct PlanarRun {
  std::vector<Vec2> positions;
  bool converged = false;
  int iterations = 0;
};

inline PlanarRun pairwise_planar(const Graph& g, const DistanceMatrix& dm, const LayoutParams& p, double L,
                                 bool wrapped) {
  Rng rng(p.seed);
  PlanarRun run;
  run.positions = centre_start(g.node_count(), p.cell_size, rng);
  auto& x = run.positions;
  if (g.node_count() < 2) {
    run.converged = true;
    return run;
  }
  const AnnealingSchedule schedule(dm, p);
  auto pairs = all_pairs(g.node_count());
  const double cell = p.cell_size;

  for (int t = 0; t < p.tau_max; ++t) {
    rng.shuffle(std::span<NodePair>(pairs));
    double max_move = 0.0;
    for (const auto [u, v] : pairs) {
      const double d_uv = dm(u, v);
      const double ideal = L * d_uv;
      Vec2 vec;
      double d;
      if (wrapped) {
        const Wrapping w = best_wrapping(x[u], x[v], cell, ideal);
        vec = w.vector;
        d = w.distance;
      } else {
        vec = x[v] - x[u];
        d = norm(vec);
      }
      const Vec2 dir = d < 1e-12 ? random_direction(rng) : (1.0 / d) * vec;
      const double move = schedule.eta(t, d_uv) * (d - ideal) / 2.0;
      x[u] += move * dir;
      x[v] -= move * dir;
      if (wrapped) {
        x[u] = wrap_point(x[u], cell);
        x[v] = wrap_point(x[v], cell);
      }
      max_move = std::max(max_move, std::abs(move));
    }
    run.iterations = t + 1;
    if (max_move < p.delta_stop * cell) {
      run.converged = true;
      break;
    }
  }
  return run;
}

inline PlanarRun allpairs_planar(const Graph& g, const DistanceMatrix& dm, const LayoutParams& p, double L,
                                 bool wrapped) {
  Rng rng(p.seed);
  PlanarRun run;
  run.positions = centre_start(g.node_count(), p.cell_size, rng);
  auto& x = run.positions;
  const std::size_t n = g.node_count();
  if (n < 2) {
    run.converged = true;
    return run;
  }
  const double cell = p.cell_size;
  const auto pairs = all_pairs(n);
  std::vector<Vec2> grad(n);
  std::vector<Vec2> curvature(pairs.size());
  // Per-iteration displacement cap; the quadratic model is unreliable near
  // the collapsed start where most pair Hessians are indefinite.
  const double max_step = 0.5 * L;

  for (int t = 0; t < p.tau_max; ++t) {
    std::fill(grad.begin(), grad.end(), Vec2{});
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto [u, v] = pairs[k];
      const double ideal = L * dm(u, v);
      const double w = 1.0 / (ideal * ideal);
      Vec2 vec = wrapped ? best_wrapping(x[u], x[v], cell, ideal).vector : x[v] - x[u];
      double l = norm(vec);
      if (l < 1e-12) {
        vec = 1e-9 * random_direction(rng);
        l = norm(vec);
      }
      const Vec2 diff = -vec;  // x_u - x_v
      const Vec2 gu = (2.0 * w * (l - ideal) / l) * diff;
      grad[u] += gu;
      grad[v] -= gu;
      const double l2 = l * l, l3 = l2 * l;
      const double scale = 2.0 * w / l3;
      curvature[k] = {std::max(0.0, scale * (l3 + ideal * (diff.x * diff.x - l2))),
                      std::max(0.0, scale * (l3 + ideal * (diff.y * diff.y - l2)))};
    }
    double gg = 0.0, gmax = 0.0;
    for (const Vec2& gu : grad) {
      gg += norm2(gu);
      gmax = std::max(gmax, norm(gu));
    }
    run.iterations = t + 1;
    if (gmax == 0.0) {
      run.converged = true;
      break;
    }
    double ghg = 0.0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const Vec2 dg = grad[pairs[k].u] - grad[pairs[k].v];
      ghg += curvature[k].x * dg.x * dg.x + curvature[k].y * dg.y * dg.y;
    }
    double alpha = ghg > 0.0 && std::isfinite(ghg) ? gg / ghg : max_step / gmax;
    alpha = std::min(alpha, max_step / gmax);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] -= alpha * grad[i];
      if (wrapped) x[i] = wrap_point(x[i], cell);
    }
    if (alpha * gmax < p.delta_stop * cell) {
      run.converged = true;
      break;
    }
  }
  return run;
}

}  // namespace detail

inline TorusLayout layout_torus_pairwise(const Graph& g, const DistanceMatrix& dm, const LayoutParams& p) {
  p.validate();
  const double L = ideal_unit(dm, p);
  auto run = detail::pairwise_planar(g, dm, p, L, true);
  return {std::move(run.positions), p.cell_size, L, run.converged, run.iterations};
}

inline TorusLayout layout_torus_allpairs(const Graph& g, const DistanceMatrix& dm, const LayoutParams& p) {
  p.validate();
  const double L = ideal_unit(dm, p);
  auto run = detail::allpairs_planar(g, dm, p, L, true);
  return {std::move(run.positions), p.cell_size, L, run.converged, run.iterations};
}

inline FlatLayout layout_flat(const Graph& g, const DistanceMatrix& dm, const LayoutParams& p) {
  p.validate();
  const double L = ideal_unit(dm, p);
  auto run = detail::pairwise_planar(g, dm, p, L, false);
  return {std::move(run.positions), L, run.converged, run.iterations};
}

inline FlatLayout layout_flat_allpairs(const Graph& g, const DistanceMatrix& dm, const LayoutParams& p) {
  p.validate();
  const double L = ideal_unit(dm, p);
  auto run = detail::allpairs_planar(g, dm, p, L, false);
  return {std::move(run.positions), L, run.converged, run.iterations};
}

// Sphere: ideal arc for a pair is D_uv * pi / diameter. Both nodes rotate
// along the great circle through them and are renormalised after every move.
inline SphereLayout layout_sphere(const Graph& g, const DistanceMatrix& dm, const LayoutParams& p) {
  p.validate();
  Rng rng(p.seed);
  SphereLayout out;
  out.positions.resize(g.node_count());
  for (auto& v : out.positions) v = detail::random_unit_vector(rng);
  auto& x = out.positions;
  if (g.node_count() < 2) {
    out.converged = true;
    return out;
  }
  const double unit = sphere_ideal_unit(dm);
  const AnnealingSchedule schedule(dm, p);
  auto pairs = detail::all_pairs(g.node_count());

  auto tangent_towards = [&rng](Vec3 from, Vec3 to) {
    Vec3 t = to - dot(from, to) * from;
    double len = norm(t);
    while (len < 1e-12) {
      const Vec3 r = detail::random_unit_vector(rng);
      t = r - dot(from, r) * from;
      len = norm(t);
    }
    return (1.0 / len) * t;
  };

  for (int t = 0; t < p.tau_max; ++t) {
    rng.shuffle(std::span<detail::NodePair>(pairs));
    double max_move = 0.0;
    for (const auto [u, v] : pairs) {
      const double d_uv = dm(u, v);
      const double d = arc_length(x[u], x[v]);
      const double move = schedule.eta(t, d_uv) * (d - d_uv * unit) / 2.0;
      const Vec3 tu = tangent_towards(x[u], x[v]);
      const Vec3 tv = tangent_towards(x[v], x[u]);
      const double c = std::cos(move), s = std::sin(move);
      x[u] = normalized(c * x[u] + s * tu);
      x[v] = normalized(c * x[v] + s * tv);
      max_move = std::max(max_move, std::abs(move));
    }
    out.iterations = t + 1;
    if (max_move < p.delta_stop) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace wraplay
