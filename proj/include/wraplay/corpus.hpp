#pragma once

// Benchmark corpus generators.
//
// Clustered corpus: planted partition. Cluster sizes are drawn around n/k,
// intra-cluster pairs are wired with probability p_in and inter-cluster pairs
// with p_out. p_out is pinned by the density target and p_in is solved by
// bisection so the expected modularity hits the target. Each draw is then
// rejection-tested against the size, density, modularity and per-cluster
// modularity bands; a failed draw retries on the next sub-stream of the seed.
//
// Legacy corpus: tiny Watts-Strogatz / Barabasi-Albert / Erdos-Renyi graphs
// filtered to fixed node counts and edge ranges.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "wraplay/errors.hpp"
#include "wraplay/graph.hpp"
#include "wraplay/rng.hpp"

namespace wraplay {

enum class SizeClass { Small, Large };

inline const char* to_string(SizeClass c) { return c == SizeClass::Small ? "small" : "large"; }

struct SizeBounds {
  int min_nodes, max_nodes;
  int min_edges, max_edges;
};

inline SizeBounds size_bounds(SizeClass c) {
  if (c == SizeClass::Small) return {68, 80, 710, 925};
  return {126, 134, 2310, 2590};
}

struct CorpusSpec {
  SizeClass size_class = SizeClass::Small;
  double modularity_target = 0.4;
  double modularity_tolerance = 0.02;
  double density_target = 0.3;
  double density_tolerance = 0.01;
  int min_clusters = 3;
  int max_clusters = 8;
  double min_cluster_modularity = 0.23;
  std::uint64_t seed = 1;
  int max_attempts = 200;

  void validate() const {
    const double allowed[] = {0.25, 0.30, 0.35, 0.40, 0.45};
    const bool ok = std::any_of(std::begin(allowed), std::end(allowed),
                                [&](double m) { return std::abs(m - modularity_target) < 1e-9; });
    if (!ok) throw InvalidInput("modularity target must be one of 0.25, 0.30, 0.35, 0.40, 0.45");
    if (min_clusters < 2 || max_clusters < min_clusters) throw InvalidInput("bad cluster range");
    if (max_attempts < 1) throw InvalidInput("max_attempts must be positive");
    if (density_target <= 0 || density_target >= 1 || density_tolerance < 0)
      throw InvalidInput("bad density band");
  }
};

struct ClusteredGraph {
  Graph graph;
  Clustering clustering;
  int attempts = 0;  // 1-based index of the accepted draw
};

namespace detail {

inline double pairs(double n) { return n * (n - 1.0) / 2.0; }

// Node counts for which the edge band and the density band intersect.
inline std::vector<int> feasible_node_counts(const CorpusSpec& spec) {
  const auto b = size_bounds(spec.size_class);
  std::vector<int> out;
  for (int n = b.min_nodes; n <= b.max_nodes; ++n) {
    const double p = pairs(n);
    const double lo = std::max<double>(b.min_edges, std::ceil((spec.density_target - spec.density_tolerance) * p));
    const double hi = std::min<double>(b.max_edges, std::floor((spec.density_target + spec.density_tolerance) * p));
    if (lo <= hi) out.push_back(n);
  }
  return out;
}

inline std::vector<int> draw_cluster_sizes(int n, int k, Rng& rng) {
  std::vector<double> w(static_cast<std::size_t>(k));
  for (auto& x : w) x = rng.uniform(0.75, 1.25);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<int> sizes(w.size());
  std::vector<std::pair<double, int>> remainders;
  int assigned = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double exact = n * w[i] / total;
    sizes[i] = static_cast<int>(std::floor(exact));
    assigned += sizes[i];
    remainders.push_back({exact - sizes[i], static_cast<int>(i)});
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int i = 0; assigned < n; ++i, ++assigned) ++sizes[static_cast<std::size_t>(remainders[static_cast<std::size_t>(i)].second)];
  return sizes;
}

// Expected modularity of the planted partition for a given p_in, with p_out
// chosen so the expected edge count matches the density target.
inline double expected_modularity(const std::vector<int>& sizes, int n, double rho, double p_in) {
  const double total_pairs = pairs(n);
  double intra_pairs = 0.0;
  for (int s : sizes) intra_pairs += pairs(s);
  const double p_out = (rho * total_pairs - p_in * intra_pairs) / (total_pairs - intra_pairs);
  const double m = rho * total_pairs;
  double q = 0.0;
  for (int s : sizes) {
    const double e_c = p_in * pairs(s);
    const double deg_c = 2.0 * e_c + p_out * s * (n - s);
    q += e_c / m - (deg_c / (2.0 * m)) * (deg_c / (2.0 * m));
  }
  return q;
}

struct PlantedProbabilities {
  double p_in = 0.0, p_out = 0.0;
  bool feasible = false;
};

inline PlantedProbabilities solve_planted(const std::vector<int>& sizes, int n, double rho, double target) {
  const double total_pairs = pairs(n);
  double intra_pairs = 0.0;
  for (int s : sizes) intra_pairs += pairs(s);
  double lo = rho;
  double hi = std::min(1.0, rho * total_pairs / intra_pairs);
  PlantedProbabilities out;
  if (expected_modularity(sizes, n, rho, hi) < target || expected_modularity(sizes, n, rho, lo) > target)
    return out;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (expected_modularity(sizes, n, rho, mid) < target) lo = mid; else hi = mid;
  }
  out.p_in = 0.5 * (lo + hi);
  out.p_out = (rho * total_pairs - out.p_in * intra_pairs) / (total_pairs - intra_pairs);
  out.feasible = out.p_out >= 0.0 && out.p_in <= 1.0;
  return out;
}

}  // namespace detail

inline ClusteredGraph generate_partition_graph(const CorpusSpec& spec) {
  spec.validate();
  const auto bounds = size_bounds(spec.size_class);
  const auto node_counts = detail::feasible_node_counts(spec);
  if (node_counts.empty()) throw InvalidInput("size and density bands do not intersect");

  for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
    Rng rng(spec.seed, static_cast<std::uint64_t>(attempt));
    const int n = node_counts[rng.uniform_below(node_counts.size())];
    const int k = static_cast<int>(rng.uniform_int(spec.min_clusters, spec.max_clusters));
    const auto sizes = detail::draw_cluster_sizes(n, k, rng);
    if (*std::min_element(sizes.begin(), sizes.end()) < 2) continue;
    const auto probs = detail::solve_planted(sizes, n, spec.density_target, spec.modularity_target);
    if (!probs.feasible) continue;

    std::vector<int> assignment;
    assignment.reserve(static_cast<std::size_t>(n));
    for (int c = 0; c < k; ++c)
      assignment.insert(assignment.end(), static_cast<std::size_t>(sizes[static_cast<std::size_t>(c)]), c);

    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        const double p = assignment[static_cast<std::size_t>(u)] == assignment[static_cast<std::size_t>(v)] ? probs.p_in : probs.p_out;
        if (rng.bernoulli(p)) edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
      }
    }
    const int m = static_cast<int>(edges.size());
    if (m < bounds.min_edges || m > bounds.max_edges) continue;

    Graph g(static_cast<std::size_t>(n), std::move(edges));
    if (std::abs(density(g) - spec.density_target) > spec.density_tolerance) continue;
    if (!g.is_connected()) continue;
    Clustering clustering(std::move(assignment));
    if (std::abs(modularity(g, clustering) - spec.modularity_target) > spec.modularity_tolerance) continue;
    const auto per_cluster = cluster_modularities(g, clustering);
    if (*std::min_element(per_cluster.begin(), per_cluster.end()) <= spec.min_cluster_modularity) continue;
    return {std::move(g), std::move(clustering), attempt + 1};
  }
  throw GenerationExhausted(spec.max_attempts);
}

// ---------------------------------------------------------------------------
// Legacy small corpus

enum class LegacyClass { Small, Medium, Large };
enum class LegacyModel { SmallWorld, ScaleFree, Binomial };

struct LegacySpec {
  LegacyClass size_class = LegacyClass::Small;
  LegacyModel model = LegacyModel::SmallWorld;
  std::uint64_t seed = 1;
  int max_attempts = 200;
};

struct LegacyBounds {
  int nodes, min_edges, max_edges;
};

inline LegacyBounds legacy_bounds(LegacyClass c) {
  switch (c) {
    case LegacyClass::Small: return {8, 12, 18};
    case LegacyClass::Medium: return {11, 18, 28};
    case LegacyClass::Large: return {15, 26, 36};
  }
  return {8, 12, 18};
}

inline std::vector<Edge> watts_strogatz(int n, int k, double p, Rng& rng) {
  std::set<std::pair<int, int>> present;
  auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
  for (int j = 1; j <= k / 2; ++j)
    for (int u = 0; u < n; ++u) present.insert(key(u, (u + j) % n));
  for (int j = 1; j <= k / 2; ++j) {
    for (int u = 0; u < n; ++u) {
      const int v = (u + j) % n;
      if (!rng.bernoulli(p)) continue;
      const int w = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n)));
      if (w == u || present.count(key(u, w))) continue;
      present.erase(key(u, v));
      present.insert(key(u, w));
    }
  }
  std::vector<Edge> out;
  for (auto [a, b] : present) out.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b)});
  return out;
}

inline std::vector<Edge> barabasi_albert(int n, int m, Rng& rng) {
  std::vector<Edge> out;
  std::vector<int> repeated;
  std::vector<int> targets(static_cast<std::size_t>(m));
  std::iota(targets.begin(), targets.end(), 0);
  for (int source = m; source < n; ++source) {
    for (int t : targets) out.push_back({static_cast<NodeId>(t), static_cast<NodeId>(source)});
    repeated.insert(repeated.end(), targets.begin(), targets.end());
    repeated.insert(repeated.end(), static_cast<std::size_t>(m), source);
    std::set<int> chosen;
    while (static_cast<int>(chosen.size()) < m)
      chosen.insert(repeated[rng.uniform_below(repeated.size())]);
    targets.assign(chosen.begin(), chosen.end());
  }
  return out;
}

inline std::vector<Edge> erdos_renyi(int n, double p, Rng& rng) {
  std::vector<Edge> out;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) out.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
  return out;
}

inline Graph generate_legacy_graph(const LegacySpec& spec) {
  const auto b = legacy_bounds(spec.size_class);
  const double mid_edges = 0.5 * (b.min_edges + b.max_edges);
  for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
    Rng rng(spec.seed, static_cast<std::uint64_t>(attempt));
    std::vector<Edge> edges;
    switch (spec.model) {
      case LegacyModel::SmallWorld: edges = watts_strogatz(b.nodes, 4, 0.3, rng); break;
      case LegacyModel::ScaleFree: edges = barabasi_albert(b.nodes, b.nodes >= 15 ? 3 : 2, rng); break;
      case LegacyModel::Binomial: edges = erdos_renyi(b.nodes, mid_edges / detail::pairs(b.nodes), rng); break;
    }
    const int m = static_cast<int>(edges.size());
    if (m < b.min_edges || m > b.max_edges) continue;
    Graph g(static_cast<std::size_t>(b.nodes), std::move(edges));
    if (g.is_connected()) return g;
  }
  throw GenerationExhausted(spec.max_attempts);
}

}  // namespace wraplay
