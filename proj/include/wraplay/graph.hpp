#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wraplay/errors.hpp"

namespace wraplay {

using NodeId = std::uint32_t;

struct Edge {
  NodeId source = 0;
  NodeId target = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected simple graph. Construction validates everything except
// connectivity; connectivity is checked where it matters (shortest_paths,
// the loader) so that the corpus samplers can reject disconnected draws.
class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t node_count, std::vector<Edge> edges = {},
                 std::vector<std::string> labels = {})
      : node_count_(node_count), edges_(std::move(edges)), labels_(std::move(labels)) {
    if (node_count_ == 0) throw InvalidInput("graph needs at least one node");
    if (!labels_.empty() && labels_.size() != node_count_)
      throw InvalidInput("label count does not match node count");
    std::set<std::pair<NodeId, NodeId>> seen;
    for (auto& e : edges_) {
      if (e.source >= node_count_ || e.target >= node_count_)
        throw InvalidInput("edge endpoint out of range");
      if (e.source == e.target) throw InvalidInput("self-loop");
      const auto key = std::minmax(e.source, e.target);
      if (!seen.insert({key.first, key.second}).second) throw InvalidInput("duplicate edge");
    }
    adjacency_.assign(node_count_, {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      adjacency_[edges_[i].source].push_back(edges_[i].target);
      adjacency_[edges_[i].target].push_back(edges_[i].source);
    }
  }

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<NodeId>& neighbours(NodeId v) const { return adjacency_[v]; }
  std::size_t degree(NodeId v) const { return adjacency_[v].size(); }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(NodeId v) const {
    return labels_.empty() ? std::to_string(v) : labels_[v];
  }

  bool is_connected() const {
    std::vector<char> seen(node_count_, 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : adjacency_[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    return reached == node_count_;
  }

 private:
  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  std::vector<std::vector<NodeId>> adjacency_;
};

class Clustering {
 public:
  Clustering() = default;

  explicit Clustering(std::vector<int> assignment) : assignment_(std::move(assignment)) {
    if (assignment_.empty()) throw InvalidInput("empty clustering");
    const int top = *std::max_element(assignment_.begin(), assignment_.end());
    if (*std::min_element(assignment_.begin(), assignment_.end()) < 0)
      throw InvalidInput("negative cluster id");
    cluster_count_ = static_cast<std::size_t>(top) + 1;
    std::vector<std::size_t> sizes(cluster_count_, 0);
    for (int c : assignment_) ++sizes[static_cast<std::size_t>(c)];
    if (std::find(sizes.begin(), sizes.end(), 0) != sizes.end())
      throw InvalidInput("cluster ids must be contiguous from 0 with no empty cluster");
  }

  std::size_t cluster_count() const { return cluster_count_; }
  std::size_t node_count() const { return assignment_.size(); }
  int operator[](NodeId v) const { return assignment_[v]; }
  const std::vector<int>& assignment() const { return assignment_; }

  std::vector<std::vector<NodeId>> members() const {
    std::vector<std::vector<NodeId>> out(cluster_count_);
    for (std::size_t v = 0; v < assignment_.size(); ++v)
      out[static_cast<std::size_t>(assignment_[v])].push_back(static_cast<NodeId>(v));
    return out;
  }

 private:
  std::vector<int> assignment_;
  std::size_t cluster_count_ = 0;
};

// All-pairs hop counts, row-major.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::size_t n, std::vector<int> d) : n_(n), d_(std::move(d)) {
    for (std::size_t i = 0; i < d_.size(); ++i) {
      d_max_ = std::max(d_max_, d_[i]);
      if (d_[i] > 0) d_min_ = std::min(d_min_, d_[i]);
    }
    if (d_min_ == std::numeric_limits<int>::max()) d_min_ = 0;
  }

  std::size_t size() const { return n_; }
  int operator()(std::size_t u, std::size_t v) const { return d_[u * n_ + v]; }
  int d_max() const { return d_max_; }
  int d_min() const { return d_min_; }
  int diameter() const { return d_max_; }
  const std::vector<int>& data() const { return d_; }

 private:
  std::size_t n_ = 0;
  std::vector<int> d_;
  int d_max_ = 0;
  int d_min_ = std::numeric_limits<int>::max();
};

inline DistanceMatrix shortest_paths(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<int> d(n * n, -1);
  std::vector<NodeId> queue(n);
  for (std::size_t s = 0; s < n; ++s) {
    int* row = d.data() + s * n;
    std::size_t head = 0, tail = 0;
    queue[tail++] = static_cast<NodeId>(s);
    row[s] = 0;
    while (head < tail) {
      const NodeId v = queue[head++];
      for (NodeId w : g.neighbours(v)) {
        if (row[w] < 0) {
          row[w] = row[v] + 1;
          queue[tail++] = w;
        }
      }
    }
    if (tail != n) throw DisconnectedGraph();
  }
  return DistanceMatrix(n, std::move(d));
}

inline int graph_diameter(const Graph& g) { return shortest_paths(g).diameter(); }

inline double density(const Graph& g) {
  const auto n = static_cast<double>(g.node_count());
  if (n < 2) return 0.0;
  return 2.0 * static_cast<double>(g.edge_count()) / (n * (n - 1.0));
}

struct ClusterEdgeStats {
  std::vector<double> internal_edges;  // e_c
  std::vector<double> degree_sum;      // deg_c
  double m = 0.0;
};

inline ClusterEdgeStats cluster_edge_stats(const Graph& g, const Clustering& c) {
  if (c.node_count() != g.node_count()) throw InvalidInput("clustering size mismatch");
  ClusterEdgeStats s;
  s.internal_edges.assign(c.cluster_count(), 0.0);
  s.degree_sum.assign(c.cluster_count(), 0.0);
  s.m = static_cast<double>(g.edge_count());
  for (const Edge& e : g.edges()) {
    const auto cu = static_cast<std::size_t>(c[e.source]);
    const auto cv = static_cast<std::size_t>(c[e.target]);
    if (cu == cv) s.internal_edges[cu] += 1.0;
    s.degree_sum[cu] += 1.0;
    s.degree_sum[cv] += 1.0;
  }
  return s;
}

// Newman's Q = sum_c (e_c/m - (deg_c/2m)^2).
inline double modularity(const Graph& g, const Clustering& c) {
  const auto s = cluster_edge_stats(g, c);
  if (s.m == 0.0) return 0.0;
  double q = 0.0;
  for (std::size_t k = 0; k < s.internal_edges.size(); ++k) {
    const double share = s.degree_sum[k] / (2.0 * s.m);
    q += s.internal_edges[k] / s.m - share * share;
  }
  return q;
}

// Per-cluster modularity: the cluster's Q term divided by its share of edge
// endpoints, deg_c/2m. Q is the endpoint-share-weighted mean of these values,
// so for evenly sized clusters each one sits near Q itself.
inline std::vector<double> cluster_modularities(const Graph& g, const Clustering& c) {
  const auto s = cluster_edge_stats(g, c);
  std::vector<double> out(s.internal_edges.size(), 0.0);
  if (s.m == 0.0) return out;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double share = s.degree_sum[k] / (2.0 * s.m);
    if (share > 0.0) out[k] = (s.internal_edges[k] / s.m - share * share) / share;
  }
  return out;
}

}  // namespace wraplay
