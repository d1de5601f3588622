#pragma once

#include <string>
#include <vector>

#include "wraplay.hpp"

namespace testing_graphs {

using namespace wraplay;

inline Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph(n, e);
}

inline Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i) e.push_back({i, static_cast<NodeId>((i + 1) % n)});
  return Graph(n, e);
}

inline Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph(n, e);
}

inline Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (NodeId i = 1; i <= leaves; ++i) e.push_back({0, i});
  return Graph(leaves + 1, e);
}

inline Graph k33() {
  std::vector<Edge> e;
  for (NodeId a = 0; a < 3; ++a)
    for (NodeId b = 3; b < 6; ++b) e.push_back({a, b});
  return Graph(6, e);
}

// Triangles {0,1,2} and {3,4,5} joined by 2-3.
inline Graph bridged_triangles() {
  return Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
}

inline TorusLayout torus(std::vector<Vec2> pos, double cell = 1.0, double L = 1.0 / 3.0) {
  TorusLayout l;
  l.positions = std::move(pos);
  l.cell_size = cell;
  l.ideal_unit = L;
  return l;
}

inline FlatLayout flat(std::vector<Vec2> pos, double L = 1.0) {
  FlatLayout l;
  l.positions = std::move(pos);
  l.ideal_unit = L;
  return l;
}

inline TorusLayout random_torus(std::size_t n, Rng& rng, double cell = 1.0) {
  std::vector<Vec2> pos;
  for (std::size_t i = 0; i < n; ++i) pos.push_back({rng.uniform(0.0, cell), rng.uniform(0.0, cell)});
  return torus(std::move(pos), cell);
}

// Connected random graph: random spanning tree plus extra edges.
inline Graph random_connected(std::size_t n, std::size_t extra, Rng& rng) {
  std::vector<Edge> e;
  std::set<std::pair<NodeId, NodeId>> seen;
  auto add = [&](NodeId a, NodeId b) {
    if (a == b) return;
    const auto k = std::minmax(a, b);
    if (seen.insert({k.first, k.second}).second) e.push_back({a, b});
  };
  for (NodeId v = 1; v < n; ++v) add(static_cast<NodeId>(rng.uniform_below(v)), v);
  for (std::size_t i = 0; i < extra * 4 && e.size() < n - 1 + extra; ++i)
    add(static_cast<NodeId>(rng.uniform_below(n)), static_cast<NodeId>(rng.uniform_below(n)));
  return Graph(n, e);
}

}  // namespace testing_graphs
