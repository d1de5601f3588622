#pragma once

// JSON interchange (graphs, layouts, metrics), the benchmark CSV row, and run
// manifests. Output uses ordered_json so key order is fixed and documents
// serialise byte-identically for identical inputs.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wraplay/autopan.hpp"
#include "wraplay/errors.hpp"
#include "wraplay/graph.hpp"
#include "wraplay/layout.hpp"
#include "wraplay/metrics.hpp"

namespace wraplay {

using ojson = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << data;
  if (!out) throw InvalidInput("write failed for " + path);
}

inline ojson parse_json(const std::string& text) {
  try {
    return ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Graph JSON

struct GraphDocument {
  Graph graph;
  std::optional<Clustering> clustering;
  ojson meta;  // null when absent
};

inline ojson graph_to_json(const Graph& g, const Clustering* clustering = nullptr, const ojson& meta = nullptr) {
  ojson doc;
  ojson nodes = ojson::array();
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    ojson node;
    node["id"] = v;
    if (g.has_labels()) node["label"] = g.label(static_cast<NodeId>(v));
    if (clustering) node["cluster"] = (*clustering)[static_cast<NodeId>(v)];
    nodes.push_back(std::move(node));
  }
  ojson links = ojson::array();
  for (const Edge& e : g.edges()) links.push_back({{"source", e.source}, {"target", e.target}});
  doc["nodes"] = std::move(nodes);
  doc["links"] = std::move(links);
  if (!meta.is_null()) doc["meta"] = meta;
  return doc;
}

namespace detail {

inline long long require_int(const ojson& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key) || !obj[key].is_number_integer())
    throw InvalidInput(std::string("missing or non-integer \"") + key + "\"");
  return obj[key].get<long long>();
}

}  // namespace detail

// Accepts node ids 0..n-1 in any order. Rejects disconnected graphs.
inline GraphDocument graph_from_json(const ojson& doc) {
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array() || !doc.contains("links") ||
      !doc["links"].is_array())
    throw InvalidInput("graph JSON needs \"nodes\" and \"links\" arrays");
  const auto& nodes = doc["nodes"];
  const std::size_t n = nodes.size();
  if (n == 0) throw InvalidInput("graph has no nodes");
  std::vector<std::string> labels(n);
  std::vector<int> clusters(n, -1);
  std::vector<char> seen(n, 0);
  bool any_label = false, any_cluster = false, all_cluster = true;
  for (const auto& node : nodes) {
    const long long id = detail::require_int(node, "id");
    if (id < 0 || static_cast<std::size_t>(id) >= n) throw InvalidInput("node id out of range");
    if (seen[id]) throw InvalidInput("duplicate node id");
    seen[id] = 1;
    labels[id] = std::to_string(id);
    if (node.contains("label")) {
      if (!node["label"].is_string()) throw InvalidInput("label must be a string");
      labels[id] = node["label"].get<std::string>();
      any_label = true;
    }
    if (node.contains("cluster")) {
      clusters[id] = static_cast<int>(detail::require_int(node, "cluster"));
      any_cluster = true;
    } else {
      all_cluster = false;
    }
  }
  std::vector<Edge> edges;
  for (const auto& link : doc["links"]) {
    const long long s = detail::require_int(link, "source"), t = detail::require_int(link, "target");
    if (s < 0 || t < 0) throw InvalidInput("negative link endpoint");
    edges.push_back({static_cast<NodeId>(s), static_cast<NodeId>(t)});
  }
  GraphDocument out{Graph(n, std::move(edges), any_label ? std::move(labels) : std::vector<std::string>{}),
                    std::nullopt, nullptr};
  if (any_cluster) {
    if (!all_cluster) throw InvalidInput("cluster given for some nodes only");
    out.clustering = Clustering(std::move(clusters));
  }
  if (doc.contains("meta")) out.meta = doc["meta"];
  if (!out.graph.is_connected()) throw DisconnectedGraph();
  return out;
}

inline GraphDocument load_graph(const std::string& path) { return graph_from_json(parse_json(read_file(path))); }

// ---------------------------------------------------------------------------
// Layout JSON

struct LayoutDocument {
  Topology topology = Topology::Flat;
  double cell_size = 1.0;
  double L = 1.0;
  std::vector<Vec2> planar;  // flat / torus
  std::vector<Vec3> sphere;  // sphere
  bool converged = false;
  int iterations = 0;
  std::uint64_t seed = 0;
  std::string algorithm;
  std::optional<PanVector> pan;
  std::optional<RotationTriple> rotate;

  std::size_t node_count() const { return topology == Topology::Sphere ? sphere.size() : planar.size(); }

  FlatLayout flat_layout() const {
    if (topology != Topology::Flat) throw TopologyMismatch("layout is not flat");
    return {planar, L, converged, iterations};
  }
  TorusLayout torus_layout() const {
    if (topology != Topology::Torus) throw TopologyMismatch("layout is not torus");
    return {planar, cell_size, L, converged, iterations};
  }
  SphereLayout sphere_layout() const {
    if (topology != Topology::Sphere) throw TopologyMismatch("layout is not sphere");
    return {sphere, rotate.value_or(RotationTriple{}), converged, iterations};
  }
};

inline LayoutDocument make_document(const FlatLayout& l, std::uint64_t seed, std::string algorithm) {
  LayoutDocument d;
  d.topology = Topology::Flat;
  d.L = l.ideal_unit;
  d.planar = l.positions;
  d.converged = l.converged;
  d.iterations = l.iterations;
  d.seed = seed;
  d.algorithm = std::move(algorithm);
  return d;
}

inline LayoutDocument make_document(const TorusLayout& l, std::uint64_t seed, std::string algorithm) {
  LayoutDocument d;
  d.topology = Topology::Torus;
  d.cell_size = l.cell_size;
  d.L = l.ideal_unit;
  d.planar = l.positions;
  d.converged = l.converged;
  d.iterations = l.iterations;
  d.seed = seed;
  d.algorithm = std::move(algorithm);
  return d;
}

inline LayoutDocument make_document(const SphereLayout& l, double ideal_arc, std::uint64_t seed,
                                    std::string algorithm) {
  LayoutDocument d;
  d.topology = Topology::Sphere;
  d.L = ideal_arc;
  d.sphere = l.positions;
  d.converged = l.converged;
  d.iterations = l.iterations;
  d.seed = seed;
  d.algorithm = std::move(algorithm);
  return d;
}

inline ojson layout_to_json(const LayoutDocument& d) {
  ojson j;
  j["topology"] = to_string(d.topology);
  if (d.topology == Topology::Torus) j["cell_size"] = d.cell_size;
  j["L"] = d.L;
  ojson pos = ojson::array();
  if (d.topology == Topology::Sphere) {
    for (const Vec3& p : d.sphere) pos.push_back({p.x, p.y, p.z});
  } else {
    for (const Vec2& p : d.planar) pos.push_back({p.x, p.y});
  }
  j["positions"] = std::move(pos);
  j["converged"] = d.converged;
  j["iterations"] = d.iterations;
  j["seed"] = d.seed;
  if (!d.algorithm.empty()) j["algorithm"] = d.algorithm;
  if (d.pan) j["view"] = {{"pan", {d.pan->dx, d.pan->dy}}};
  else if (d.rotate) j["view"] = {{"rotate", {d.rotate->lambda, d.rotate->phi, d.rotate->gamma}}};
  return j;
}

inline Topology parse_topology(const std::string& s) {
  if (s == "flat") return Topology::Flat;
  if (s == "torus") return Topology::Torus;
  if (s == "sphere") return Topology::Sphere;
  throw InvalidInput("unknown topology \"" + s + "\"");
}

inline LayoutDocument layout_from_json(const ojson& j) {
  auto number = [&](const ojson& v, const char* what) {
    if (!v.is_number()) throw InvalidInput(std::string(what) + " must be a number");
    return v.get<double>();
  };
  if (!j.is_object()) throw InvalidInput("layout JSON must be an object");
  for (const char* key : {"topology", "L", "positions", "converged", "iterations", "seed"})
    if (!j.contains(key)) throw InvalidInput(std::string("layout JSON missing \"") + key + "\"");
  LayoutDocument d;
  if (!j["topology"].is_string()) throw InvalidInput("topology must be a string");
  d.topology = parse_topology(j["topology"].get<std::string>());
  if (d.topology == Topology::Torus) {
    if (!j.contains("cell_size")) throw InvalidInput("torus layout needs cell_size");
    d.cell_size = number(j["cell_size"], "cell_size");
    if (!(d.cell_size > 0.0)) throw InvalidInput("cell_size must be positive");
  }
  d.L = number(j["L"], "L");
  if (!j["positions"].is_array()) throw InvalidInput("positions must be an array");
  const std::size_t dim = d.topology == Topology::Sphere ? 3 : 2;
  for (const auto& p : j["positions"]) {
    if (!p.is_array() || p.size() != dim) throw InvalidInput("position has the wrong dimension");
    if (dim == 3) d.sphere.push_back({number(p[0], "x"), number(p[1], "y"), number(p[2], "z")});
    else d.planar.push_back({number(p[0], "x"), number(p[1], "y")});
  }
  if (!j["converged"].is_boolean()) throw InvalidInput("converged must be a boolean");
  d.converged = j["converged"].get<bool>();
  if (!j["iterations"].is_number_integer()) throw InvalidInput("iterations must be an integer");
  d.iterations = j["iterations"].get<int>();
  if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) throw InvalidInput("seed must be an integer");
  d.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("algorithm") && j["algorithm"].is_string()) d.algorithm = j["algorithm"].get<std::string>();
  if (j.contains("view")) {
    const auto& v = j["view"];
    if (v.contains("pan")) {
      if (d.topology != Topology::Torus) throw TopologyMismatch("pan view on a non-torus layout");
      const auto& p = v["pan"];
      if (!p.is_array() || p.size() != 2) throw InvalidInput("view.pan must be [dx, dy]");
      d.pan = PanVector{number(p[0], "dx"), number(p[1], "dy")};
    } else if (v.contains("rotate")) {
      if (d.topology != Topology::Sphere) throw TopologyMismatch("rotate view on a non-sphere layout");
      const auto& r = v["rotate"];
      if (!r.is_array() || r.size() != 3) throw InvalidInput("view.rotate must be [lambda, phi, gamma]");
      d.rotate = RotationTriple{number(r[0], "lambda"), number(r[1], "phi"), number(r[2], "gamma")};
    }
  }
  return d;
}

inline LayoutDocument load_layout(const std::string& path) { return layout_from_json(parse_json(read_file(path))); }

inline std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Metrics

inline ojson metrics_to_json(const MetricsReport& r) {
  ojson j;
  j["stress"] = r.stress;
  j["crossings"] = r.crossings;
  j["link_length_variance"] = r.link_length_variance;
  j["angle_deviation"] = r.angle_deviation;
  if (r.wrapping) j["wrapping"] = {{"lr", r.wrapping->lr}, {"tb", r.wrapping->tb}, {"corner", r.wrapping->corner}};
  if (r.cluster_distance) j["cluster_distance"] = *r.cluster_distance;
  return j;
}

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// One benchmark/metrics CSV row. Empty fields stand for "not applicable".
struct MetricsRow {
  std::string graph;
  std::string topology;
  std::string algorithm;
  std::uint64_t seed = 0;
  std::optional<MetricsReport> report;  // absent when the run failed
  bool converged = false;
  int iterations = 0;
  std::string status = "ok";

  static std::string header() {
    return "graph,topology,algorithm,seed,stress,crossings,link_length_variance,angle_deviation,"
           "wrap_lr,wrap_tb,wrap_corner,cluster_distance,converged,iterations,status";
  }

  std::string csv() const {
    auto quoted = [](const std::string& s) {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) {
        if (c == '"') q += '"';
        q += c;
      }
      return q + "\"";
    };
    std::string out = quoted(graph) + "," + topology + "," + algorithm + "," + std::to_string(seed) + ",";
    if (report) {
      const MetricsReport& r = *report;
      out += format_real(r.stress) + "," + std::to_string(r.crossings) + "," + format_real(r.link_length_variance) +
             "," + format_real(r.angle_deviation) + ",";
      if (r.wrapping)
        out += std::to_string(r.wrapping->lr) + "," + std::to_string(r.wrapping->tb) + "," +
               std::to_string(r.wrapping->corner) + ",";
      else
        out += ",,,";
      out += (r.cluster_distance ? format_real(*r.cluster_distance) : std::string()) + ",";
    } else {
      out += ",,,,,,,,";
    }
    out += std::string(converged ? "true" : "false") + "," + std::to_string(iterations) + "," + quoted(status);
    return out;
  }
};

// ---------------------------------------------------------------------------
// Run manifest

inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex_digest(const std::string& data) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(data)));
  return buf;
}

class RunManifest {
 public:
  explicit RunManifest(std::vector<std::string> command_line) : command_line_(std::move(command_line)) {}

  void add_seed(std::uint64_t s) { seeds_.push_back(s); }
  void set_params(ojson p) { params_ = std::move(p); }
  void add_input(const std::string& path, const std::string& contents) { inputs_.push_back({path, hex_digest(contents)}); }
  void add_output(const std::string& path, const std::string& contents) { outputs_.push_back({path, hex_digest(contents)}); }

  // Times the callable and records it under `stage`.
  template <typename Fn>
  auto stage(const std::string& name, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    auto record = [&] {
      stages_.push_back({name, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()});
    };
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      record();
    } else {
      auto result = fn();
      record();
      return result;
    }
  }

  ojson to_json() const {
    ojson j;
    j["command_line"] = command_line_;
    j["seeds"] = seeds_;
    j["params"] = params_.is_null() ? ojson::object() : params_;
    auto files = [](const std::vector<std::pair<std::string, std::string>>& v) {
      ojson a = ojson::array();
      for (const auto& [path, digest] : v) a.push_back({{"path", path}, {"fnv1a64", digest}});
      return a;
    };
    j["inputs"] = files(inputs_);
    j["outputs"] = files(outputs_);
    ojson st = ojson::array();
    for (const auto& [name, secs] : stages_) st.push_back({{"stage", name}, {"seconds", secs}});
    j["stages"] = std::move(st);
    return j;
  }

 private:
  std::vector<std::string> command_line_;
  std::vector<std::uint64_t> seeds_;
  ojson params_;
  std::vector<std::pair<std::string, std::string>> inputs_, outputs_;
  std::vector<std::pair<std::string, double>> stages_;
};

inline ojson params_to_json(const LayoutParams& p) {
  return {{"cell_size", p.cell_size}, {"tau", p.tau},         {"epsilon_exp", p.epsilon_exp},
          {"epsilon_conv", p.epsilon_conv}, {"delta_stop", p.delta_stop}, {"tau_max", p.tau_max},
          {"seed", p.seed}};
}

}  // namespace wraplay
