// wraplay command-line tool.
//
// Exit codes: 0 success, 2 malformed or invalid input, 3 disconnected graph.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wraplay.hpp"

namespace fs = std::filesystem;
using namespace wraplay;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitDisconnected = 3;

void add_param_flags(CLI::App* cmd, LayoutParams& p) {
  cmd->add_option("--cell-size", p.cell_size, "torus cell edge length")->capture_default_str();
  cmd->add_option("--tau", p.tau, "iteration ending the exponential phase")->capture_default_str();
  cmd->add_option("--epsilon-exp", p.epsilon_exp, "step cap for the closest pair at tau")->capture_default_str();
  cmd->add_option("--epsilon-conv", p.epsilon_conv, "step cap for the closest pair at tau-max")->capture_default_str();
  cmd->add_option("--delta-stop", p.delta_stop, "convergence threshold on the largest move")->capture_default_str();
  cmd->add_option("--tau-max", p.tau_max, "iteration limit")->capture_default_str();
}

std::string write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
  } else {
    write_file(path, data);
  }
  return data;
}

void write_manifest(const std::string& path, const RunManifest& m) {
  if (!path.empty()) write_file(path, dump(m.to_json()));
}

std::string manifest_next_to(const std::string& out) {
  return (out.empty() || out == "-") ? std::string() : out + ".manifest.json";
}

// The view record, if any, applied so metrics and rendering see what a viewer
// would show.
TorusLayout viewed_torus(const LayoutDocument& d) {
  TorusLayout l = d.torus_layout();
  return d.pan ? apply_pan(l, *d.pan) : l;
}

void check_sizes(const LayoutDocument& d, const Graph& g) {
  if (d.node_count() != g.node_count()) throw InvalidInput("layout and graph disagree on node count");
}

RenderMode parse_mode(const std::string& s) {
  for (RenderMode m : {RenderMode::Flat, RenderMode::TorusNoContext, RenderMode::TorusPartial, RenderMode::TorusFull,
                       RenderMode::Sphere})
    if (s == to_string(m)) return m;
  throw InvalidInput("unknown render mode \"" + s + "\"");
}

ProjectionTag parse_projection(const std::string& s) {
  if (s == "equal-earth") return ProjectionTag::EqualEarth;
  if (s == "orthographic-hemisphere") return ProjectionTag::OrthographicHemisphere;
  throw InvalidInput("unknown projection \"" + s + "\"");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Layout, view selection, metrics and rendering for wrap-around network diagrams"};
  app.require_subcommand(1);
  const std::vector<std::string> command_line(argv, argv + argc);

  // corpus ------------------------------------------------------------------
  auto* corpus = app.add_subcommand("corpus", "generate clustered random graphs");
  std::string c_class = "small", c_out = ".", c_legacy_model = "small-world";
  double c_modularity = 0.3;
  int c_count = 10;
  std::uint64_t c_seed = 1;
  bool c_legacy = false;
  corpus->add_option("--class", c_class, "small | large (legacy corpus: small | medium | large)")->capture_default_str();
  corpus->add_option("--modularity", c_modularity, "0.25, 0.30, 0.35, 0.40 or 0.45")->capture_default_str();
  corpus->add_option("--count", c_count, "number of graphs")->capture_default_str()->check(CLI::NonNegativeNumber);
  corpus->add_option("--seed", c_seed, "base seed")->capture_default_str();
  corpus->add_option("--out-dir", c_out, "output directory")->capture_default_str();
  corpus->add_flag("--legacy", c_legacy, "generate the small unclustered corpus instead");
  corpus->add_option("--model", c_legacy_model, "legacy model: small-world | scale-free | binomial")->capture_default_str();

  // layout ------------------------------------------------------------------
  auto* layout = app.add_subcommand("layout", "compute a layout");
  std::string l_graph, l_topology = "torus", l_algo = "pairwise", l_out;
  LayoutParams l_params;
  layout->add_option("graph", l_graph, "graph JSON")->required();
  layout->add_option("--topology", l_topology, "flat | torus | sphere")->capture_default_str();
  layout->add_option("--algo", l_algo, "pairwise | allpairs")->capture_default_str();
  layout->add_option("--seed", l_params.seed, "random seed")->capture_default_str();
  layout->add_option("-o,--out", l_out, "output layout JSON (default stdout)");
  add_param_flags(layout, l_params);

  // autopan -----------------------------------------------------------------
  auto* autopan = app.add_subcommand("autopan", "choose the view pan (torus) or rotation (sphere)");
  std::string a_layout, a_graph, a_out, a_objective = "split-edges", a_projection = "equal-earth";
  RotationSearch a_search;
  MaskParams a_mask;
  autopan->add_option("layout", a_layout, "layout JSON")->required();
  autopan->add_option("graph", a_graph, "graph JSON")->required();
  autopan->add_option("-o,--out", a_out, "output layout JSON with a view record (default stdout)");
  autopan->add_option("--objective", a_objective, "sphere: split-edges | boundary-pixels")->capture_default_str();
  autopan->add_option("--projection", a_projection, "sphere boundary-pixels: equal-earth | orthographic-hemisphere")
      ->capture_default_str();
  autopan->add_option("--trials", a_search.trials, "sphere: sampled rotations")->capture_default_str();
  autopan->add_option("--seed", a_search.seed, "sphere: sampling seed")->capture_default_str();
  autopan->add_option("--border-band", a_mask.border_band, "sphere boundary-pixels: band width in pixels")
      ->capture_default_str();

  // metrics -----------------------------------------------------------------
  auto* metrics = app.add_subcommand("metrics", "score a layout");
  std::string m_layout, m_graph, m_out, m_csv, m_name;
  metrics->add_option("layout", m_layout, "layout JSON")->required();
  metrics->add_option("graph", m_graph, "graph JSON")->required();
  metrics->add_option("-o,--out", m_out, "metrics JSON (default stdout)");
  metrics->add_option("--csv", m_csv, "append one CSV row to this file");
  metrics->add_option("--name", m_name, "graph name for the CSV row (default: graph path)");

  // render ------------------------------------------------------------------
  auto* render_cmd = app.add_subcommand("render", "draw a layout as SVG");
  std::string r_layout, r_graph, r_out, r_mode, r_projection = "equal-earth", r_mask;
  RenderSpec r_spec;
  bool r_no_labels = false;
  render_cmd->add_option("layout", r_layout, "layout JSON")->required();
  render_cmd->add_option("graph", r_graph, "graph JSON")->required();
  render_cmd->add_option("-o,--out", r_out, "SVG output (default stdout)");
  render_cmd->add_option("--mode", r_mode, "flat | torus-nocontext | torus-partial | torus-full | sphere");
  render_cmd->add_option("--projection", r_projection, "equal-earth | orthographic-hemisphere")->capture_default_str();
  render_cmd->add_option("--width", r_spec.width, "viewport width in pixels");
  render_cmd->add_option("--height", r_spec.height, "viewport height in pixels");
  render_cmd->add_option("--node-radius", r_spec.node_radius)->capture_default_str();
  render_cmd->add_option("--stroke", r_spec.stroke)->capture_default_str();
  render_cmd->add_flag("--no-labels", r_no_labels, "omit torus boundary labels");
  render_cmd->add_option("--mask", r_mask, "sphere: also write the edge mask as PBM");

  // bench -------------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "run the layout/metrics product over a corpus");
  std::string b_dir, b_out, b_summary;
  std::vector<std::string> b_algos{"pairwise-torus", "pairwise-flat"};
  std::vector<std::uint64_t> b_seeds;
  int b_seed_count = 5;
  LayoutParams b_params;
  bench->add_option("corpus-dir", b_dir, "directory of graph JSON files")->required();
  bench->add_option("--algos", b_algos, "pairwise-torus pairwise-flat allpairs-torus allpairs-flat pairwise-sphere")
      ->capture_default_str();
  bench->add_option("--seeds", b_seed_count, "use seeds 1..N")->capture_default_str();
  bench->add_option("--seed-list", b_seeds, "explicit seeds (overrides --seeds)");
  bench->add_option("-o,--out", b_out, "CSV output (default stdout)");
  bench->add_option("--summary", b_summary, "per-class means as JSON");
  add_param_flags(bench, b_params);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    RunManifest manifest(command_line);

    if (corpus->parsed()) {
      fs::create_directories(c_out);
      for (int i = 0; i < c_count; ++i) {
        const std::uint64_t seed = Rng(c_seed, static_cast<std::uint64_t>(i)).next();
        manifest.add_seed(seed);
        ojson doc;
        std::string name;
        if (c_legacy) {
          LegacySpec spec;
          if (c_class == "small") spec.size_class = LegacyClass::Small;
          else if (c_class == "medium") spec.size_class = LegacyClass::Medium;
          else if (c_class == "large") spec.size_class = LegacyClass::Large;
          else throw InvalidInput("unknown legacy class \"" + c_class + "\"");
          if (c_legacy_model == "small-world") spec.model = LegacyModel::SmallWorld;
          else if (c_legacy_model == "scale-free") spec.model = LegacyModel::ScaleFree;
          else if (c_legacy_model == "binomial") spec.model = LegacyModel::Binomial;
          else throw InvalidInput("unknown legacy model \"" + c_legacy_model + "\"");
          spec.seed = seed;
          const Graph g = manifest.stage("generate", [&] { return generate_legacy_graph(spec); });
          doc = graph_to_json(g, nullptr, {{"class", c_class}, {"model", c_legacy_model}, {"seed", seed}});
          char buf[96];
          std::snprintf(buf, sizeof buf, "legacy_%s_%s_%03d.json", c_class.c_str(), c_legacy_model.c_str(), i);
          name = buf;
        } else {
          CorpusSpec spec;
          if (c_class == "small") spec.size_class = SizeClass::Small;
          else if (c_class == "large") spec.size_class = SizeClass::Large;
          else throw InvalidInput("unknown class \"" + c_class + "\"");
          spec.modularity_target = c_modularity;
          spec.seed = seed;
          spec.validate();
          const ClusteredGraph cg = manifest.stage("generate", [&] { return generate_partition_graph(spec); });
          doc = graph_to_json(cg.graph, &cg.clustering,
                              {{"class", c_class},
                               {"modularity_target", c_modularity},
                               {"modularity", modularity(cg.graph, cg.clustering)},
                               {"density", density(cg.graph)},
                               {"clusters", cg.clustering.cluster_count()},
                               {"attempts", cg.attempts},
                               {"seed", seed}});
          char buf[96];
          std::snprintf(buf, sizeof buf, "graph_%s_q%03d_%03d.json", c_class.c_str(),
                        static_cast<int>(std::lround(c_modularity * 100)), i);
          name = buf;
        }
        const std::string path = (fs::path(c_out) / name).string();
        const std::string text = dump(doc);
        write_file(path, text);
        manifest.add_output(path, text);
      }
      manifest.set_params({{"class", c_class}, {"modularity", c_modularity}, {"count", c_count}, {"seed", c_seed},
                           {"legacy", c_legacy}});
      write_manifest((fs::path(c_out) / "manifest.json").string(), manifest);
      return 0;
    }

    if (layout->parsed()) {
      const std::string input = read_file(l_graph);
      manifest.add_input(l_graph, input);
      manifest.add_seed(l_params.seed);
      manifest.set_params(params_to_json(l_params));
      const GraphDocument gd = graph_from_json(parse_json(input));
      const DistanceMatrix dm = manifest.stage("shortest_paths", [&] { return shortest_paths(gd.graph); });
      const Topology topology = parse_topology(l_topology);
      if (l_algo != "pairwise" && l_algo != "allpairs") throw InvalidInput("--algo must be pairwise or allpairs");
      const bool pairwise = l_algo == "pairwise";
      if (topology == Topology::Sphere && !pairwise) throw InvalidInput("sphere layouts use --algo pairwise");
      LayoutDocument doc = manifest.stage("layout", [&] {
        switch (topology) {
          case Topology::Torus:
            return make_document(pairwise ? layout_torus_pairwise(gd.graph, dm, l_params)
                                          : layout_torus_allpairs(gd.graph, dm, l_params),
                                 l_params.seed, l_algo);
          case Topology::Flat:
            return make_document(pairwise ? layout_flat(gd.graph, dm, l_params)
                                          : layout_flat_allpairs(gd.graph, dm, l_params),
                                 l_params.seed, l_algo);
          case Topology::Sphere:
            break;
        }
        return make_document(layout_sphere(gd.graph, dm, l_params), sphere_ideal_unit(dm), l_params.seed, l_algo);
      });
      const std::string text = write_output(l_out, dump(layout_to_json(doc)));
      manifest.add_output(l_out.empty() ? "-" : l_out, text);
      write_manifest(manifest_next_to(l_out), manifest);
      return 0;
    }

    if (autopan->parsed()) {
      LayoutDocument doc = load_layout(a_layout);
      const GraphDocument gd = load_graph(a_graph);
      check_sizes(doc, gd.graph);
      manifest.add_input(a_layout, read_file(a_layout));
      manifest.add_input(a_graph, read_file(a_graph));
      if (doc.topology == Topology::Torus) {
        doc.pan = manifest.stage("autopan", [&] { return autopan_torus(doc.torus_layout(), gd.graph); });
      } else if (doc.topology == Topology::Sphere) {
        manifest.add_seed(a_search.seed);
        const SphereLayout sl{doc.sphere, {}, doc.converged, doc.iterations};
        if (a_objective == "split-edges") {
          doc.rotate = manifest.stage("autorotate", [&] { return autorotate_orthographic(sl, gd.graph, a_search); });
        } else if (a_objective == "boundary-pixels") {
          const ProjectionTag tag = parse_projection(a_projection);
          doc.rotate = manifest.stage(
              "autorotate", [&] { return autorotate_boundary_pixels(sl, gd.graph, tag, a_search, a_mask); });
        } else {
          throw InvalidInput("unknown objective \"" + a_objective + "\"");
        }
      } else {
        throw TopologyMismatch("flat layouts have no view to choose");
      }
      manifest.set_params({{"objective", a_objective}, {"trials", a_search.trials}, {"seed", a_search.seed}});
      const std::string text = write_output(a_out, dump(layout_to_json(doc)));
      manifest.add_output(a_out.empty() ? "-" : a_out, text);
      write_manifest(manifest_next_to(a_out), manifest);
      return 0;
    }

    if (metrics->parsed()) {
      const LayoutDocument doc = load_layout(m_layout);
      const GraphDocument gd = load_graph(m_graph);
      check_sizes(doc, gd.graph);
      manifest.add_input(m_layout, read_file(m_layout));
      manifest.add_input(m_graph, read_file(m_graph));
      const DistanceMatrix dm = shortest_paths(gd.graph);
      const Clustering* c = gd.clustering ? &*gd.clustering : nullptr;
      MetricsReport report = manifest.stage("metrics", [&] {
        switch (doc.topology) {
          case Topology::Torus: return compute_metrics(viewed_torus(doc), gd.graph, dm, c);
          case Topology::Flat: return compute_metrics(doc.flat_layout(), gd.graph, dm, c);
          case Topology::Sphere: break;
        }
        MetricsReport r;
        r.stress = stress(doc.sphere_layout(), dm);
        return r;
      });
      ojson j = metrics_to_json(report);
      if (doc.topology == Topology::Torus) j["wrapcost"] = separable_wrapcost(viewed_torus(doc), gd.graph);
      const std::string text = write_output(m_out, dump(j));
      manifest.add_output(m_out.empty() ? "-" : m_out, text);
      if (!m_csv.empty()) {
        MetricsRow row;
        row.graph = m_name.empty() ? m_graph : m_name;
        row.topology = to_string(doc.topology);
        row.algorithm = doc.algorithm;
        row.seed = doc.seed;
        row.report = report;
        row.converged = doc.converged;
        row.iterations = doc.iterations;
        const bool fresh = !fs::exists(m_csv) || fs::file_size(m_csv) == 0;
        std::ofstream out(m_csv, std::ios::app | std::ios::binary);
        if (!out) throw InvalidInput("cannot write " + m_csv);
        if (fresh) out << MetricsRow::header() << "\n";
        out << row.csv() << "\n";
      }
      write_manifest(manifest_next_to(m_out), manifest);
      return 0;
    }

    if (render_cmd->parsed()) {
      const LayoutDocument doc = load_layout(r_layout);
      const GraphDocument gd = load_graph(r_graph);
      check_sizes(doc, gd.graph);
      manifest.add_input(r_layout, read_file(r_layout));
      manifest.add_input(r_graph, read_file(r_graph));
      if (r_mode.empty()) {
        r_mode = doc.topology == Topology::Flat    ? "flat"
                 : doc.topology == Topology::Torus ? "torus-nocontext"
                                                   : "sphere";
      }
      r_spec.mode = parse_mode(r_mode);
      r_spec.boundary_labels = !r_no_labels;
      if (gd.clustering) r_spec.clustering = &*gd.clustering;
      if (r_spec.mode == RenderMode::Sphere)
        r_spec.projection = ProjectionKind{parse_projection(r_projection), doc.rotate.value_or(RotationTriple{})};
      const std::string svg = manifest.stage("render", [&] {
        switch (doc.topology) {
          case Topology::Flat: return render(doc.flat_layout(), gd.graph, r_spec);
          case Topology::Torus: return render(viewed_torus(doc), gd.graph, r_spec);
          case Topology::Sphere: break;
        }
        return render(doc.sphere_layout(), gd.graph, r_spec);
      });
      write_output(r_out, svg);
      manifest.add_output(r_out.empty() ? "-" : r_out, svg);
      if (!r_mask.empty()) {
        if (doc.topology != Topology::Sphere) throw TopologyMismatch("--mask needs a sphere layout");
        const EdgeMask mask = rasterize_edges_mask(doc.sphere_layout(), gd.graph, *r_spec.projection,
                                                   r_spec.resolved_width(), r_spec.resolved_height());
        const std::string pbm = mask.to_pbm();
        write_file(r_mask, pbm);
        manifest.add_output(r_mask, pbm);
      }
      write_manifest(manifest_next_to(r_out), manifest);
      return 0;
    }

    if (bench->parsed()) {
      if (b_seeds.empty())
        for (int s = 1; s <= b_seed_count; ++s) b_seeds.push_back(static_cast<std::uint64_t>(s));
      std::vector<Algorithm> algos;
      for (const auto& a : b_algos) algos.push_back(parse_algorithm(a));
      b_params.validate();
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(b_dir))
        if (entry.path().extension() == ".json" && entry.path().filename() != "manifest.json" &&
            !entry.path().string().ends_with(".manifest.json"))
          files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      std::vector<BenchGraph> graphs;
      for (const auto& f : files) {
        const std::string text = read_file(f.string());
        manifest.add_input(f.string(), text);
        GraphDocument gd = graph_from_json(parse_json(text));
        std::string cls = "all";
        if (gd.meta.is_object() && gd.meta.contains("class") && gd.meta["class"].is_string())
          cls = gd.meta["class"].get<std::string>();
        graphs.push_back({f.filename().string(), cls, std::move(gd)});
      }
      for (auto s : b_seeds) manifest.add_seed(s);
      manifest.set_params(params_to_json(b_params));
      const auto rows = manifest.stage("bench", [&] { return run_bench(graphs, algos, b_seeds, b_params); });
      std::string csv = MetricsRow::header() + "\n";
      for (const auto& r : rows) csv += r.csv() + "\n";
      write_output(b_out, csv);
      manifest.add_output(b_out.empty() ? "-" : b_out, csv);
      if (!b_summary.empty()) {
        const std::string text = dump(bench_summary(graphs, rows));
        write_file(b_summary, text);
        manifest.add_output(b_summary, text);
      }
      write_manifest(manifest_next_to(b_out), manifest);
      return 0;
    }
  } catch (const DisconnectedGraph& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDisconnected;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return 0;
}
