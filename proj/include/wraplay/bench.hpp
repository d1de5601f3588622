#pragma once

// Benchmark harness: the (graph, algorithm, seed) product, optionally fanned
// out over worker threads, with rows sorted before they are returned.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "wraplay/io.hpp"
#include "wraplay/layout.hpp"
#include "wraplay/metrics.hpp"

namespace wraplay {

enum class Algorithm { PairwiseTorus, PairwiseFlat, AllPairsTorus, AllPairsFlat, PairwiseSphere };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::PairwiseTorus: return "pairwise-torus";
    case Algorithm::PairwiseFlat: return "pairwise-flat";
    case Algorithm::AllPairsTorus: return "allpairs-torus";
    case Algorithm::AllPairsFlat: return "allpairs-flat";
    case Algorithm::PairwiseSphere: return "pairwise-sphere";
  }
  return "pairwise-torus";
}

inline Algorithm parse_algorithm(const std::string& s) {
  for (Algorithm a : {Algorithm::PairwiseTorus, Algorithm::PairwiseFlat, Algorithm::AllPairsTorus,
                      Algorithm::AllPairsFlat, Algorithm::PairwiseSphere})
    if (s == to_string(a)) return a;
  throw InvalidInput("unknown algorithm \"" + s + "\"");
}

inline Topology topology_of(Algorithm a) {
  switch (a) {
    case Algorithm::PairwiseTorus:
    case Algorithm::AllPairsTorus: return Topology::Torus;
    case Algorithm::PairwiseSphere: return Topology::Sphere;
    default: return Topology::Flat;
  }
}

// Lays out and scores one graph. Library errors are caught and recorded in
// the row status so a batch keeps going.
inline MetricsRow run_job(const std::string& name, const GraphDocument& doc, Algorithm algo, std::uint64_t seed,
                          LayoutParams params) {
  MetricsRow row;
  row.graph = name;
  row.topology = to_string(topology_of(algo));
  row.algorithm = to_string(algo);
  row.seed = seed;
  params.seed = seed;
  try {
    const DistanceMatrix dm = shortest_paths(doc.graph);
    const Clustering* c = doc.clustering ? &*doc.clustering : nullptr;
    auto finish = [&](const auto& layout) {
      row.converged = layout.converged;
      row.iterations = layout.iterations;
    };
    switch (algo) {
      case Algorithm::PairwiseTorus:
      case Algorithm::AllPairsTorus: {
        const TorusLayout l = algo == Algorithm::PairwiseTorus ? layout_torus_pairwise(doc.graph, dm, params)
                                                               : layout_torus_allpairs(doc.graph, dm, params);
        row.report = compute_metrics(l, doc.graph, dm, c);
        finish(l);
        break;
      }
      case Algorithm::PairwiseFlat:
      case Algorithm::AllPairsFlat: {
        const FlatLayout l = algo == Algorithm::PairwiseFlat ? layout_flat(doc.graph, dm, params)
                                                             : layout_flat_allpairs(doc.graph, dm, params);
        row.report = compute_metrics(l, doc.graph, dm, c);
        finish(l);
        break;
      }
      case Algorithm::PairwiseSphere: {
        const SphereLayout l = layout_sphere(doc.graph, dm, params);
        MetricsReport r;
        r.stress = stress(l, dm);
        row.report = r;
        finish(l);
        break;
      }
    }
  } catch (const Error& e) {
    row.report.reset();
    row.status = std::string("error: ") + e.what();
  }
  return row;
}

// Worker count: WRAPLAY_THREADS when set to a positive integer, else the
// hardware concurrency, never more than the job count.
inline unsigned worker_count(std::size_t jobs) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("WRAPLAY_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) n = static_cast<unsigned>(v);
  }
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, jobs)));
}

struct BenchGraph {
  std::string name;
  std::string size_class;  // grouping key for the summary
  GraphDocument doc;
};

inline bool row_less(const MetricsRow& a, const MetricsRow& b) {
  return std::tie(a.graph, a.algorithm, a.seed) < std::tie(b.graph, b.algorithm, b.seed);
}

inline std::vector<MetricsRow> run_bench(const std::vector<BenchGraph>& graphs, const std::vector<Algorithm>& algos,
                                         const std::vector<std::uint64_t>& seeds, const LayoutParams& params,
                                         unsigned threads = 0) {
  struct Job {
    std::size_t graph;
    Algorithm algo;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t g = 0; g < graphs.size(); ++g)
    for (Algorithm a : algos)
      for (std::uint64_t s : seeds) jobs.push_back({g, a, s});
  std::vector<MetricsRow> rows(jobs.size());
  if (threads == 0) threads = worker_count(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++)
      rows[i] = run_job(graphs[jobs[i].graph].name, graphs[jobs[i].graph].doc, jobs[i].algo, jobs[i].seed, params);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  std::sort(rows.begin(), rows.end(), row_less);
  return rows;
}

// Per (class, algorithm) means over successful rows.
inline ojson bench_summary(const std::vector<BenchGraph>& graphs, const std::vector<MetricsRow>& rows) {
  std::map<std::string, std::string> class_of;
  for (const auto& g : graphs) class_of[g.name] = g.size_class;
  struct Acc {
    int runs = 0, failures = 0, converged = 0, with_cd = 0;
    double stress = 0, crossings = 0, llv = 0, angle = 0, cd = 0;
  };
  std::map<std::pair<std::string, std::string>, Acc> acc;
  for (const auto& r : rows) {
    Acc& a = acc[{class_of[r.graph], r.algorithm}];
    if (!r.report) {
      ++a.failures;
      continue;
    }
    ++a.runs;
    a.converged += r.converged;
    a.stress += r.report->stress;
    a.crossings += static_cast<double>(r.report->crossings);
    a.llv += r.report->link_length_variance;
    a.angle += r.report->angle_deviation;
    if (r.report->cluster_distance) {
      ++a.with_cd;
      a.cd += *r.report->cluster_distance;
    }
  }
  ojson out = ojson::array();
  for (const auto& [key, a] : acc) {
    ojson j;
    j["class"] = key.first;
    j["algorithm"] = key.second;
    j["runs"] = a.runs;
    j["failures"] = a.failures;
    if (a.runs > 0) {
      j["converged_fraction"] = static_cast<double>(a.converged) / a.runs;
      j["mean_stress"] = a.stress / a.runs;
      j["mean_crossings"] = a.crossings / a.runs;
      j["mean_link_length_variance"] = a.llv / a.runs;
      j["mean_angle_deviation"] = a.angle / a.runs;
    }
    if (a.with_cd > 0) j["mean_cluster_distance"] = a.cd / a.with_cd;
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace wraplay
