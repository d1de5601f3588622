// Generates one clustered graph, lays it out on the plane and on the torus,
// pans the torus view, prints both metric reports and writes two SVGs.

#include <iostream>

#include "wraplay.hpp"

int main() {
  using namespace wraplay;

  CorpusSpec spec;
  spec.modularity_target = 0.3;
  spec.seed = 7;
  const ClusteredGraph cg = generate_partition_graph(spec);
  const DistanceMatrix dm = shortest_paths(cg.graph);
  std::cout << "nodes " << cg.graph.node_count() << ", edges " << cg.graph.edge_count() << ", modularity "
            << modularity(cg.graph, cg.clustering) << "\n";

  LayoutParams params;
  params.seed = 1;
  const FlatLayout flat = layout_flat(cg.graph, dm, params);
  TorusLayout torus = layout_torus_pairwise(cg.graph, dm, params);
  torus = apply_pan(torus, autopan_torus(torus, cg.graph));

  std::cout << "flat  " << dump(metrics_to_json(compute_metrics(flat, cg.graph, dm, &cg.clustering)));
  std::cout << "torus " << dump(metrics_to_json(compute_metrics(torus, cg.graph, dm, &cg.clustering)));

  RenderSpec rs;
  rs.clustering = &cg.clustering;
  rs.mode = RenderMode::Flat;
  write_file("quickstart_flat.svg", render(flat, cg.graph, rs));
  rs.mode = RenderMode::TorusPartial;
  write_file("quickstart_torus.svg", render(torus, cg.graph, rs));
  std::cout << "wrote quickstart_flat.svg and quickstart_torus.svg\n";
}
