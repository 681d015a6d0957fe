#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ggeval/graph.hpp"
#include "ggeval/rng.hpp"

namespace ggeval {

// Edge-level noise models applied independently per graph:
//   ADD_EDGES            every non-adjacent pair becomes an edge with p
//   REMOVE_EDGES         every edge is deleted with p
//   REWIRE_EDGES         every edge is selected with p; a fair coin keeps
//                        one endpoint and the other is redrawn uniformly
//                        from the remaining vertices; a draw that collides
//                        with an existing edge is retried up to |V| times,
//                        then the original edge is kept. Edge count is
//                        preserved exactly.
//   ADD_CONNECTED_NODES  n_add new vertices, each old-new pair wired with p
enum class PerturbKind { ADD_EDGES, REMOVE_EDGES, REWIRE_EDGES, ADD_CONNECTED_NODES };

struct PerturbationSpec {
    PerturbKind kind = PerturbKind::ADD_EDGES;
    double p = 0.0;
    int n_add = 0;  // ADD_CONNECTED_NODES only
};

// Perturbation strengths to sweep; must be strictly ascending within [0,1].
struct PerturbationLevelGrid {
    std::vector<double> levels;
};

void validate_grid(const PerturbationLevelGrid& grid);

Graph perturb_graph(const Graph& g, const PerturbationSpec& spec, RngStream& rng);

// One perturbed copy of the whole set per level. Graph i at level l uses
// the stream derived from (seed, i, l), so single graphs and whole levels
// can be reproduced in isolation. Output meta records kind, level and seed.
std::vector<GraphSet> perturb_sweep(const GraphSet& set, PerturbKind kind,
                                    const PerturbationLevelGrid& grid,
                                    std::uint64_t seed, int n_add = 0);

std::string perturb_name(PerturbKind kind);
PerturbKind perturb_from_name(const std::string& name);

}  // namespace ggeval
