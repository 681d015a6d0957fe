#pragma once

#include <cstdint>
#include <string>

#include "ggeval/graph.hpp"

namespace ggeval {

enum class GraphFamily { ER, BA, WS, COMMUNITY };

struct GeneratorSpec {
    GraphFamily family = GraphFamily::ER;
    int n_graphs = 0;
    // Node counts are drawn uniformly from [nodes_lo, nodes_hi].
    int nodes_lo = 0;
    int nodes_hi = 0;

    // ER: every vertex pair is an edge independently with p_edge.
    double p_edge = 0.5;

    // BA: m seed vertices, then each new vertex attaches to m distinct
    // existing vertices sampled proportionally to degree + 1, giving
    // exactly m * (n - m) edges. Requires m < nodes_lo.
    int ba_m = 1;

    // WS: ring lattice with k/2 neighbors per side (k even, k < nodes_lo),
    // then each lattice edge is rewired with probability p_rewire to a
    // uniformly chosen non-adjacent endpoint.
    int ws_k = 2;
    double ws_p_rewire = 0.0;

    // COMMUNITY: `communities` near-equal blocks, ER(p_intra) inside a
    // block, cross-block edges with p_inter.
    int communities = 2;
    double p_intra = 0.7;
    double p_inter = 0.05;
};

// Throws ConfigError naming the offending parameter.
void validate_spec(const GeneratorSpec& spec);

// Deterministic in (spec, seed). Graph i is produced from a stream derived
// from (seed, i), so its structure does not depend on how many graphs are
// requested or in which order they are realized. Ids are "g0".."g{N-1}";
// meta records the family, its parameters and the seed.
GraphSet generate_dataset(const GeneratorSpec& spec, std::uint64_t seed);

std::string family_name(GraphFamily f);
GraphFamily family_from_name(const std::string& name);

}  // namespace ggeval
