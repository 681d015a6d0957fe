#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ggeval {

// Undirected simple graph on vertices 0..n-1. Edges are held in canonical
// form: each pair stored as (min, max), the list sorted lexicographically
// with no duplicates. n = 0 (empty graph) and isolated vertices are legal.
struct Graph {
    std::string id;
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

// Ordered collection of graphs plus free-form provenance metadata
// (generator family, parameters, seed, perturbation level, ...).
// Graphs may repeat; sampling a generator can produce duplicates.
struct GraphSet {
    std::string name;
    std::vector<Graph> graphs;
    std::map<std::string, std::string> meta;
};

// Sorts edges into canonical order. Duplicates are kept; they are a
// validation error, not something to merge silently.
void canonicalize(Graph& g);

// All invariant violations of g (self-loops, out-of-range endpoints,
// duplicate edges, negative n). Empty result means valid. Assumes
// canonical form for duplicate detection.
std::vector<std::string> validate_graph(const Graph& g);

// Canonicalizes, then throws ValidationError listing every violation.
void require_valid(Graph& g);

// Degree of each vertex.
std::vector<int> degrees(const Graph& g);

// Max degree; 0 for an edgeless or empty graph.
int max_degree(const Graph& g);

// Sorted neighbor lists.
std::vector<std::vector<int>> adjacency_lists(const Graph& g);

// Number of connected components. Isolated vertices count; the empty
// graph has 0.
int connected_components(const Graph& g);

// Structural equality on (id, n, canonical edge list).
bool same_graph(const Graph& a, const Graph& b);

}  // namespace ggeval
