#include "ggeval/perturb.hpp"

#include <algorithm>
#include <set>

#include "ggeval/error.hpp"
#include "ggeval/numfmt.hpp"
#include "ggeval/parallel.hpp"

namespace ggeval {

namespace {

std::pair<int, int> canonical(int u, int v) {
    return u < v ? std::make_pair(u, v) : std::make_pair(v, u);
}

Graph add_edges(const Graph& g, double p, RngStream& rng) {
    std::set<std::pair<int, int>> present(g.edges.begin(), g.edges.end());
    Graph out = g;
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v) {
            if (present.count({u, v}))
                continue;
            if (rng.bernoulli(p))
                out.edges.emplace_back(u, v);
        }
    return out;
}

Graph remove_edges(const Graph& g, double p, RngStream& rng) {
    Graph out = g;
    out.edges.clear();
    for (const auto& e : g.edges)
        if (!rng.bernoulli(p))
            out.edges.push_back(e);
    return out;
}

Graph rewire_edges(const Graph& g, double p, RngStream& rng) {
    std::set<std::pair<int, int>> edges(g.edges.begin(), g.edges.end());
    // Single pass over the original edge list; rewired edges swap one
    // endpoint but the edge count never changes.
    for (const auto& original : g.edges) {
        if (!rng.bernoulli(p))
            continue;
        if (g.n <= 2)
            continue;
        const bool keep_first = rng.bernoulli(0.5);
        const int keep = keep_first ? original.first : original.second;
        const int other = keep_first ? original.second : original.first;

        for (int attempt = 0; attempt < g.n; ++attempt) {
            // Uniform over vertices excluding keep and the original other
            // endpoint.
            int idx = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(g.n - 2)));
            int lo = std::min(keep, other);
            int hi = std::max(keep, other);
            if (idx >= lo)
                ++idx;
            if (idx >= hi)
                ++idx;

            if (edges.count(canonical(keep, idx)))
                continue;
            edges.erase(original);
            edges.insert(canonical(keep, idx));
            break;
        }
    }
    Graph out;
    out.id = g.id;
    out.n = g.n;
    out.edges.assign(edges.begin(), edges.end());
    return out;
}

Graph add_connected_nodes(const Graph& g, double p, int n_add, RngStream& rng) {
    Graph out = g;
    out.n = g.n + n_add;
    for (int w = g.n; w < out.n; ++w)
        for (int o = 0; o < g.n; ++o)
            if (rng.bernoulli(p))
                out.edges.emplace_back(o, w);
    return out;
}

}  // namespace

void validate_grid(const PerturbationLevelGrid& grid) {
    if (grid.levels.empty())
        throw ConfigError("perturbation level grid is empty");
    for (std::size_t i = 0; i < grid.levels.size(); ++i) {
        const double p = grid.levels[i];
        if (!(p >= 0.0 && p <= 1.0))
            throw ConfigError("perturbation level " + fmt_double(p) +
                              " lies outside [0,1]");
        if (i > 0 && !(p > grid.levels[i - 1]))
            throw ConfigError("perturbation levels must be strictly ascending");
    }
}

Graph perturb_graph(const Graph& g, const PerturbationSpec& spec, RngStream& rng) {
    if (!(spec.p >= 0.0 && spec.p <= 1.0))
        throw ConfigError("perturbation probability must lie in [0,1], got " +
                          fmt_double(spec.p));
    if (spec.kind == PerturbKind::ADD_CONNECTED_NODES && spec.n_add < 0)
        throw ConfigError("n_add must be non-negative");

    Graph out;
    switch (spec.kind) {
    case PerturbKind::ADD_EDGES:
        out = add_edges(g, spec.p, rng);
        break;
    case PerturbKind::REMOVE_EDGES:
        out = remove_edges(g, spec.p, rng);
        break;
    case PerturbKind::REWIRE_EDGES:
        out = rewire_edges(g, spec.p, rng);
        break;
    case PerturbKind::ADD_CONNECTED_NODES:
        out = add_connected_nodes(g, spec.p, spec.n_add, rng);
        break;
    }
    require_valid(out);
    return out;
}

std::vector<GraphSet> perturb_sweep(const GraphSet& set, PerturbKind kind,
                                    const PerturbationLevelGrid& grid,
                                    std::uint64_t seed, int n_add) {
    validate_grid(grid);
    if (set.graphs.empty())
        throw ConfigError("cannot perturb an empty set");

    std::vector<GraphSet> out(grid.levels.size());
    for (std::size_t l = 0; l < grid.levels.size(); ++l) {
        GraphSet& level_set = out[l];
        level_set.name = set.name;
        level_set.meta = set.meta;
        level_set.meta["perturbation"] = perturb_name(kind);
        level_set.meta["level"] = fmt_double(grid.levels[l]);
        level_set.meta["perturbation_seed"] = std::to_string(seed);
        if (kind == PerturbKind::ADD_CONNECTED_NODES)
            level_set.meta["n_add"] = std::to_string(n_add);
        level_set.graphs.resize(set.graphs.size());
    }

    PerturbationSpec spec;
    spec.kind = kind;
    spec.n_add = n_add;
    parallel_for(set.graphs.size(), [&](std::size_t i) {
        for (std::size_t l = 0; l < grid.levels.size(); ++l) {
            RngStream rng = RngStream::derive(
                seed, {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(l)});
            PerturbationSpec level_spec = spec;
            level_spec.p = grid.levels[l];
            out[l].graphs[i] = perturb_graph(set.graphs[i], level_spec, rng);
        }
    });
    return out;
}

std::string perturb_name(PerturbKind kind) {
    switch (kind) {
    case PerturbKind::ADD_EDGES: return "add-edges";
    case PerturbKind::REMOVE_EDGES: return "remove-edges";
    case PerturbKind::REWIRE_EDGES: return "rewire-edges";
    case PerturbKind::ADD_CONNECTED_NODES: return "add-connected-nodes";
    }
    throw ConfigError("unknown perturbation kind");
}

PerturbKind perturb_from_name(const std::string& name) {
    if (name == "add-edges") return PerturbKind::ADD_EDGES;
    if (name == "remove-edges") return PerturbKind::REMOVE_EDGES;
    if (name == "rewire-edges") return PerturbKind::REWIRE_EDGES;
    if (name == "add-connected-nodes") return PerturbKind::ADD_CONNECTED_NODES;
    throw ConfigError("unknown perturbation kind: " + name);
}

}  // namespace ggeval
