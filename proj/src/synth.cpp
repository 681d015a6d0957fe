#include "ggeval/synth.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

#include "ggeval/error.hpp"
#include "ggeval/numfmt.hpp"
#include "ggeval/rng.hpp"

namespace ggeval {

namespace {

void check_prob(double p, const std::string& name) {
    if (!(p >= 0.0 && p <= 1.0))
        throw ConfigError(name + " must lie in [0,1], got " + fmt_double(p));
}

Graph erdos_renyi(int n, double p, RngStream& rng) {
    Graph g;
    g.n = n;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p))
                g.edges.emplace_back(u, v);
    return g;
}

Graph barabasi_albert(int n, int m, RngStream& rng) {
    Graph g;
    g.n = n;
    std::vector<int> degree(static_cast<std::size_t>(n), 0);

    // m isolated seeds; vertices m..n-1 each attach to m distinct existing
    // vertices with probability proportional to degree + 1. Weights are
    // frozen while one vertex picks its m targets.
    for (int t = m; t < n; ++t) {
        std::vector<char> picked(static_cast<std::size_t>(t), 0);
        double total = 0.0;
        for (int v = 0; v < t; ++v)
            total += degree[static_cast<std::size_t>(v)] + 1.0;

        int chosen = 0;
        while (chosen < m) {
            double r = rng.uniform() * total;
            int target = t - 1;
            double acc = 0.0;
            for (int v = 0; v < t; ++v) {
                acc += degree[static_cast<std::size_t>(v)] + 1.0;
                if (r < acc) {
                    target = v;
                    break;
                }
            }
            if (picked[static_cast<std::size_t>(target)])
                continue;
            picked[static_cast<std::size_t>(target)] = 1;
            g.edges.emplace_back(target, t);
            ++chosen;
        }
        for (int v = 0; v < t; ++v)
            if (picked[static_cast<std::size_t>(v)])
                ++degree[static_cast<std::size_t>(v)];
        degree[static_cast<std::size_t>(t)] += m;
    }
    return g;
}

Graph watts_strogatz(int n, int k, double p_rewire, RngStream& rng) {
    std::set<std::pair<int, int>> edges;
    auto canonical = [](int u, int v) {
        return u < v ? std::make_pair(u, v) : std::make_pair(v, u);
    };
    for (int u = 0; u < n; ++u)
        for (int j = 1; j <= k / 2; ++j)
            edges.insert(canonical(u, (u + j) % n));

    // Visit lattice edges in their construction order; each one is rewired
    // with probability p_rewire to a currently non-adjacent endpoint. If u
    // is already adjacent to everyone the edge is kept.
    for (int u = 0; u < n; ++u) {
        for (int j = 1; j <= k / 2; ++j) {
            int v = (u + j) % n;
            if (!rng.bernoulli(p_rewire))
                continue;
            std::vector<int> candidates;
            for (int w = 0; w < n; ++w)
                if (w != u && !edges.count(canonical(u, w)))
                    candidates.push_back(w);
            if (candidates.empty())
                continue;
            int w = candidates[static_cast<std::size_t>(
                rng.uniform_int(candidates.size()))];
            edges.erase(canonical(u, v));
            edges.insert(canonical(u, w));
        }
    }

    Graph g;
    g.n = n;
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

Graph community_graph(int n, int c, double p_intra, double p_inter, RngStream& rng) {
    // Blocks as equal as possible: the first n % c blocks get one extra vertex.
    std::vector<int> block(static_cast<std::size_t>(n));
    int v = 0;
    for (int b = 0; b < c; ++b) {
        int size = n / c + (b < n % c ? 1 : 0);
        for (int i = 0; i < size; ++i)
            block[static_cast<std::size_t>(v++)] = b;
    }

    Graph g;
    g.n = n;
    for (int u = 0; u < n; ++u)
        for (int w = u + 1; w < n; ++w) {
            double p = block[static_cast<std::size_t>(u)] == block[static_cast<std::size_t>(w)]
                           ? p_intra
                           : p_inter;
            if (rng.bernoulli(p))
                g.edges.emplace_back(u, w);
        }
    return g;
}

}  // namespace

void validate_spec(const GeneratorSpec& spec) {
    if (spec.n_graphs < 1)
        throw ConfigError("n_graphs must be at least 1");
    if (spec.nodes_lo < 1)
        throw ConfigError("nodes_lo must be at least 1");
    if (spec.nodes_hi < spec.nodes_lo)
        throw ConfigError("nodes_hi must be >= nodes_lo");

    switch (spec.family) {
    case GraphFamily::ER:
        check_prob(spec.p_edge, "p_edge");
        break;
    case GraphFamily::BA:
        if (spec.ba_m < 1)
            throw ConfigError("ba m must be at least 1");
        if (spec.ba_m >= spec.nodes_lo)
            throw ConfigError("ba m must be smaller than nodes_lo");
        break;
    case GraphFamily::WS:
        if (spec.ws_k < 2 || spec.ws_k % 2 != 0)
            throw ConfigError("ws k must be even and at least 2");
        if (spec.ws_k >= spec.nodes_lo)
            throw ConfigError("ws k must be smaller than nodes_lo");
        check_prob(spec.ws_p_rewire, "p_rewire");
        break;
    case GraphFamily::COMMUNITY:
        if (spec.communities < 1)
            throw ConfigError("communities must be at least 1");
        if (spec.communities > spec.nodes_lo)
            throw ConfigError("communities must not exceed nodes_lo");
        check_prob(spec.p_intra, "p_intra");
        check_prob(spec.p_inter, "p_inter");
        break;
    }
}

GraphSet generate_dataset(const GeneratorSpec& spec, std::uint64_t seed) {
    validate_spec(spec);

    GraphSet set;
    set.name = family_name(spec.family);
    set.meta["family"] = family_name(spec.family);
    set.meta["n_graphs"] = std::to_string(spec.n_graphs);
    set.meta["nodes_lo"] = std::to_string(spec.nodes_lo);
    set.meta["nodes_hi"] = std::to_string(spec.nodes_hi);
    set.meta["seed"] = std::to_string(seed);
    switch (spec.family) {
    case GraphFamily::ER:
        set.meta["p_edge"] = fmt_double(spec.p_edge);
        break;
    case GraphFamily::BA:
        set.meta["m"] = std::to_string(spec.ba_m);
        break;
    case GraphFamily::WS:
        set.meta["k"] = std::to_string(spec.ws_k);
        set.meta["p_rewire"] = fmt_double(spec.ws_p_rewire);
        break;
    case GraphFamily::COMMUNITY:
        set.meta["communities"] = std::to_string(spec.communities);
        set.meta["p_intra"] = fmt_double(spec.p_intra);
        set.meta["p_inter"] = fmt_double(spec.p_inter);
        break;
    }

    set.graphs.resize(static_cast<std::size_t>(spec.n_graphs));
    for (int i = 0; i < spec.n_graphs; ++i) {
        RngStream rng = RngStream::derive(seed, {static_cast<std::uint64_t>(i)});
        int span = spec.nodes_hi - spec.nodes_lo + 1;
        int n = spec.nodes_lo +
                static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(span)));

        Graph g;
        switch (spec.family) {
        case GraphFamily::ER:
            g = erdos_renyi(n, spec.p_edge, rng);
            break;
        case GraphFamily::BA:
            g = barabasi_albert(n, spec.ba_m, rng);
            break;
        case GraphFamily::WS:
            g = watts_strogatz(n, spec.ws_k, spec.ws_p_rewire, rng);
            break;
        case GraphFamily::COMMUNITY:
            g = community_graph(n, spec.communities, spec.p_intra, spec.p_inter, rng);
            break;
        }
        g.id = "g" + std::to_string(i);
        require_valid(g);
        set.graphs[static_cast<std::size_t>(i)] = std::move(g);
    }
    return set;
}

std::string family_name(GraphFamily f) {
    switch (f) {
    case GraphFamily::ER: return "er";
    case GraphFamily::BA: return "ba";
    case GraphFamily::WS: return "ws";
    case GraphFamily::COMMUNITY: return "community";
    }
    throw ConfigError("unknown graph family");
}

GraphFamily family_from_name(const std::string& name) {
    if (name == "er") return GraphFamily::ER;
    if (name == "ba") return GraphFamily::BA;
    if (name == "ws") return GraphFamily::WS;
    if (name == "community") return GraphFamily::COMMUNITY;
    throw ConfigError("unknown graph family: " + name);
}

}  // namespace ggeval
