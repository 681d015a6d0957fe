#include "ggeval/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ggeval/error.hpp"

namespace ggeval {

void canonicalize(Graph& g) {
    for (auto& [u, v] : g.edges)
        if (u > v)
            std::swap(u, v);
    std::sort(g.edges.begin(), g.edges.end());
}

std::vector<std::string> validate_graph(const Graph& g) {
    std::vector<std::string> violations;
    // Phrased as "<kind> in graph <id> <detail>" so callers can match on
    // the kind + id prefix.
    auto report = [&](const std::string& kind, const std::string& detail) {
        std::ostringstream os;
        os << kind << " in graph " << g.id;
        if (!detail.empty())
            os << " " << detail;
        violations.push_back(os.str());
    };
    auto pair_str = [](int u, int v) {
        std::ostringstream os;
        os << "(" << u << "," << v << ")";
        return os.str();
    };

    if (g.n < 0)
        report("negative vertex count", "");

    for (const auto& [u, v] : g.edges) {
        if (u == v)
            report("self-loop", pair_str(u, v));
        if (u < 0 || v < 0 || u >= g.n || v >= g.n)
            report("edge endpoint out of range", pair_str(u, v));
    }
    for (std::size_t i = 1; i < g.edges.size(); ++i) {
        if (g.edges[i] == g.edges[i - 1])
            report("duplicate edge", pair_str(g.edges[i].first, g.edges[i].second));
    }
    return violations;
}

void require_valid(Graph& g) {
    canonicalize(g);
    auto violations = validate_graph(g);
    if (violations.empty())
        return;
    std::string msg;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i)
            msg += "; ";
        msg += violations[i];
    }
    throw ValidationError(msg);
}

std::vector<int> degrees(const Graph& g) {
    std::vector<int> deg(static_cast<std::size_t>(std::max(g.n, 0)), 0);
    for (const auto& [u, v] : g.edges) {
        ++deg[static_cast<std::size_t>(u)];
        ++deg[static_cast<std::size_t>(v)];
    }
    return deg;
}

int max_degree(const Graph& g) {
    int best = 0;
    for (int d : degrees(g))
        best = std::max(best, d);
    return best;
}

std::vector<std::vector<int>> adjacency_lists(const Graph& g) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(std::max(g.n, 0)));
    for (const auto& [u, v] : g.edges) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& nbrs : adj)
        std::sort(nbrs.begin(), nbrs.end());
    return adj;
}

namespace {

// Union-find over vertex ids.
struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void merge(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

int connected_components(const Graph& g) {
    if (g.n <= 0)
        return 0;
    DisjointSets ds(g.n);
    for (const auto& [u, v] : g.edges)
        ds.merge(u, v);
    int count = 0;
    for (int v = 0; v < g.n; ++v)
        if (ds.find(v) == v)
            ++count;
    return count;
}

bool same_graph(const Graph& a, const Graph& b) {
    return a.id == b.id && a.n == b.n && a.edges == b.edges;
}

}  // namespace ggeval
