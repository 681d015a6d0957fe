#include <doctest.h>

#include <cmath>
#include <set>

#include "ggeval/error.hpp"
#include "ggeval/perturb.hpp"
#include "ggeval/synth.hpp"

using namespace ggeval;

namespace {

Graph make(std::string id, int n, std::vector<std::pair<int, int>> edges) {
    Graph g;
    g.id = std::move(id);
    g.n = n;
    g.edges = std::move(edges);
    canonicalize(g);
    return g;
}

Graph apply(const Graph& g, PerturbKind kind, double p, std::uint64_t seed, int n_add = 0) {
    PerturbationSpec spec;
    spec.kind = kind;
    spec.p = p;
    spec.n_add = n_add;
    RngStream rng(seed);
    return perturb_graph(g, spec, rng);
}

GraphSet er_set(int n_graphs, int nodes, double p, std::uint64_t seed) {
    GeneratorSpec spec;
    spec.family = GraphFamily::ER;
    spec.n_graphs = n_graphs;
    spec.nodes_lo = nodes;
    spec.nodes_hi = nodes;
    spec.p_edge = p;
    return generate_dataset(spec, seed);
}

}  // namespace

TEST_CASE("level zero leaves every kind untouched") {
    const Graph g = make("a", 8, {{0, 1}, {1, 2}, {2, 3}, {4, 5}});
    for (PerturbKind kind : {PerturbKind::ADD_EDGES, PerturbKind::REMOVE_EDGES,
                             PerturbKind::REWIRE_EDGES}) {
        const Graph out = apply(g, kind, 0.0, 9);
        CHECK(same_graph(out, g));
    }
}

TEST_CASE("add-edges at level one completes the graph") {
    const Graph g = make("a", 6, {{0, 1}});
    const Graph out = apply(g, PerturbKind::ADD_EDGES, 1.0, 1);
    CHECK(static_cast<int>(out.edges.size()) == 6 * 5 / 2);
}

TEST_CASE("remove-edges at level one clears the graph") {
    const Graph g = make("a", 6, {{0, 1}, {2, 3}, {4, 5}});
    CHECK(apply(g, PerturbKind::REMOVE_EDGES, 1.0, 1).edges.empty());
}

TEST_CASE("remove-edges keeps roughly the expected count") {
    GraphSet set = er_set(30, 25, 0.4, 3);
    double kept = 0, total = 0;
    for (std::size_t i = 0; i < set.graphs.size(); ++i) {
        const Graph& g = set.graphs[i];
        total += static_cast<double>(g.edges.size());
        kept += static_cast<double>(
            apply(g, PerturbKind::REMOVE_EDGES, 0.3, 100 + i).edges.size());
    }
    const double se = std::sqrt(total * 0.3 * 0.7);
    CHECK(std::abs(kept - 0.7 * total) < 5 * se);
}

TEST_CASE("add-edges grows monotonically with the level on average") {
    GraphSet set = er_set(20, 20, 0.2, 4);
    double added_low = 0, added_high = 0;
    for (std::size_t i = 0; i < set.graphs.size(); ++i) {
        const Graph& g = set.graphs[i];
        const auto base = static_cast<double>(g.edges.size());
        added_low +=
            static_cast<double>(apply(g, PerturbKind::ADD_EDGES, 0.1, i).edges.size()) - base;
        added_high +=
            static_cast<double>(apply(g, PerturbKind::ADD_EDGES, 0.5, i).edges.size()) - base;
    }
    CHECK(added_low > 0);
    CHECK(added_high > 2 * added_low);
}

TEST_CASE("rewire-edges preserves the edge count exactly") {
    GraphSet set = er_set(25, 18, 0.3, 5);
    for (std::size_t i = 0; i < set.graphs.size(); ++i) {
        const Graph& g = set.graphs[i];
        for (double p : {0.1, 0.5, 1.0}) {
            Graph out = apply(g, PerturbKind::REWIRE_EDGES, p, 10 * i + 1);
            CHECK(out.edges.size() == g.edges.size());
            CHECK_NOTHROW(require_valid(out));
        }
    }
}

TEST_CASE("rewire-edges at full strength actually moves edges") {
    const GraphSet set = er_set(10, 20, 0.25, 6);
    int moved = 0;
    for (std::size_t i = 0; i < set.graphs.size(); ++i) {
        const Graph out = apply(set.graphs[i], PerturbKind::REWIRE_EDGES, 1.0, i);
        if (!same_graph(out, set.graphs[i]))
            ++moved;
    }
    CHECK(moved == 10);
}

TEST_CASE("rewiring keeps one endpoint of each rewired edge") {
    // On a star every edge contains the hub, so every rewired edge must
    // still touch either the hub or its old leaf.
    const Graph g = make("s", 10, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    const Graph out = apply(g, PerturbKind::REWIRE_EDGES, 1.0, 17);
    CHECK(out.edges.size() == 5);
    std::set<int> old_leaves = {1, 2, 3, 4, 5};
    for (const auto& [u, v] : out.edges) {
        const bool touches_old = u == 0 || v == 0 || old_leaves.count(u) || old_leaves.count(v);
        CHECK(touches_old);
    }
}

TEST_CASE("rewire on a two-vertex graph keeps the only edge") {
    const Graph g = make("k2", 2, {{0, 1}});
    const Graph out = apply(g, PerturbKind::REWIRE_EDGES, 1.0, 3);
    CHECK(same_graph(out, g));
}

TEST_CASE("add-connected-nodes appends wired vertices") {
    const Graph g = make("a", 5, {{0, 1}, {2, 3}});
    SUBCASE("full wiring") {
        const Graph out = apply(g, PerturbKind::ADD_CONNECTED_NODES, 1.0, 2, 3);
        CHECK(out.n == 8);
        CHECK(out.edges.size() == g.edges.size() + 3 * 5);
    }
    SUBCASE("no wiring") {
        const Graph out = apply(g, PerturbKind::ADD_CONNECTED_NODES, 0.0, 2, 3);
        CHECK(out.n == 8);
        CHECK(out.edges.size() == g.edges.size());
    }
    SUBCASE("new vertices never connect among themselves") {
        const Graph out = apply(g, PerturbKind::ADD_CONNECTED_NODES, 1.0, 2, 4);
        for (const auto& [u, v] : out.edges)
            CHECK((u < 5 || v < 5));
    }
}

TEST_CASE("perturb_graph validates the level") {
    const Graph g = make("a", 3, {{0, 1}});
    PerturbationSpec spec;
    spec.kind = PerturbKind::ADD_EDGES;
    spec.p = 1.5;
    RngStream rng(1);
    CHECK_THROWS_AS(perturb_graph(g, spec, rng), ConfigError);
    spec.p = -0.1;
    CHECK_THROWS_AS(perturb_graph(g, spec, rng), ConfigError);
    spec.kind = PerturbKind::ADD_CONNECTED_NODES;
    spec.p = 0.5;
    spec.n_add = -1;
    CHECK_THROWS_AS(perturb_graph(g, spec, rng), ConfigError);
}

TEST_CASE("level grids must be ascending within [0,1]") {
    CHECK_NOTHROW(validate_grid({{0.0, 0.5, 1.0}}));
    CHECK_THROWS_AS(validate_grid({{}}), ConfigError);
    CHECK_THROWS_AS(validate_grid({{0.5, 0.5}}), ConfigError);
    CHECK_THROWS_AS(validate_grid({{0.5, 0.2}}), ConfigError);
    CHECK_THROWS_AS(validate_grid({{-0.1, 0.5}}), ConfigError);
    CHECK_THROWS_AS(validate_grid({{0.5, 1.2}}), ConfigError);
}

TEST_CASE("perturb_sweep is deterministic and labels its output") {
    const GraphSet base = er_set(6, 12, 0.3, 8);
    const PerturbationLevelGrid grid{{0.0, 0.25, 0.5}};
    const auto a = perturb_sweep(base, PerturbKind::REWIRE_EDGES, grid, 21);
    const auto b = perturb_sweep(base, PerturbKind::REWIRE_EDGES, grid, 21);
    REQUIRE(a.size() == 3);
    for (std::size_t l = 0; l < 3; ++l) {
        REQUIRE(a[l].graphs.size() == base.graphs.size());
        for (std::size_t i = 0; i < base.graphs.size(); ++i)
            CHECK(same_graph(a[l].graphs[i], b[l].graphs[i]));
        CHECK(a[l].meta.at("perturbation") == "rewire-edges");
        CHECK(a[l].meta.at("perturbation_seed") == "21");
    }
    CHECK(a[0].meta.at("level") == "0");
    CHECK(a[1].meta.at("level") == "0.25");
    CHECK(a[2].meta.at("level") == "0.5");

    // level 0 is the identity copy
    for (std::size_t i = 0; i < base.graphs.size(); ++i)
        CHECK(same_graph(a[0].graphs[i], base.graphs[i]));

    const auto c = perturb_sweep(base, PerturbKind::REWIRE_EDGES, grid, 22);
    bool differs = false;
    for (std::size_t i = 0; i < base.graphs.size(); ++i)
        differs = differs || !same_graph(a[2].graphs[i], c[2].graphs[i]);
    CHECK(differs);
}

TEST_CASE("each graph gets its own stream") {
    // Two identical graphs in one set must not receive identical noise.
    Graph g = make("g0", 12, {});
    for (int u = 0; u < 12; ++u)
        for (int v = u + 1; v < 12 && v < u + 3; ++v)
            g.edges.emplace_back(u, v);
    canonicalize(g);
    GraphSet base;
    base.name = "twins";
    Graph g1 = g;
    g1.id = "g1";
    base.graphs = {g, g1};

    const auto out =
        perturb_sweep(base, PerturbKind::REWIRE_EDGES, PerturbationLevelGrid{{0.8}}, 5);
    Graph a = out[0].graphs[0];
    Graph b = out[0].graphs[1];
    b.id = a.id;
    CHECK_FALSE(same_graph(a, b));
}

TEST_CASE("perturbation names round-trip") {
    for (PerturbKind k : {PerturbKind::ADD_EDGES, PerturbKind::REMOVE_EDGES,
                          PerturbKind::REWIRE_EDGES, PerturbKind::ADD_CONNECTED_NODES})
        CHECK(perturb_from_name(perturb_name(k)) == k);
    CHECK_THROWS_AS(perturb_from_name("swap-edges"), ConfigError);
}
