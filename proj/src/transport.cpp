#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ggeval/error.hpp"
#include "ggeval/kernels.hpp"
#include "ggeval/numfmt.hpp"

namespace ggeval {

// Transportation problem via successive shortest paths with node
// potentials. The network is bipartite (sources with positive supply,
// sinks with positive demand) plus a super-source and super-sink; every
// augmentation runs one dense Dijkstra over reduced costs, which stay
// non-negative because the potentials absorb the shortest-path distances.
//
// Each augmentation pushes the exact bottleneck value, so residual
// supplies, demands and flows hit exact zeros and arc availability never
// depends on an epsilon. The loop ends when either side is drained; a
// leftover within the input mass tolerance is legal.
double transport_cost(const std::vector<double>& supply,
                      const std::vector<double>& demand,
                      const Eigen::MatrixXd& cost) {
    if (static_cast<std::size_t>(cost.rows()) != supply.size() ||
        static_cast<std::size_t>(cost.cols()) != demand.size())
        throw ConfigError("cost matrix shape does not match supply/demand");

    double total_supply = 0.0, total_demand = 0.0;
    for (double s : supply) {
        if (s < 0.0)
            throw ConfigError("negative supply entry " + fmt_double(s));
        total_supply += s;
    }
    for (double d : demand) {
        if (d < 0.0)
            throw ConfigError("negative demand entry " + fmt_double(d));
        total_demand += d;
    }
    const double mass_tol = 1e-9 * std::max(1.0, std::max(total_supply, total_demand));
    if (std::abs(total_supply - total_demand) > mass_tol)
        throw ConfigError("transport needs equal total mass, got " +
                          fmt_double(total_supply) + " vs " + fmt_double(total_demand));

    std::vector<int> sources, sinks;
    for (std::size_t i = 0; i < supply.size(); ++i)
        if (supply[i] > 0.0)
            sources.push_back(static_cast<int>(i));
    for (std::size_t j = 0; j < demand.size(); ++j)
        if (demand[j] > 0.0)
            sinks.push_back(static_cast<int>(j));
    if (sources.empty() || sinks.empty())
        return 0.0;

    const int ns = static_cast<int>(sources.size());
    const int nt = static_cast<int>(sinks.size());
    auto arc_cost = [&](int i, int j) {
        return cost(sources[static_cast<std::size_t>(i)],
                    sinks[static_cast<std::size_t>(j)]);
    };
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nt; ++j)
            if (!(arc_cost(i, j) >= 0.0))
                throw ConfigError("transport costs must be non-negative");

    // Node numbering: 0 super-source, 1..ns sources, ns+1..ns+nt sinks,
    // ns+nt+1 super-sink.
    const int n_nodes = ns + nt + 2;
    const int src = 0;
    const int dst = ns + nt + 1;
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<double> rem_supply(static_cast<std::size_t>(ns));
    std::vector<double> rem_demand(static_cast<std::size_t>(nt));
    for (int i = 0; i < ns; ++i)
        rem_supply[static_cast<std::size_t>(i)] =
            supply[static_cast<std::size_t>(sources[static_cast<std::size_t>(i)])];
    for (int j = 0; j < nt; ++j)
        rem_demand[static_cast<std::size_t>(j)] =
            demand[static_cast<std::size_t>(sinks[static_cast<std::size_t>(j)])];

    Eigen::MatrixXd flow = Eigen::MatrixXd::Zero(ns, nt);
    std::vector<double> potential(static_cast<std::size_t>(n_nodes), 0.0);
    std::vector<double> dist(static_cast<std::size_t>(n_nodes));
    std::vector<int> parent(static_cast<std::size_t>(n_nodes));
    std::vector<char> done(static_cast<std::size_t>(n_nodes));

    const double residue_ok = 2.0 * mass_tol;
    const long max_iter = static_cast<long>(ns) * nt + 10L * (ns + nt) + 100L;

    for (long iter = 0;; ++iter) {
        double rs = 0.0, rd = 0.0;
        for (double v : rem_supply)
            rs += v;
        for (double v : rem_demand)
            rd += v;
        if (std::min(rs, rd) <= residue_ok * 1e-3)
            break;
        if (iter >= max_iter)
            throw NumericError("transport solver did not converge");

        std::fill(dist.begin(), dist.end(), inf);
        std::fill(parent.begin(), parent.end(), -1);
        std::fill(done.begin(), done.end(), 0);
        dist[src] = 0.0;

        for (int round = 0; round < n_nodes; ++round) {
            int u = -1;
            double best = inf;
            for (int v = 0; v < n_nodes; ++v)
                if (!done[static_cast<std::size_t>(v)] &&
                    dist[static_cast<std::size_t>(v)] < best) {
                    best = dist[static_cast<std::size_t>(v)];
                    u = v;
                }
            if (u < 0)
                break;
            done[static_cast<std::size_t>(u)] = 1;
            const double du = dist[static_cast<std::size_t>(u)];

            auto relax = [&](int v, double rc) {
                if (du + rc < dist[static_cast<std::size_t>(v)]) {
                    dist[static_cast<std::size_t>(v)] = du + rc;
                    parent[static_cast<std::size_t>(v)] = u;
                }
            };

            if (u == src) {
                for (int i = 0; i < ns; ++i)
                    if (rem_supply[static_cast<std::size_t>(i)] > 0.0)
                        relax(1 + i, potential[static_cast<std::size_t>(src)] -
                                         potential[static_cast<std::size_t>(1 + i)]);
            } else if (u <= ns) {
                const int i = u - 1;
                for (int j = 0; j < nt; ++j)
                    relax(ns + 1 + j,
                          arc_cost(i, j) + potential[static_cast<std::size_t>(u)] -
                              potential[static_cast<std::size_t>(ns + 1 + j)]);
            } else if (u < dst) {
                const int j = u - ns - 1;
                if (rem_demand[static_cast<std::size_t>(j)] > 0.0)
                    relax(dst, potential[static_cast<std::size_t>(u)] -
                                   potential[static_cast<std::size_t>(dst)]);
                for (int i = 0; i < ns; ++i)
                    if (flow(i, j) > 0.0)
                        relax(1 + i,
                              -arc_cost(i, j) + potential[static_cast<std::size_t>(u)] -
                                  potential[static_cast<std::size_t>(1 + i)]);
            }
        }

        if (dist[static_cast<std::size_t>(dst)] == inf) {
            // Only the imbalance residue should be left at this point.
            if (std::min(rs, rd) <= residue_ok)
                break;
            throw NumericError("transport solver stalled with mass remaining");
        }

        for (int v = 0; v < n_nodes; ++v)
            if (dist[static_cast<std::size_t>(v)] < inf)
                potential[static_cast<std::size_t>(v)] += dist[static_cast<std::size_t>(v)];

        // Bottleneck along the augmenting path.
        double push = std::min(rs, rd);
        for (int v = dst; v != src; v = parent[static_cast<std::size_t>(v)]) {
            const int u = parent[static_cast<std::size_t>(v)];
            if (u == src)
                push = std::min(push, rem_supply[static_cast<std::size_t>(v - 1)]);
            else if (v == dst)
                push = std::min(push, rem_demand[static_cast<std::size_t>(u - ns - 1)]);
            else if (u <= ns && v > ns) {
                // forward source -> sink arc, unlimited capacity
            } else {
                push = std::min(push, flow(v - 1, u - ns - 1));
            }
        }

        for (int v = dst; v != src; v = parent[static_cast<std::size_t>(v)]) {
            const int u = parent[static_cast<std::size_t>(v)];
            if (u == src)
                rem_supply[static_cast<std::size_t>(v - 1)] -= push;
            else if (v == dst)
                rem_demand[static_cast<std::size_t>(u - ns - 1)] -= push;
            else if (u <= ns && v > ns)
                flow(u - 1, v - ns - 1) += push;
            else
                flow(v - 1, u - ns - 1) -= push;
        }
    }

    double total = 0.0;
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nt; ++j)
            total += flow(i, j) * arc_cost(i, j);
    return total;
}

}  // namespace ggeval
