#include "ggeval/descriptors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "ggeval/error.hpp"
#include "ggeval/parallel.hpp"

namespace ggeval {

namespace {

// Bin index on [0, range] with a right-closed last bin.
int bin_index(double x, double range, int n_bin) {
    int idx = static_cast<int>(x / range * n_bin);
    return std::min(idx, n_bin - 1);
}

void check_bins(int n_bin) {
    if (n_bin < 1)
        throw ConfigError("histogram needs at least 1 bin");
}

}  // namespace

Histogram degree_histogram(const Graph& g, int n_bin, bool normalize) {
    check_bins(n_bin);
    Histogram h;
    h.support = HistogramSupport::DEGREE_COUNTS;
    h.normalized = normalize;
    h.values.assign(static_cast<std::size_t>(n_bin), 0.0);
    for (int d : degrees(g)) {
        if (d >= n_bin) {
            std::ostringstream os;
            os << "degree " << d << " in graph " << g.id << " does not fit into "
               << n_bin << " bins";
            throw ConfigError(os.str());
        }
        h.values[static_cast<std::size_t>(d)] += 1.0;
    }
    if (normalize && g.n > 0)
        for (double& v : h.values)
            v /= g.n;
    return h;
}

std::vector<double> local_clustering(const Graph& g) {
    const auto adj = adjacency_lists(g);
    std::vector<double> coeff(static_cast<std::size_t>(std::max(g.n, 0)), 0.0);
    for (int v = 0; v < g.n; ++v) {
        const auto& nbrs = adj[static_cast<std::size_t>(v)];
        const int d = static_cast<int>(nbrs.size());
        if (d < 2)
            continue;
        int links = 0;
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                const auto& a = adj[static_cast<std::size_t>(nbrs[i])];
                if (std::binary_search(a.begin(), a.end(), nbrs[j]))
                    ++links;
            }
        coeff[static_cast<std::size_t>(v)] =
            2.0 * links / (static_cast<double>(d) * (d - 1));
    }
    return coeff;
}

Histogram clustering_histogram(const Graph& g, int n_bin) {
    check_bins(n_bin);
    Histogram h;
    h.support = HistogramSupport::UNIT_INTERVAL;
    h.normalized = true;
    h.values.assign(static_cast<std::size_t>(n_bin), 0.0);
    for (double c : local_clustering(g))
        h.values[static_cast<std::size_t>(bin_index(c, 1.0, n_bin))] += 1.0;
    if (g.n > 0)
        for (double& v : h.values)
            v /= g.n;
    return h;
}

std::vector<double> laplacian_eigenvalues(const Graph& g) {
    const int n = std::max(g.n, 0);
    if (n == 0)
        return {};

    const auto deg = degrees(g);
    Eigen::VectorXd inv_sqrt(n);
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (int v = 0; v < n; ++v) {
        const int d = deg[static_cast<std::size_t>(v)];
        inv_sqrt(v) = d > 0 ? 1.0 / std::sqrt(static_cast<double>(d)) : 0.0;
        lap(v, v) = d > 0 ? 1.0 : 0.0;
    }
    for (const auto& [u, v] : g.edges) {
        const double w = -inv_sqrt(u) * inv_sqrt(v);
        lap(u, v) = w;
        lap(v, u) = w;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericError("eigensolver failed on graph " + g.id);

    std::vector<double> eig(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + n);
    for (double& x : eig) {
        if (x < -1e-9 || x > 2.0 + 1e-9) {
            std::ostringstream os;
            os << "eigenvalue " << x << " of graph " << g.id
               << " lies outside [0,2] beyond tolerance";
            throw NumericError(os.str());
        }
        x = std::clamp(x, 0.0, 2.0);
    }
    return eig;
}

Histogram spectrum_histogram(const Graph& g, int n_bin) {
    check_bins(n_bin);
    Histogram h;
    h.support = HistogramSupport::SPECTRUM_0_2;
    h.normalized = true;
    h.values.assign(static_cast<std::size_t>(n_bin), 0.0);
    for (double lambda : laplacian_eigenvalues(g))
        h.values[static_cast<std::size_t>(bin_index(lambda, 2.0, n_bin))] += 1.0;
    if (g.n > 0)
        for (double& v : h.values)
            v /= g.n;
    return h;
}

DescriptorSpec resolve_bins(const DescriptorSpec& spec,
                            std::span<const GraphSet* const> sets) {
    DescriptorSpec out = spec;
    if (spec.n_bin == AUTO_MAX_DEGREE) {
        if (spec.kind != DescriptorKind::DEGREE)
            throw ConfigError("auto bin count is only defined for the degree descriptor");
        int widest = 0;
        for (const GraphSet* set : sets)
            for (const Graph& g : set->graphs)
                widest = std::max(widest, max_degree(g));
        out.n_bin = widest + 1;
    }
    if (out.n_bin < 1)
        throw ConfigError("histogram needs at least 1 bin");
    return out;
}

std::vector<Histogram> describe_set(const GraphSet& set, const DescriptorSpec& spec) {
    if (spec.n_bin == AUTO_MAX_DEGREE)
        throw ConfigError("descriptor bin count is unresolved; call resolve_bins first");
    std::vector<Histogram> out(set.graphs.size());
    parallel_for(set.graphs.size(), [&](std::size_t i) {
        const Graph& g = set.graphs[i];
        switch (spec.kind) {
        case DescriptorKind::DEGREE:
            out[i] = degree_histogram(g, spec.n_bin, spec.normalize);
            break;
        case DescriptorKind::CLUSTERING:
            out[i] = clustering_histogram(g, spec.n_bin);
            break;
        case DescriptorKind::SPECTRAL:
            out[i] = spectrum_histogram(g, spec.n_bin);
            break;
        }
    });
    return out;
}

std::string descriptor_name(DescriptorKind kind) {
    switch (kind) {
    case DescriptorKind::DEGREE: return "degree";
    case DescriptorKind::CLUSTERING: return "clustering";
    case DescriptorKind::SPECTRAL: return "spectral";
    }
    throw ConfigError("unknown descriptor");
}

DescriptorKind descriptor_from_name(const std::string& name) {
    if (name == "degree") return DescriptorKind::DEGREE;
    if (name == "clustering") return DescriptorKind::CLUSTERING;
    if (name == "spectral") return DescriptorKind::SPECTRAL;
    throw ConfigError("unknown descriptor: " + name);
}

}  // namespace ggeval
