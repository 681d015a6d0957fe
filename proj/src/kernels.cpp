#include "ggeval/kernels.hpp"

#include <cmath>

#include "ggeval/error.hpp"
#include "ggeval/numfmt.hpp"
#include "ggeval/parallel.hpp"

namespace ggeval {

namespace {

void check_scale(double s, const std::string& name) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw ConfigError(name + " must be positive and finite, got " + fmt_double(s));
}

void check_pair(const Histogram& x, const Histogram& y) {
    if (x.values.size() != y.values.size())
        throw ConfigError("histogram lengths differ: " +
                          std::to_string(x.values.size()) + " vs " +
                          std::to_string(y.values.size()));
    if (x.support != y.support)
        throw ConfigError("histogram supports differ");
}

}  // namespace

KernelSpec KernelSpec::linear() { return KernelSpec(KernelFamily::LINEAR, 0.0); }

KernelSpec KernelSpec::rbf(double sigma) {
    check_scale(sigma, "sigma");
    return KernelSpec(KernelFamily::RBF_EUCLIDEAN, sigma);
}

KernelSpec KernelSpec::laplacian_tv(double lambda) {
    check_scale(lambda, "lambda");
    return KernelSpec(KernelFamily::LAPLACIAN_TV, lambda);
}

KernelSpec KernelSpec::emd_gaussian(double sigma) {
    check_scale(sigma, "sigma");
    return KernelSpec(KernelFamily::EMD_GAUSSIAN, sigma);
}

KernelSpec KernelSpec::rbf_tv(double sigma, bool allow_indefinite) {
    check_scale(sigma, "sigma");
    if (!allow_indefinite)
        throw ConfigError(
            "rbf over tv distance is not positive semidefinite and breaks the "
            "MMD guarantees; pass allow_indefinite to construct it anyway");
    return KernelSpec(KernelFamily::RBF_TV_INVALID, sigma);
}

double KernelSpec::scale() const {
    if (!has_scale())
        throw ConfigError("the linear kernel has no scale parameter");
    return scale_;
}

double tv_distance(const Histogram& x, const Histogram& y) {
    check_pair(x, y);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.values.size(); ++i)
        acc += std::abs(x.values[i] - y.values[i]);
    return 0.5 * acc;
}

double euclidean_sq(const Histogram& x, const Histogram& y) {
    check_pair(x, y);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.values.size(); ++i) {
        const double d = x.values[i] - y.values[i];
        acc += d * d;
    }
    return acc;
}

namespace {

void check_mass(double mx, double my) {
    const double tol = 1e-9 * std::max(1.0, std::max(mx, my));
    if (std::abs(mx - my) > tol)
        throw ConfigError("wasserstein distance needs equal total mass, got " +
                          fmt_double(mx) + " vs " + fmt_double(my));
}

}  // namespace

double wasserstein1(const Histogram& x, const Histogram& y) {
    check_pair(x, y);
    double mx = 0.0, my = 0.0;
    for (double v : x.values)
        mx += v;
    for (double v : y.values)
        my += v;
    check_mass(mx, my);

    double acc = 0.0, cum = 0.0;
    for (std::size_t i = 0; i < x.values.size(); ++i) {
        cum += x.values[i] - y.values[i];
        acc += std::abs(cum);
    }
    return acc;
}

double wasserstein1_solver(const Histogram& x, const Histogram& y) {
    check_pair(x, y);
    const auto n = static_cast<Eigen::Index>(x.values.size());
    Eigen::MatrixXd cost(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            cost(i, j) = std::abs(static_cast<double>(i - j));
    return transport_cost(x.values, y.values, cost);
}

double kernel_eval(const KernelSpec& spec, const Histogram& x, const Histogram& y) {
    check_pair(x, y);
    switch (spec.family()) {
    case KernelFamily::LINEAR: {
        double acc = 0.0;
        for (std::size_t i = 0; i < x.values.size(); ++i)
            acc += x.values[i] * y.values[i];
        return acc;
    }
    case KernelFamily::RBF_EUCLIDEAN: {
        const double s = spec.scale();
        return std::exp(-euclidean_sq(x, y) / (2.0 * s * s));
    }
    case KernelFamily::LAPLACIAN_TV:
        return std::exp(-spec.scale() * tv_distance(x, y));
    case KernelFamily::EMD_GAUSSIAN: {
        const double s = spec.scale();
        return std::exp(-wasserstein1(x, y) / (2.0 * s * s));
    }
    case KernelFamily::RBF_TV_INVALID: {
        const double s = spec.scale();
        const double tv = tv_distance(x, y);
        return std::exp(-tv * tv / (2.0 * s * s));
    }
    }
    throw ConfigError("unknown kernel family");
}

namespace {

std::vector<std::string> index_labels(std::size_t n) {
    std::vector<std::string> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::to_string(i);
    return out;
}

}  // namespace

GramMatrix gram(const KernelSpec& spec, const std::vector<Histogram>& x,
                std::vector<std::string> labels) {
    const auto n = static_cast<Eigen::Index>(x.size());
    GramMatrix g;
    g.symmetric = true;
    g.x_labels = labels.empty() ? index_labels(x.size()) : std::move(labels);
    g.y_labels = g.x_labels;
    g.entries.resize(n, n);
    parallel_for(x.size(), [&](std::size_t i) {
        for (std::size_t j = i; j < x.size(); ++j)
            g.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                kernel_eval(spec, x[i], x[j]);
    });
    // Mirror the upper triangle so both halves are bit-identical.
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < i; ++j)
            g.entries(i, j) = g.entries(j, i);
    return g;
}

GramMatrix gram(const KernelSpec& spec, const std::vector<Histogram>& x,
                const std::vector<Histogram>& y,
                std::vector<std::string> x_labels,
                std::vector<std::string> y_labels) {
    GramMatrix g;
    g.symmetric = false;
    g.x_labels = x_labels.empty() ? index_labels(x.size()) : std::move(x_labels);
    g.y_labels = y_labels.empty() ? index_labels(y.size()) : std::move(y_labels);
    g.entries.resize(static_cast<Eigen::Index>(x.size()),
                     static_cast<Eigen::Index>(y.size()));
    parallel_for(x.size(), [&](std::size_t i) {
        for (std::size_t j = 0; j < y.size(); ++j)
            g.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                kernel_eval(spec, x[i], y[j]);
    });
    return g;
}

double psd_check(const GramMatrix& g) {
    if (!g.symmetric || g.entries.rows() != g.entries.cols())
        throw ConfigError("psd check needs a symmetric Gram matrix");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.entries,
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericError("eigensolver failed on Gram matrix");
    return solver.eigenvalues()(0);
}

int family_order(KernelFamily f) {
    switch (f) {
    case KernelFamily::LINEAR: return 0;
    case KernelFamily::RBF_EUCLIDEAN: return 1;
    case KernelFamily::LAPLACIAN_TV: return 2;
    case KernelFamily::EMD_GAUSSIAN: return 3;
    case KernelFamily::RBF_TV_INVALID: return 4;
    }
    throw ConfigError("unknown kernel family");
}

std::string kernel_name(KernelFamily f) {
    switch (f) {
    case KernelFamily::LINEAR: return "linear";
    case KernelFamily::RBF_EUCLIDEAN: return "rbf";
    case KernelFamily::LAPLACIAN_TV: return "laplacian-tv";
    case KernelFamily::EMD_GAUSSIAN: return "emd";
    case KernelFamily::RBF_TV_INVALID: return "rbf-tv-unsafe";
    }
    throw ConfigError("unknown kernel family");
}

KernelFamily kernel_from_name(const std::string& name) {
    if (name == "linear") return KernelFamily::LINEAR;
    if (name == "rbf") return KernelFamily::RBF_EUCLIDEAN;
    if (name == "laplacian-tv") return KernelFamily::LAPLACIAN_TV;
    if (name == "emd") return KernelFamily::EMD_GAUSSIAN;
    if (name == "rbf-tv-unsafe") return KernelFamily::RBF_TV_INVALID;
    throw ConfigError("unknown kernel family: " + name);
}

}  // namespace ggeval
