#include "ggeval/mmd.hpp"

#include <cmath>

#include "ggeval/error.hpp"
#include "ggeval/parallel.hpp"

namespace ggeval {

namespace {

// All Gram reductions run in fixed row-major order so results do not
// depend on thread count or platform.
double sum_all(const Eigen::MatrixXd& k) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < k.rows(); ++i)
        for (Eigen::Index j = 0; j < k.cols(); ++j)
            acc += k(i, j);
    return acc;
}

double sum_offdiag(const Eigen::MatrixXd& k) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < k.rows(); ++i)
        for (Eigen::Index j = 0; j < k.cols(); ++j)
            if (i != j)
                acc += k(i, j);
    return acc;
}

void check_shapes(const GramMatrix& kxx, const GramMatrix& kyy, const GramMatrix& kxy) {
    if (!kxx.symmetric || !kyy.symmetric)
        throw ConfigError("within-set Gram matrices must be symmetric");
    const auto n = kxx.entries.rows();
    const auto m = kyy.entries.rows();
    if (kxx.entries.cols() != n || kyy.entries.cols() != m)
        throw ConfigError("within-set Gram matrices must be square");
    if (kxy.entries.rows() != n || kxy.entries.cols() != m)
        throw ConfigError("cross Gram matrix shape does not match");
    if (n < 1 || m < 1)
        throw ConfigError("MMD needs non-empty sets");
}

double biased_value(double sxx, double syy, double sxy, int n, int m) {
    const double term_x = sxx / (static_cast<double>(n) * n);
    const double term_y = syy / (static_cast<double>(m) * m);
    const double cross = 2.0 * (sxy / (static_cast<double>(n) * m));
    return term_x + term_y - cross;
}

double unbiased_value(double sxx, double syy, double sxy, int n, int m) {
    const double term_x = sxx / (static_cast<double>(n) * (n - 1));
    const double term_y = syy / (static_cast<double>(m) * (m - 1));
    const double cross = 2.0 * (sxy / (static_cast<double>(n) * m));
    return term_x + term_y - cross;
}

}  // namespace

MmdResult mmd2_biased(const GramMatrix& kxx, const GramMatrix& kyy,
                      const GramMatrix& kxy, const KernelSpec& kernel) {
    check_shapes(kxx, kyy, kxy);
    const int n = static_cast<int>(kxx.entries.rows());
    const int m = static_cast<int>(kyy.entries.rows());
    MmdResult r;
    r.value = biased_value(sum_all(kxx.entries), sum_all(kyy.entries),
                           sum_all(kxy.entries), n, m);
    r.estimator = Estimator::BIASED;
    r.kernel = kernel;
    r.n = n;
    r.m = m;
    return r;
}

MmdResult mmd2_unbiased(const GramMatrix& kxx, const GramMatrix& kyy,
                        const GramMatrix& kxy, const KernelSpec& kernel) {
    check_shapes(kxx, kyy, kxy);
    const int n = static_cast<int>(kxx.entries.rows());
    const int m = static_cast<int>(kyy.entries.rows());
    if (n < 2 || m < 2)
        throw ConfigError("the unbiased estimator needs at least 2 graphs per set");
    MmdResult r;
    r.value = unbiased_value(sum_offdiag(kxx.entries), sum_offdiag(kyy.entries),
                             sum_all(kxy.entries), n, m);
    r.estimator = Estimator::UNBIASED;
    r.kernel = kernel;
    r.n = n;
    r.m = m;
    return r;
}

MmdResult mmd2(const KernelSpec& spec, const std::vector<Histogram>& x,
               const std::vector<Histogram>& y, Estimator est) {
    const GramMatrix kxx = gram(spec, x);
    const GramMatrix kyy = gram(spec, y);
    const GramMatrix kxy = gram(spec, x, y);
    return est == Estimator::BIASED ? mmd2_biased(kxx, kyy, kxy, spec)
                                    : mmd2_unbiased(kxx, kyy, kxy, spec);
}

DistanceFamily distance_family_for(KernelFamily f) {
    switch (f) {
    case KernelFamily::RBF_EUCLIDEAN: return DistanceFamily::EUCLIDEAN_SQ;
    case KernelFamily::LAPLACIAN_TV: return DistanceFamily::TV;
    case KernelFamily::RBF_TV_INVALID: return DistanceFamily::TV;
    case KernelFamily::EMD_GAUSSIAN: return DistanceFamily::W1;
    case KernelFamily::LINEAR:
        throw ConfigError("the linear kernel has no base distance to cache");
    }
    throw ConfigError("unknown kernel family");
}

namespace {

Eigen::MatrixXd pairwise_within(const std::vector<Histogram>& x, DistanceFamily family,
                                W1Path path, const Eigen::MatrixXd* w1_cost) {
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd d(n, n);
    parallel_for(x.size(), [&](std::size_t i) {
        d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 0.0;
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            double v;
            switch (family) {
            case DistanceFamily::EUCLIDEAN_SQ: v = euclidean_sq(x[i], x[j]); break;
            case DistanceFamily::TV: v = tv_distance(x[i], x[j]); break;
            default:
                v = path == W1Path::CLOSED_FORM
                        ? wasserstein1(x[i], x[j])
                        : transport_cost(x[i].values, x[j].values, *w1_cost);
            }
            d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        }
    });
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < i; ++j)
            d(i, j) = d(j, i);
    return d;
}

Eigen::MatrixXd pairwise_cross(const std::vector<Histogram>& x,
                               const std::vector<Histogram>& y, DistanceFamily family,
                               W1Path path, const Eigen::MatrixXd* w1_cost) {
    Eigen::MatrixXd d(static_cast<Eigen::Index>(x.size()),
                      static_cast<Eigen::Index>(y.size()));
    parallel_for(x.size(), [&](std::size_t i) {
        for (std::size_t j = 0; j < y.size(); ++j) {
            double v;
            switch (family) {
            case DistanceFamily::EUCLIDEAN_SQ: v = euclidean_sq(x[i], y[j]); break;
            case DistanceFamily::TV: v = tv_distance(x[i], y[j]); break;
            default:
                v = path == W1Path::CLOSED_FORM
                        ? wasserstein1(x[i], y[j])
                        : transport_cost(x[i].values, y[j].values, *w1_cost);
            }
            d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        }
    });
    return d;
}

}  // namespace

GramCache build_cache(const std::vector<Histogram>& x,
                      const std::vector<Histogram>& y, DistanceFamily family,
                      W1Path path) {
    if (x.empty() || y.empty())
        throw ConfigError("cannot cache distances for an empty set");

    Eigen::MatrixXd w1_cost;
    const Eigen::MatrixXd* cost_ptr = nullptr;
    if (family == DistanceFamily::W1 && path == W1Path::GENERAL_SOLVER) {
        const auto d = static_cast<Eigen::Index>(x.front().values.size());
        w1_cost.resize(d, d);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j)
                w1_cost(i, j) = std::abs(static_cast<double>(i - j));
        cost_ptr = &w1_cost;
    }

    GramCache cache;
    cache.family = family;
    cache.n = static_cast<int>(x.size());
    cache.m = static_cast<int>(y.size());
    cache.dxx = pairwise_within(x, family, path, cost_ptr);
    cache.dyy = pairwise_within(y, family, path, cost_ptr);
    cache.dxy = pairwise_cross(x, y, family, path, cost_ptr);
    return cache;
}

std::vector<MmdResult> mmd_sweep(const GramCache& cache, KernelFamily family,
                                 const std::vector<double>& scales, Estimator est) {
    if (family == KernelFamily::LINEAR)
        throw ConfigError("the linear kernel has no scale to sweep");
    if (distance_family_for(family) != cache.family)
        throw ConfigError("kernel family " + kernel_name(family) +
                          " cannot reuse this distance cache");
    if (est == Estimator::UNBIASED && (cache.n < 2 || cache.m < 2))
        throw ConfigError("the unbiased estimator needs at least 2 graphs per set");

    auto make_spec = [&](double s) {
        switch (family) {
        case KernelFamily::RBF_EUCLIDEAN: return KernelSpec::rbf(s);
        case KernelFamily::LAPLACIAN_TV: return KernelSpec::laplacian_tv(s);
        case KernelFamily::EMD_GAUSSIAN: return KernelSpec::emd_gaussian(s);
        default: return KernelSpec::rbf_tv(s, true);
        }
    };

    std::vector<MmdResult> out;
    out.reserve(scales.size());
    for (double s : scales) {
        const KernelSpec spec = make_spec(s);
        auto apply = [&](double d) {
            switch (family) {
            case KernelFamily::RBF_EUCLIDEAN:
            case KernelFamily::EMD_GAUSSIAN:
                return std::exp(-d / (2.0 * s * s));
            case KernelFamily::LAPLACIAN_TV:
                return std::exp(-s * d);
            default:
                return std::exp(-d * d / (2.0 * s * s));
            }
        };

        double sxx = 0.0, syy = 0.0, sxy = 0.0;
        for (Eigen::Index i = 0; i < cache.dxx.rows(); ++i)
            for (Eigen::Index j = 0; j < cache.dxx.cols(); ++j)
                if (est == Estimator::BIASED || i != j)
                    sxx += apply(cache.dxx(i, j));
        for (Eigen::Index i = 0; i < cache.dyy.rows(); ++i)
            for (Eigen::Index j = 0; j < cache.dyy.cols(); ++j)
                if (est == Estimator::BIASED || i != j)
                    syy += apply(cache.dyy(i, j));
        for (Eigen::Index i = 0; i < cache.dxy.rows(); ++i)
            for (Eigen::Index j = 0; j < cache.dxy.cols(); ++j)
                sxy += apply(cache.dxy(i, j));

        MmdResult r;
        r.estimator = est;
        r.kernel = spec;
        r.n = cache.n;
        r.m = cache.m;
        r.value = est == Estimator::BIASED
                      ? biased_value(sxx, syy, sxy, cache.n, cache.m)
                      : unbiased_value(sxx, syy, sxy, cache.n, cache.m);
        out.push_back(r);
    }
    return out;
}

std::string estimator_name(Estimator est) {
    return est == Estimator::BIASED ? "biased" : "unbiased";
}

Estimator estimator_from_name(const std::string& name) {
    if (name == "biased") return Estimator::BIASED;
    if (name == "unbiased") return Estimator::UNBIASED;
    throw ConfigError("unknown estimator: " + name);
}

}  // namespace ggeval
