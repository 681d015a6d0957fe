#include <doctest.h>

#include <cmath>
#include <vector>

#include "ggeval/error.hpp"
#include "ggeval/mmd.hpp"
#include "ggeval/rng.hpp"

using namespace ggeval;

namespace {

Histogram hist(std::vector<double> values) {
    Histogram h;
    h.values = std::move(values);
    h.support = HistogramSupport::UNIT_INTERVAL;
    h.normalized = true;
    return h;
}

std::vector<Histogram> random_set(RngStream& rng, int count, int d) {
    std::vector<Histogram> out;
    for (int i = 0; i < count; ++i) {
        std::vector<double> v(d);
        double total = 0;
        for (double& x : v) {
            x = rng.uniform();
            total += x;
        }
        for (double& x : v)
            x /= total;
        out.push_back(hist(std::move(v)));
    }
    return out;
}

// Straight triple-loop transcription of the estimator definitions.
double oracle_mmd2(const KernelSpec& k, const std::vector<Histogram>& xs,
                   const std::vector<Histogram>& ys, Estimator est) {
    const int n = static_cast<int>(xs.size());
    const int m = static_cast<int>(ys.size());
    double sxx = 0, syy = 0, sxy = 0;
    if (est == Estimator::BIASED) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                sxx += kernel_eval(k, xs[i], xs[j]);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                syy += kernel_eval(k, ys[i], ys[j]);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j)
                sxy += kernel_eval(k, xs[i], ys[j]);
        return sxx / (double(n) * n) + syy / (double(m) * m) - 2 * sxy / (double(n) * m);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                sxx += kernel_eval(k, xs[i], xs[j]);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j)
                syy += kernel_eval(k, ys[i], ys[j]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            sxy += kernel_eval(k, xs[i], ys[j]);
    return sxx / (double(n) * (n - 1)) + syy / (double(m) * (m - 1)) -
           2 * sxy / (double(n) * m);
}

}  // namespace

TEST_CASE("estimators match the definition on random inputs") {
    RngStream rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_int(8));
        const int m = 2 + static_cast<int>(rng.uniform_int(8));
        const auto xs = random_set(rng, n, 6);
        const auto ys = random_set(rng, m, 6);
        for (const KernelSpec& k :
             {KernelSpec::linear(), KernelSpec::rbf(0.5), KernelSpec::laplacian_tv(1.5),
              KernelSpec::emd_gaussian(0.7)}) {
            for (Estimator est : {Estimator::BIASED, Estimator::UNBIASED}) {
                const MmdResult got = mmd2(k, xs, ys, est);
                const double want = oracle_mmd2(k, xs, ys, est);
                CHECK(std::abs(got.value - want) <= 1e-12);
                CHECK(got.n == n);
                CHECK(got.m == m);
                CHECK(got.estimator == est);
            }
        }
    }
}

TEST_CASE("biased estimate of a set against itself is exactly zero") {
    RngStream rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        const auto xs = random_set(rng, 3 + static_cast<int>(rng.uniform_int(6)), 5);
        for (const KernelSpec& k : {KernelSpec::rbf(0.8), KernelSpec::linear()}) {
            const MmdResult r = mmd2(k, xs, xs, Estimator::BIASED);
            CHECK(r.value == 0.0);
        }
    }
}

TEST_CASE("unbiased estimate can be negative and is not clamped") {
    RngStream rng(33);
    bool saw_negative = false;
    for (int trial = 0; trial < 20 && !saw_negative; ++trial) {
        const auto xs = random_set(rng, 5, 4);
        const MmdResult r = mmd2(KernelSpec::rbf(1.0), xs, xs, Estimator::UNBIASED);
        saw_negative = r.value < 0.0;
    }
    CHECK(saw_negative);
}

TEST_CASE("unbiased estimator needs two graphs per side") {
    RngStream rng(34);
    const auto one = random_set(rng, 1, 4);
    const auto two = random_set(rng, 2, 4);
    CHECK_THROWS_AS(mmd2(KernelSpec::linear(), one, two, Estimator::UNBIASED), ConfigError);
    CHECK_THROWS_AS(mmd2(KernelSpec::linear(), two, one, Estimator::UNBIASED), ConfigError);
    CHECK_NOTHROW(mmd2(KernelSpec::linear(), one, two, Estimator::BIASED));
}

TEST_CASE("empty sets are rejected") {
    RngStream rng(35);
    const auto xs = random_set(rng, 3, 4);
    CHECK_THROWS_AS(mmd2(KernelSpec::linear(), {}, xs, Estimator::BIASED), ConfigError);
}

TEST_CASE("mismatched gram shapes are rejected") {
    RngStream rng(36);
    const auto xs = random_set(rng, 3, 4);
    const auto ys = random_set(rng, 4, 4);
    const KernelSpec k = KernelSpec::rbf(1.0);
    const GramMatrix kxx = gram(k, xs);
    const GramMatrix kyy = gram(k, ys);
    const GramMatrix kxy = gram(k, xs, ys);
    CHECK_NOTHROW(mmd2_biased(kxx, kyy, kxy, k));
    CHECK_THROWS_AS(mmd2_biased(kxx, kyy, gram(k, ys, xs), k), ConfigError);
    CHECK_THROWS_AS(mmd2_biased(kxy, kyy, kxy, k), ConfigError);
}

TEST_CASE("distance family per kernel family") {
    CHECK(distance_family_for(KernelFamily::RBF_EUCLIDEAN) == DistanceFamily::EUCLIDEAN_SQ);
    CHECK(distance_family_for(KernelFamily::LAPLACIAN_TV) == DistanceFamily::TV);
    CHECK(distance_family_for(KernelFamily::RBF_TV_INVALID) == DistanceFamily::TV);
    CHECK(distance_family_for(KernelFamily::EMD_GAUSSIAN) == DistanceFamily::W1);
    CHECK_THROWS_AS(distance_family_for(KernelFamily::LINEAR), ConfigError);
}

TEST_CASE("scale sweep equals the one-scale-at-a-time computation bitwise") {
    RngStream rng(37);
    const auto xs = random_set(rng, 9, 7);
    const auto ys = random_set(rng, 6, 7);
    const std::vector<double> scales = {1e-3, 0.01, 0.1, 1.0, 10.0, 100.0};

    struct Case {
        KernelFamily family;
        DistanceFamily dist;
    };
    for (const Case& c : {Case{KernelFamily::RBF_EUCLIDEAN, DistanceFamily::EUCLIDEAN_SQ},
                          Case{KernelFamily::LAPLACIAN_TV, DistanceFamily::TV},
                          Case{KernelFamily::EMD_GAUSSIAN, DistanceFamily::W1}}) {
        const GramCache cache = build_cache(xs, ys, c.dist);
        for (Estimator est : {Estimator::BIASED, Estimator::UNBIASED}) {
            const auto swept = mmd_sweep(cache, c.family, scales, est);
            REQUIRE(swept.size() == scales.size());
            for (std::size_t s = 0; s < scales.size(); ++s) {
                KernelSpec k = KernelSpec::linear();
                switch (c.family) {
                case KernelFamily::RBF_EUCLIDEAN: k = KernelSpec::rbf(scales[s]); break;
                case KernelFamily::LAPLACIAN_TV:
                    k = KernelSpec::laplacian_tv(scales[s]);
                    break;
                case KernelFamily::EMD_GAUSSIAN:
                    k = KernelSpec::emd_gaussian(scales[s]);
                    break;
                default: break;
                }
                const MmdResult naive = mmd2(k, xs, ys, est);
                CHECK(swept[s].value == naive.value);  // identical, not approximate
            }
        }
    }
}

TEST_CASE("general solver cache agrees with the closed form cache") {
    RngStream rng(38);
    const auto xs = random_set(rng, 4, 9);
    const auto ys = random_set(rng, 4, 9);
    const GramCache closed = build_cache(xs, ys, DistanceFamily::W1, W1Path::CLOSED_FORM);
    const GramCache solved = build_cache(xs, ys, DistanceFamily::W1, W1Path::GENERAL_SOLVER);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            CHECK(std::abs(closed.dxy(i, j) - solved.dxy(i, j)) <= 1e-9);
            CHECK(std::abs(closed.dxx(i, j) - solved.dxx(i, j)) <= 1e-9);
        }
}

TEST_CASE("sweep rejects a cache built for a different distance") {
    RngStream rng(39);
    const auto xs = random_set(rng, 3, 5);
    const GramCache cache = build_cache(xs, xs, DistanceFamily::TV);
    CHECK_THROWS_AS(mmd_sweep(cache, KernelFamily::RBF_EUCLIDEAN, {1.0}, Estimator::BIASED),
                    ConfigError);
    CHECK_THROWS_AS(mmd_sweep(cache, KernelFamily::LINEAR, {1.0}, Estimator::BIASED),
                    ConfigError);
}

TEST_CASE("estimator names round-trip") {
    CHECK(estimator_from_name(estimator_name(Estimator::BIASED)) == Estimator::BIASED);
    CHECK(estimator_from_name(estimator_name(Estimator::UNBIASED)) == Estimator::UNBIASED);
    CHECK_THROWS_AS(estimator_from_name("median"), ConfigError);
}
