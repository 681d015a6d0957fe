#pragma once

#include <string>
#include <vector>

#include "ggeval/kernels.hpp"

namespace ggeval {

enum class Estimator { BIASED, UNBIASED };

struct MmdResult {
    // Squared MMD. The unbiased estimate can be negative and is reported
    // as computed, without clamping.
    double value = 0.0;
    Estimator estimator = Estimator::BIASED;
    KernelSpec kernel = KernelSpec::linear();
    int n = 0;
    int m = 0;
};

// Biased estimate: mean over all n^2 + m^2 + n*m kernel entries,
//   (1/n^2) sum Kxx + (1/m^2) sum Kyy - (2/nm) sum Kxy.
MmdResult mmd2_biased(const GramMatrix& kxx, const GramMatrix& kyy,
                      const GramMatrix& kxy, const KernelSpec& kernel);

// Unbiased estimate: drops the i = j diagonal terms of Kxx and Kyy and
// divides by n(n-1) and m(m-1). Needs n, m >= 2.
MmdResult mmd2_unbiased(const GramMatrix& kxx, const GramMatrix& kyy,
                        const GramMatrix& kxy, const KernelSpec& kernel);

// One-call convenience path.
MmdResult mmd2(const KernelSpec& spec, const std::vector<Histogram>& x,
               const std::vector<Histogram>& y, Estimator est);

// Base distance reused across a scale sweep.
enum class DistanceFamily { EUCLIDEAN_SQ, TV, W1 };

enum class W1Path { CLOSED_FORM, GENERAL_SOLVER };

// Pairwise base distances between and within two histogram lists. With
// these in hand, changing the kernel scale is a pointwise exp() instead of
// a recomputation of every pairwise distance.
struct GramCache {
    Eigen::MatrixXd dxx, dyy, dxy;
    DistanceFamily family = DistanceFamily::EUCLIDEAN_SQ;
    int n = 0;
    int m = 0;
};

// Base distance a kernel family exponentiates; ConfigError for LINEAR,
// which has none.
DistanceFamily distance_family_for(KernelFamily f);

GramCache build_cache(const std::vector<Histogram>& x,
                      const std::vector<Histogram>& y, DistanceFamily family,
                      W1Path path = W1Path::CLOSED_FORM);

// MMD^2 for every scale, reusing the cached distances. The kernel family
// must exponentiate the cached distance family.
std::vector<MmdResult> mmd_sweep(const GramCache& cache, KernelFamily family,
                                 const std::vector<double>& scales, Estimator est);

std::string estimator_name(Estimator est);
Estimator estimator_from_name(const std::string& name);

}  // namespace ggeval
