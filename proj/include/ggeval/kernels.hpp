#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ggeval/descriptors.hpp"

namespace ggeval {

enum class KernelFamily { LINEAR, RBF_EUCLIDEAN, LAPLACIAN_TV, EMD_GAUSSIAN, RBF_TV_INVALID };

// Kernel on histograms:
//   linear          <x, y>
//   rbf             exp(-||x - y||^2 / (2 sigma^2))
//   laplacian-tv    exp(-lambda * TV(x, y))
//   emd             exp(-W1(x, y) / (2 sigma^2))
//   rbf-tv-unsafe   exp(-TV(x, y)^2 / (2 sigma^2))
//
// rbf-tv-unsafe is not positive semidefinite (TV does not embed into a
// Hilbert space the way the Gaussian construction needs), so building it
// requires the explicit allow_indefinite override.
class KernelSpec {
public:
    static KernelSpec linear();
    static KernelSpec rbf(double sigma);
    static KernelSpec laplacian_tv(double lambda);
    static KernelSpec emd_gaussian(double sigma);
    static KernelSpec rbf_tv(double sigma, bool allow_indefinite = false);

    KernelFamily family() const { return family_; }
    bool has_scale() const { return family_ != KernelFamily::LINEAR; }
    // Sigma or lambda; throws ConfigError for the linear kernel.
    double scale() const;

private:
    KernelSpec(KernelFamily family, double scale) : family_(family), scale_(scale) {}
    KernelFamily family_;
    double scale_;
};

// Rectangular kernel matrix. When built from one histogram list the matrix
// is symmetric and the lower triangle mirrors the upper one exactly.
struct GramMatrix {
    Eigen::MatrixXd entries;
    std::vector<std::string> x_labels;
    std::vector<std::string> y_labels;
    bool symmetric = false;
};

// Total variation distance, 0.5 * sum |x_i - y_i|.
double tv_distance(const Histogram& x, const Histogram& y);

double euclidean_sq(const Histogram& x, const Histogram& y);

// First Wasserstein distance on a unit-spaced support, computed in closed
// form as the sum of absolute cumulative differences. Requires equal total
// mass up to 1e-9.
double wasserstein1(const Histogram& x, const Histogram& y);

// Minimal cost of moving `supply` onto `demand` under the given per-unit
// cost matrix (successive shortest paths). supply/demand must be
// non-negative with equal totals up to 1e-9.
double transport_cost(const std::vector<double>& supply,
                      const std::vector<double>& demand,
                      const Eigen::MatrixXd& cost);

// W1 via the general transportation solver; agrees with wasserstein1.
double wasserstein1_solver(const Histogram& x, const Histogram& y);

double kernel_eval(const KernelSpec& spec, const Histogram& x, const Histogram& y);

GramMatrix gram(const KernelSpec& spec, const std::vector<Histogram>& x,
                std::vector<std::string> labels = {});
GramMatrix gram(const KernelSpec& spec, const std::vector<Histogram>& x,
                const std::vector<Histogram>& y,
                std::vector<std::string> x_labels = {},
                std::vector<std::string> y_labels = {});

// Smallest eigenvalue of a symmetric Gram matrix.
double psd_check(const GramMatrix& g);

// Deterministic preference order used to break selection ties:
// linear < rbf < laplacian-tv < emd < rbf-tv-unsafe.
int family_order(KernelFamily f);

std::string kernel_name(KernelFamily f);
KernelFamily kernel_from_name(const std::string& name);

}  // namespace ggeval
