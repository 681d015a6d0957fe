#pragma once

#include <span>
#include <string>
#include <vector>

#include "ggeval/graph.hpp"

namespace ggeval {

enum class HistogramSupport { DEGREE_COUNTS, UNIT_INTERVAL, SPECTRUM_0_2 };

// Fixed-width histogram over one of the three supports. Bins are
// left-closed, right-open, except the last bin which also contains the
// right boundary.
struct Histogram {
    std::vector<double> values;
    HistogramSupport support = HistogramSupport::DEGREE_COUNTS;
    bool normalized = false;
};

enum class DescriptorKind { DEGREE, CLUSTERING, SPECTRAL };

// Sentinel bin count for DEGREE: resolve to 1 + max degree over every
// graph set taking part in the comparison, so all histograms share one
// support.
inline constexpr int AUTO_MAX_DEGREE = -1;

struct DescriptorSpec {
    DescriptorKind kind = DescriptorKind::DEGREE;
    int n_bin = AUTO_MAX_DEGREE;
    // Divide degree counts by n. Clustering and spectral histograms are
    // densities over vertices and are always normalized.
    bool normalize = true;
};

// values[i] = number of vertices with degree i (divided by n when
// normalize). Throws ConfigError if any degree falls outside [0, n_bin).
Histogram degree_histogram(const Graph& g, int n_bin, bool normalize);

// Local clustering coefficients binned into n_bin equal-width bins on [0,1].
Histogram clustering_histogram(const Graph& g, int n_bin);

// Eigenvalues of the normalized Laplacian binned on [0,2].
Histogram spectrum_histogram(const Graph& g, int n_bin);

// C(v) = edges among neighbors / (deg(v) choose 2); 0 when deg(v) < 2.
std::vector<double> local_clustering(const Graph& g);

// Eigenvalues of I - D^{-1/2} A D^{-1/2}, ascending. Isolated vertices get
// a zero diagonal entry and hence eigenvalue 0. Values are clamped to
// [0,2]; an overshoot beyond 1e-9 raises NumericError.
std::vector<double> laplacian_eigenvalues(const Graph& g);

// Resolves AUTO_MAX_DEGREE against every set in `sets`.
DescriptorSpec resolve_bins(const DescriptorSpec& spec,
                            std::span<const GraphSet* const> sets);

// One histogram per graph, in set order. The spec must be resolved.
std::vector<Histogram> describe_set(const GraphSet& set, const DescriptorSpec& spec);

std::string descriptor_name(DescriptorKind kind);
DescriptorKind descriptor_from_name(const std::string& name);

}  // namespace ggeval
