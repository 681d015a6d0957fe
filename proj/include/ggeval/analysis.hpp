#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ggeval/descriptors.hpp"
#include "ggeval/mmd.hpp"
#include "ggeval/perturb.hpp"

namespace ggeval {

enum class Measure { PEARSON, SPEARMAN, MUTUAL_INFORMATION };

// Sample Pearson correlation. Throws ConstantSeriesError when either
// series has zero variance.
double pearson(std::span<const double> xs, std::span<const double> ys);

// Pearson on average-tie ranks. Identical rank vectors short-circuit to
// exactly 1.
double spearman(std::span<const double> xs, std::span<const double> ys);

// Plug-in mutual information in bits over a q x q contingency table.
// Each series is quantile-binned by rank; a tie run is assigned the rank
// of its first element so ties never straddle a bin boundary.
double mutual_information(std::span<const double> xs, std::span<const double> ys, int q);

// 1-based ranks with ties averaged.
std::vector<double> average_ranks(std::span<const double> xs);

// One kernel family plus the scales to sweep (empty for linear).
struct KernelGrid {
    KernelFamily family = KernelFamily::RBF_EUCLIDEAN;
    std::vector<double> scales;
};

// Correlation between perturbation level and MMD^2 for one configuration.
struct CorrelationRow {
    std::string dataset;
    DescriptorSpec descriptor;  // n_bin resolved
    KernelFamily kernel = KernelFamily::RBF_EUCLIDEAN;
    std::optional<double> scale;
    PerturbKind kind = PerturbKind::ADD_EDGES;
    // Missing when the MMD series was constant.
    std::optional<double> coefficient;
    std::vector<double> mmd2;  // one value per level
    int n = 0;  // base set size
    int m = 0;  // perturbed set size
};

enum class SelectionStrategy { BEST_SINGLE_PERTURBATION, BEST_AVERAGE };

struct SelectionResult {
    DescriptorSpec descriptor;
    KernelFamily kernel = KernelFamily::RBF_EUCLIDEAN;
    std::optional<double> scale;
    SelectionStrategy strategy = SelectionStrategy::BEST_AVERAGE;
    std::optional<PerturbKind> target;  // BEST_SINGLE_PERTURBATION only
    double objective = 0.0;
    // kind name -> coefficient of the chosen configuration, averaged over
    // datasets.
    std::map<std::string, double> per_perturbation;
};

struct CorrelationReport {
    std::vector<std::string> datasets;
    Measure measure = Measure::PEARSON;
    Estimator estimator = Estimator::UNBIASED;
    std::vector<double> levels;
    int n_add = 0;
    std::uint64_t seed = 0;
    std::optional<std::string> warning;
    std::vector<CorrelationRow> rows;
    std::optional<SelectionResult> selection;
};

struct ExperimentConfig {
    std::vector<DescriptorSpec> descriptors;
    std::vector<KernelGrid> kernels;
    std::vector<PerturbKind> kinds;
    PerturbationLevelGrid grid;
    std::uint64_t seed = 0;
    Measure measure = Measure::PEARSON;
    Estimator estimator = Estimator::UNBIASED;
    int n_add = 5;
    // Contingency bins for mutual information; 0 picks
    // min(5, n_levels / 4), never below 2.
    int mi_bins = 0;
};

// Perturbs `base` along every (kind, level), computes MMD^2 between the
// base set and each perturbed copy for every configuration, and correlates
// the series against the levels. Rows whose MMD series is constant get a
// missing coefficient and a report-level warning.
CorrelationReport perturbation_experiment(const GraphSet& base, const ExperimentConfig& cfg);

// Merges reports produced with identical settings over different datasets.
CorrelationReport merge_reports(const std::vector<CorrelationReport>& parts);

struct HeatmapCell {
    double best = 0.0;
    double worst = 0.0;
    bool missing = true;
};

// best/worst coefficient over all (kernel, scale) per descriptor, dataset
// and perturbation kind.
struct BestWorstHeatmap {
    std::vector<std::string> descriptors;  // row labels
    std::vector<std::string> datasets;     // column labels
    std::vector<PerturbKind> kinds;        // one sheet per kind
    // cells[kind][descriptor][dataset]
    std::vector<std::vector<std::vector<HeatmapCell>>> cells;
};

BestWorstHeatmap best_worst_heatmap(const CorrelationReport& report);

// Argmax of the coefficient. BEST_SINGLE_PERTURBATION maximizes the
// target kind's coefficient; BEST_AVERAGE maximizes the mean over kinds.
// Coefficients are averaged over datasets first. Ties prefer the lower
// scale, then the earlier kernel family (family_order), then row order.
SelectionResult select_config(const CorrelationReport& report, SelectionStrategy strategy,
                              std::optional<PerturbKind> target = std::nullopt);

struct RankingRow {
    DescriptorSpec descriptor;
    KernelFamily kernel = KernelFamily::RBF_EUCLIDEAN;
    std::optional<double> scale;
    std::vector<double> model_mmd2;  // parallel to RankingReport::models
    int argmin = 0;
    double anchor_mmd2 = 0.0;  // mmd2(train, test) under the same configuration
};

struct RankingReport {
    std::vector<std::string> models;
    std::vector<int> model_sizes;
    int test_size = 0;
    int train_size = 0;
    Estimator estimator = Estimator::UNBIASED;
    std::vector<RankingRow> rows;
};

struct NamedSet {
    std::string name;
    const GraphSet* set = nullptr;
};

// Ranks candidate model outputs by mmd2(model, test) per configuration;
// mmd2(train, test) anchors the scale of each row. Ties on the minimum
// pick the lexicographically smallest model name.
RankingReport rank_models(const GraphSet& test, const GraphSet& train,
                          const std::vector<NamedSet>& models,
                          const std::vector<DescriptorSpec>& descriptors,
                          const std::vector<KernelGrid>& kernels, Estimator est);

// "degree-12", "clustering-100", "degree-12-raw" (unnormalized counts).
std::string descriptor_label(const DescriptorSpec& spec);

std::string measure_name(Measure m);
Measure measure_from_name(const std::string& name);
std::string strategy_name(SelectionStrategy s);
SelectionStrategy strategy_from_name(const std::string& name);

}  // namespace ggeval
