#pragma once

#include <string>

#include "ggeval/analysis.hpp"
#include "ggeval/bench.hpp"

namespace ggeval {

// All renderers emit standalone SVG text with deterministic element order
// and fixed-precision coordinates: the same report bytes produce the same
// plot bytes.

// MMD^2 against log10(scale) for one (descriptor kind, kernel family):
// one <polyline class="model"> per model, the train/test anchor as a
// dashed <path class="anchor">, and a winner strip of
// <rect class="rank"> segments underneath, one per scale.
std::string render_mmd_vs_scale(const RankingReport& report, DescriptorKind kind,
                                KernelFamily family);

// Best and worst coefficient per (descriptor, dataset), one column group
// per perturbation kind. Cells are <rect class="cell"> on a diverging
// [-1,1] palette; undefined cells get class "missing".
std::string render_best_worst(const BestWorstHeatmap& map);

// Winning model per (n_bin, scale) cell for one descriptor kind and
// kernel family.
std::string render_argmin_heatmap(const RankingReport& report, DescriptorKind kind,
                                  KernelFamily family);

// Mean runtime per kernel over the swept variable, log10 seconds, with
// one <polyline class="bench"> per kernel and std whiskers.
std::string render_bench_lines(const std::vector<BenchRow>& rows);

}  // namespace ggeval
