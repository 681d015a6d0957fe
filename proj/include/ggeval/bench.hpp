#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ggeval/kernels.hpp"

namespace ggeval {

// Runtime study over synthetic ER inputs. One axis varies while the other
// two stay fixed; the timed region covers kernel evaluation and the MMD
// reduction only (generation and descriptor extraction are excluded).
enum class BenchVariable { N_GRAPHS, N_NODES, N_BINS };

struct BenchSpec {
    BenchVariable variable = BenchVariable::N_GRAPHS;
    std::vector<int> values;  // ascending
    int fixed_graphs = 100;
    int fixed_nodes = 100;
    int fixed_bins = 100;
    int repetitions = 10;
    double er_p = 0.3;
    // Measurements run single-threaded unless this is set.
    bool parallel = false;
};

struct BenchRow {
    KernelFamily kernel = KernelFamily::LINEAR;
    BenchVariable variable = BenchVariable::N_GRAPHS;
    int value = 0;
    double mean_seconds = 0.0;
    double std_seconds = 0.0;
};

// Times MMD^2 between two freshly generated ER sets for every
// (kernel, value) pair: one discarded warm-up run, then `repetitions`
// timed runs on a monotonic clock. The EMD kernel goes through the
// general transportation solver, not the closed form.
std::vector<BenchRow> bench_kernels(const BenchSpec& spec,
                                    const std::vector<KernelFamily>& kernels,
                                    std::uint64_t seed);

std::string bench_variable_name(BenchVariable v);
BenchVariable bench_variable_from_name(const std::string& name);

// kernel,variable,value,mean_seconds,std_seconds
std::string bench_csv(const std::vector<BenchRow>& rows);
std::vector<BenchRow> parse_bench_csv(const std::string& text);

}  // namespace ggeval
