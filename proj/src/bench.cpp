#include "ggeval/bench.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>

#include "ggeval/error.hpp"
#include "ggeval/mmd.hpp"
#include "ggeval/numfmt.hpp"
#include "ggeval/parallel.hpp"
#include "ggeval/rng.hpp"
#include "ggeval/synth.hpp"

namespace ggeval {

namespace {

// The timed path must not depend on the degree range of a random graph,
// so degrees at or above the bin count are folded into the last bin
// instead of raising the error the strict descriptor would.
std::vector<Histogram> folded_degree_histograms(const GraphSet& set, int n_bins) {
    std::vector<Histogram> out(set.graphs.size());
    for (std::size_t i = 0; i < set.graphs.size(); ++i) {
        Histogram h;
        h.support = HistogramSupport::DEGREE_COUNTS;
        h.normalized = true;
        h.values.assign(static_cast<std::size_t>(n_bins), 0.0);
        const Graph& g = set.graphs[i];
        for (int d : degrees(g))
            h.values[static_cast<std::size_t>(std::min(d, n_bins - 1))] += 1.0;
        if (g.n > 0)
            for (double& v : h.values)
                v /= g.n;
        out[i] = std::move(h);
    }
    return out;
}

double run_once(KernelFamily family, const std::vector<Histogram>& x,
                const std::vector<Histogram>& y, double& sink) {
    const auto t0 = std::chrono::steady_clock::now();
    double value;
    if (family == KernelFamily::LINEAR) {
        value = mmd2(KernelSpec::linear(), x, y, Estimator::BIASED).value;
    } else if (family == KernelFamily::EMD_GAUSSIAN) {
        const GramCache cache =
            build_cache(x, y, DistanceFamily::W1, W1Path::GENERAL_SOLVER);
        value = mmd_sweep(cache, family, {1.0}, Estimator::BIASED).front().value;
    } else {
        KernelSpec spec = family == KernelFamily::RBF_EUCLIDEAN
                              ? KernelSpec::rbf(1.0)
                              : family == KernelFamily::LAPLACIAN_TV
                                    ? KernelSpec::laplacian_tv(1.0)
                                    : KernelSpec::rbf_tv(1.0, true);
        value = mmd2(spec, x, y, Estimator::BIASED).value;
    }
    const auto t1 = std::chrono::steady_clock::now();
    sink += value;  // keep the computation observable
    return std::chrono::duration<double>(t1 - t0).count();
}

class ScopedWorkers {
public:
    explicit ScopedWorkers(unsigned n) : saved_(worker_threads()) {
        set_worker_threads(n);
    }
    ~ScopedWorkers() { set_worker_threads(saved_); }

private:
    unsigned saved_;
};

}  // namespace

std::vector<BenchRow> bench_kernels(const BenchSpec& spec,
                                    const std::vector<KernelFamily>& kernels,
                                    std::uint64_t seed) {
    if (spec.values.empty())
        throw ConfigError("bench needs at least one value");
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
        if (spec.values[i] < 1)
            throw ConfigError("bench values must be positive");
        if (i > 0 && spec.values[i] <= spec.values[i - 1])
            throw ConfigError("bench values must be strictly ascending");
    }
    if (spec.repetitions < 1)
        throw ConfigError("bench needs at least one repetition");
    if (spec.fixed_graphs < 1 || spec.fixed_nodes < 1 || spec.fixed_bins < 1)
        throw ConfigError("bench fixed sizes must be positive");
    if (!(spec.er_p >= 0.0 && spec.er_p <= 1.0))
        throw ConfigError("er_p must lie in [0,1]");
    if (kernels.empty())
        throw ConfigError("bench needs at least one kernel");

    ScopedWorkers workers(spec.parallel ? 0 : 1);

    std::vector<BenchRow> rows;
    double sink = 0.0;
    for (std::size_t vi = 0; vi < spec.values.size(); ++vi) {
        const int value = spec.values[vi];
        int n_graphs = spec.fixed_graphs;
        int n_nodes = spec.fixed_nodes;
        int n_bins = spec.fixed_bins;
        switch (spec.variable) {
        case BenchVariable::N_GRAPHS: n_graphs = value; break;
        case BenchVariable::N_NODES: n_nodes = value; break;
        case BenchVariable::N_BINS: n_bins = value; break;
        }

        GeneratorSpec gen;
        gen.family = GraphFamily::ER;
        gen.n_graphs = n_graphs;
        gen.nodes_lo = n_nodes;
        gen.nodes_hi = n_nodes;
        gen.p_edge = spec.er_p;
        const GraphSet set_x =
            generate_dataset(gen, splitmix64(seed ^ splitmix64(2 * vi)));
        const GraphSet set_y =
            generate_dataset(gen, splitmix64(seed ^ splitmix64(2 * vi + 1)));
        const std::vector<Histogram> x = folded_degree_histograms(set_x, n_bins);
        const std::vector<Histogram> y = folded_degree_histograms(set_y, n_bins);

        for (KernelFamily family : kernels) {
            run_once(family, x, y, sink);  // warm-up, discarded
            std::vector<double> times(static_cast<std::size_t>(spec.repetitions));
            for (int r = 0; r < spec.repetitions; ++r)
                times[static_cast<std::size_t>(r)] = run_once(family, x, y, sink);

            double mean = 0.0;
            for (double t : times)
                mean += t;
            mean /= static_cast<double>(times.size());
            double var = 0.0;
            for (double t : times)
                var += (t - mean) * (t - mean);
            const double stddev =
                times.size() > 1 ? std::sqrt(var / static_cast<double>(times.size() - 1))
                                 : 0.0;

            BenchRow row;
            row.kernel = family;
            row.variable = spec.variable;
            row.value = value;
            row.mean_seconds = mean;
            row.std_seconds = stddev;
            rows.push_back(row);
        }
    }
    (void)sink;
    return rows;
}

std::string bench_variable_name(BenchVariable v) {
    switch (v) {
    case BenchVariable::N_GRAPHS: return "n-graphs";
    case BenchVariable::N_NODES: return "n-nodes";
    case BenchVariable::N_BINS: return "n-bins";
    }
    throw ConfigError("unknown bench variable");
}

BenchVariable bench_variable_from_name(const std::string& name) {
    if (name == "n-graphs") return BenchVariable::N_GRAPHS;
    if (name == "n-nodes") return BenchVariable::N_NODES;
    if (name == "n-bins") return BenchVariable::N_BINS;
    throw ConfigError("unknown bench variable: " + name);
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::string out = "kernel,variable,value,mean_seconds,std_seconds\n";
    for (const BenchRow& row : rows) {
        out += kernel_name(row.kernel);
        out += ',';
        out += bench_variable_name(row.variable);
        out += ',';
        out += std::to_string(row.value);
        out += ',';
        out += fmt_double(row.mean_seconds);
        out += ',';
        out += fmt_double(row.std_seconds);
        out += '\n';
    }
    return out;
}

std::vector<BenchRow> parse_bench_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "kernel,variable,value,mean_seconds,std_seconds")
        throw ParseError("bench csv: bad header");

    std::vector<BenchRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::istringstream fields(line);
        std::string kernel, variable, value, mean, stddev;
        if (!std::getline(fields, kernel, ',') || !std::getline(fields, variable, ',') ||
            !std::getline(fields, value, ',') || !std::getline(fields, mean, ',') ||
            !std::getline(fields, stddev))
            throw ParseError("bench csv: parse error at line " + std::to_string(line_no));
        // from_chars keeps the parse locale-independent, matching the writer.
        auto parse_int = [&](const std::string& s, int& out) {
            auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
            return ec == std::errc() && p == s.data() + s.size();
        };
        auto parse_dbl = [&](const std::string& s, double& out) {
            auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
            return ec == std::errc() && p == s.data() + s.size();
        };
        BenchRow row;
        row.kernel = kernel_from_name(kernel);
        row.variable = bench_variable_from_name(variable);
        if (!parse_int(value, row.value) || !parse_dbl(mean, row.mean_seconds) ||
            !parse_dbl(stddev, row.std_seconds))
            throw ParseError("bench csv: parse error at line " + std::to_string(line_no));
        rows.push_back(row);
    }
    if (rows.empty())
        throw ParseError("bench csv: no data rows");
    return rows;
}

}  // namespace ggeval
