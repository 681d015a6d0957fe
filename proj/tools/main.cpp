#include <charconv>
#include <cmath>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ggeval/analysis.hpp"
#include "ggeval/bench.hpp"
#include "ggeval/dataset_io.hpp"
#include "ggeval/error.hpp"
#include "ggeval/numfmt.hpp"
#include "ggeval/parallel.hpp"
#include "ggeval/report_io.hpp"
#include "ggeval/svg.hpp"
#include "ggeval/synth.hpp"

namespace {

using namespace ggeval;

// Exit codes: 0 success, 1 usage error (bad flags or flag values),
// 2 data or validation error while running.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int g_log_level = 1;  // 0 quiet, 1 info, 2 debug

void log_info(const std::string& msg) {
    if (g_log_level >= 1)
        std::cerr << "[info] " << msg << "\n";
}

void log_debug(const std::string& msg) {
    if (g_log_level >= 2)
        std::cerr << "[debug] " << msg << "\n";
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_number(const std::string& s) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw UsageError("not a number: '" + s + "'");
    return v;
}

int parse_integer(const std::string& s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw UsageError("not an integer: '" + s + "'");
    return v;
}

// Kill accumulated float drift on grid values so filenames and report
// keys come out as the obvious decimals.
double snap_level(double v) { return std::round(v * 1e9) / 1e9; }

// Level grammar: "start:end:step" or a comma list. Values must be
// strictly ascending within [0,1].
std::vector<double> parse_levels(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3)
            throw UsageError("level range must be start:end:step, got '" + text + "'");
        const double a = parse_number(parts[0]);
        const double b = parse_number(parts[1]);
        const double s = parse_number(parts[2]);
        if (!(s > 0.0))
            throw UsageError("level step must be positive");
        for (int i = 0;; ++i) {
            const double v = snap_level(a + i * s);
            if (v > b + 1e-9)
                break;
            out.push_back(v);
        }
    } else {
        for (const std::string& tok : split(text, ','))
            out.push_back(snap_level(parse_number(tok)));
    }
    PerturbationLevelGrid grid{out};
    try {
        validate_grid(grid);
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }
    return out;
}

// Scale grammar: "start:end:log10" walks decades, "start:end:step" is
// arithmetic, otherwise a comma list. All values must be positive.
std::vector<double> parse_scales(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3)
            throw UsageError("scale range must be start:end:step, got '" + text + "'");
        const double a = parse_number(parts[0]);
        const double b = parse_number(parts[1]);
        if (!(a > 0.0) || !(b >= a))
            throw UsageError("scale range must be positive and ascending");
        if (parts[2] == "log10") {
            // Walk whole decades via decimal literals so 1e-5..1e5 print
            // exactly as entered.
            const int e0 = static_cast<int>(std::lround(std::log10(a)));
            const int e1 = static_cast<int>(std::lround(std::log10(b)));
            const bool decades = std::abs(std::pow(10.0, e0) - a) <= a * 1e-12 &&
                                 std::abs(std::pow(10.0, e1) - b) <= b * 1e-12;
            if (decades) {
                for (int e = e0; e <= e1; ++e)
                    out.push_back(parse_number("1e" + std::to_string(e)));
            } else {
                for (double v = a; v <= b * (1.0 + 1e-12); v *= 10.0)
                    out.push_back(v);
            }
        } else {
            const double s = parse_number(parts[2]);
            if (!(s > 0.0))
                throw UsageError("scale step must be positive");
            for (int i = 0;; ++i) {
                const double v = a + i * s;
                if (v > b + s * 1e-9)
                    break;
                out.push_back(v);
            }
        }
    } else {
        for (const std::string& tok : split(text, ','))
            out.push_back(parse_number(tok));
    }
    if (out.empty())
        throw UsageError("empty scale grid");
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!(out[i] > 0.0))
            throw UsageError("scales must be positive");
        if (i > 0 && out[i] <= out[i - 1])
            throw UsageError("scales must be strictly ascending");
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3)
            throw UsageError("value range must be start:end:step, got '" + text + "'");
        const int a = parse_integer(parts[0]);
        const int b = parse_integer(parts[1]);
        const int s = parse_integer(parts[2]);
        if (s < 1)
            throw UsageError("step must be positive");
        for (int v = a; v <= b; v += s)
            out.push_back(v);
    } else {
        for (const std::string& tok : split(text, ','))
            out.push_back(parse_integer(tok));
    }
    if (out.empty())
        throw UsageError("empty value list");
    return out;
}

// "degree=auto,clustering=100,spectral=200"; multiple counts per
// descriptor separated by '|', e.g. "degree=8|16|32".
std::map<DescriptorKind, std::vector<int>> parse_bins(const std::string& text) {
    std::map<DescriptorKind, std::vector<int>> out;
    for (const std::string& item : split(text, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw UsageError("bins entry must be descriptor=count, got '" + item + "'");
        DescriptorKind kind;
        try {
            kind = descriptor_from_name(item.substr(0, eq));
        } catch (const ConfigError& e) {
            throw UsageError(e.what());
        }
        std::vector<int> counts;
        for (const std::string& tok : split(item.substr(eq + 1), '|')) {
            if (tok == "auto") {
                counts.push_back(AUTO_MAX_DEGREE);
            } else {
                const int v = parse_integer(tok);
                if (v < 1)
                    throw UsageError("bin count must be positive, got '" + tok + "'");
                counts.push_back(v);
            }
        }
        out[kind] = counts;
    }
    return out;
}

std::vector<DescriptorSpec> parse_descriptors(const std::string& descriptors,
                                              const std::string& bins,
                                              bool normalize) {
    auto bin_map = parse_bins(bins);
    std::vector<DescriptorSpec> out;
    for (const std::string& name : split(descriptors, ',')) {
        DescriptorKind kind;
        try {
            kind = descriptor_from_name(name);
        } catch (const ConfigError& e) {
            throw UsageError(e.what());
        }
        auto it = bin_map.find(kind);
        std::vector<int> counts;
        if (it != bin_map.end()) {
            counts = it->second;
        } else {
            switch (kind) {
            case DescriptorKind::DEGREE: counts = {AUTO_MAX_DEGREE}; break;
            case DescriptorKind::CLUSTERING: counts = {100}; break;
            case DescriptorKind::SPECTRAL: counts = {200}; break;
            }
        }
        for (int c : counts) {
            DescriptorSpec spec;
            spec.kind = kind;
            spec.n_bin = c;
            spec.normalize = normalize;
            if (kind != DescriptorKind::DEGREE && c == AUTO_MAX_DEGREE)
                throw UsageError("auto bins are only defined for the degree descriptor");
            out.push_back(spec);
        }
    }
    if (out.empty())
        throw UsageError("no descriptors selected");
    return out;
}

std::vector<KernelGrid> parse_kernels(const std::string& kernels,
                                      const std::vector<double>& scales) {
    std::vector<KernelGrid> out;
    for (const std::string& name : split(kernels, ',')) {
        KernelGrid grid;
        try {
            grid.family = kernel_from_name(name);
        } catch (const ConfigError& e) {
            throw UsageError(e.what());
        }
        if (grid.family != KernelFamily::LINEAR)
            grid.scales = scales;
        out.push_back(grid);
    }
    if (out.empty())
        throw UsageError("no kernels selected");
    return out;
}

template <typename Fn>
auto named(Fn&& fn, const char* what) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        throw UsageError(std::string(what) + ": " + e.what());
    }
}

struct Common {
    long long seed = -1;
    unsigned threads = 0;
    std::string log_level = "info";
};

void apply_common(const Common& c) {
    if (c.log_level == "quiet")
        g_log_level = 0;
    else if (c.log_level == "info")
        g_log_level = 1;
    else if (c.log_level == "debug")
        g_log_level = 2;
    else
        throw UsageError("unknown log level: " + c.log_level);
    set_worker_threads(c.threads);
}

std::uint64_t require_seed(const Common& c, const char* cmd) {
    if (c.seed < 0)
        throw UsageError(std::string("--seed is required for ") + cmd);
    return static_cast<std::uint64_t>(c.seed);
}

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "random seed (required for stochastic commands)");
    cmd->add_option("--threads", c.threads, "worker threads, 0 = all cores")
        ->default_val(0u);
    cmd->add_option("--log-level", c.log_level, "quiet|info|debug")
        ->default_val("info");
}

GraphSet load_named(const std::filesystem::path& path) {
    GraphSet set = load_dataset(path);
    set.name = path.stem().string();
    return set;
}

// ---------------------------------------------------------------- generate

struct GenerateOpts {
    Common common;
    std::string family;
    int n_graphs = 0;
    std::string nodes;
    double p_edge = 0.5;
    int ba_m = 2;
    int ws_k = 4;
    double ws_p_rewire = 0.1;
    int communities = 2;
    double p_intra = 0.7;
    double p_inter = 0.05;
    std::string out;
};

int run_generate(const GenerateOpts& opt) {
    apply_common(opt.common);
    const std::uint64_t seed = require_seed(opt.common, "generate");

    GeneratorSpec spec;
    spec.family = named([&] { return family_from_name(opt.family); }, "--family");
    spec.n_graphs = opt.n_graphs;
    const auto nodes = split(opt.nodes, ':');
    if (nodes.size() == 1) {
        spec.nodes_lo = spec.nodes_hi = parse_integer(nodes[0]);
    } else if (nodes.size() == 2) {
        spec.nodes_lo = parse_integer(nodes[0]);
        spec.nodes_hi = parse_integer(nodes[1]);
    } else {
        throw UsageError("--nodes takes N or LO:HI");
    }
    spec.p_edge = opt.p_edge;
    spec.ba_m = opt.ba_m;
    spec.ws_k = opt.ws_k;
    spec.ws_p_rewire = opt.ws_p_rewire;
    spec.communities = opt.communities;
    spec.p_intra = opt.p_intra;
    spec.p_inter = opt.p_inter;
    named([&] { validate_spec(spec); return 0; }, "generator parameters");

    const GraphSet set = generate_dataset(spec, seed);
    save_dataset(set, opt.out);
    log_info("wrote " + std::to_string(set.graphs.size()) + " graphs to " + opt.out);
    return 0;
}

// ----------------------------------------------------------------- perturb

struct PerturbOpts {
    Common common;
    std::string input;
    std::string kind;
    std::string levels = "0.0:1.0:0.1";
    int n_add = 5;
    std::string out_dir;
};

int run_perturb(const PerturbOpts& opt) {
    apply_common(opt.common);
    const std::uint64_t seed = require_seed(opt.common, "perturb");
    const PerturbKind kind = named([&] { return perturb_from_name(opt.kind); }, "--kind");
    const std::vector<double> levels = parse_levels(opt.levels);
    if (opt.n_add < 0)
        throw UsageError("--n-add must be non-negative");

    const GraphSet base = load_named(opt.input);
    log_info("loaded " + std::to_string(base.graphs.size()) + " graphs from " + opt.input);

    const auto level_sets =
        perturb_sweep(base, kind, PerturbationLevelGrid{levels}, seed, opt.n_add);
    std::filesystem::create_directories(opt.out_dir);
    for (std::size_t l = 0; l < levels.size(); ++l) {
        const std::filesystem::path out =
            std::filesystem::path(opt.out_dir) / ("level_" + fmt_double(levels[l]) + ".jsonl");
        save_dataset(level_sets[l], out);
        log_debug("wrote " + out.string());
    }
    log_info("wrote " + std::to_string(levels.size()) + " level files to " + opt.out_dir);
    return 0;
}

// ------------------------------------------------------------------ select

struct SelectOpts {
    Common common;
    std::vector<std::string> inputs;
    std::string descriptors = "degree,clustering,spectral";
    std::string bins = "degree=auto,clustering=100,spectral=200";
    bool normalize = true;
    std::string kernels = "linear,rbf,laplacian-tv,emd";
    std::string scales = "1e-5:1e5:log10";
    std::string perturbations = "add-edges,remove-edges,rewire-edges,add-connected-nodes";
    std::string levels = "0.0:1.0:0.1";
    int n_add = 5;
    std::string correlation = "pearson";
    int mi_bins = 0;
    std::string estimator = "unbiased";
    std::string strategy = "best-average";
    std::string target;
    std::string out;
    std::string csv;
};

int run_select(const SelectOpts& opt) {
    apply_common(opt.common);

    ExperimentConfig cfg;
    cfg.seed = require_seed(opt.common, "select");
    cfg.descriptors = parse_descriptors(opt.descriptors, opt.bins, opt.normalize);
    cfg.kernels = parse_kernels(opt.kernels, parse_scales(opt.scales));
    for (const std::string& name : split(opt.perturbations, ','))
        cfg.kinds.push_back(named([&] { return perturb_from_name(name); }, "--perturbations"));
    cfg.grid.levels = parse_levels(opt.levels);
    cfg.measure = named([&] { return measure_from_name(opt.correlation); }, "--correlation");
    cfg.estimator = named([&] { return estimator_from_name(opt.estimator); }, "--estimator");
    cfg.n_add = opt.n_add;
    cfg.mi_bins = opt.mi_bins;
    const SelectionStrategy strategy =
        named([&] { return strategy_from_name(opt.strategy); }, "--strategy");
    std::optional<PerturbKind> target;
    if (!opt.target.empty())
        target = named([&] { return perturb_from_name(opt.target); }, "--target");
    if (strategy == SelectionStrategy::BEST_SINGLE_PERTURBATION && !target)
        throw UsageError("--strategy best-single-perturbation needs --target");

    std::vector<CorrelationReport> parts;
    for (const std::string& input : opt.inputs) {
        const GraphSet base = load_named(input);
        log_info("loaded " + std::to_string(base.graphs.size()) + " graphs from " + input);
        parts.push_back(perturbation_experiment(base, cfg));
        log_info("finished experiment on " + base.name);
    }
    CorrelationReport report = merge_reports(parts);
    report.selection = select_config(report, strategy, target);

    write_file_atomic(opt.out, correlation_report_json(report));
    log_info("wrote " + opt.out);
    if (!opt.csv.empty()) {
        write_file_atomic(opt.csv, mmd_csv(csv_rows_from_correlation(report)));
        log_info("wrote " + opt.csv);
    }

    const SelectionResult& sel = *report.selection;
    log_info("selected " + descriptor_label(sel.descriptor) + " with " +
             kernel_name(sel.kernel) +
             (sel.scale ? " at scale " + fmt_double(*sel.scale) : "") +
             " (objective " + fmt_double(sel.objective) + ")");
    return 0;
}

// -------------------------------------------------------------------- rank

struct RankOpts {
    Common common;
    std::string test;
    std::string train;
    std::vector<std::string> models;
    std::string pseudo_levels;
    std::string descriptors = "degree";
    std::string bins = "degree=auto,clustering=100,spectral=200";
    bool normalize = true;
    std::string kernels = "rbf";
    std::string scales = "1e-5:1e5:log10";
    std::string estimator = "unbiased";
    std::string out;
    std::string csv;
    std::string svg;
    std::string svg_descriptor;
    std::string svg_kernel;
};

int run_rank(const RankOpts& opt) {
    apply_common(opt.common);

    const std::vector<DescriptorSpec> descriptors =
        parse_descriptors(opt.descriptors, opt.bins, opt.normalize);
    const std::vector<KernelGrid> kernels =
        parse_kernels(opt.kernels, parse_scales(opt.scales));
    const Estimator est =
        named([&] { return estimator_from_name(opt.estimator); }, "--estimator");
    if (opt.models.empty() && opt.pseudo_levels.empty())
        throw UsageError("rank needs --model entries or --pseudo-models");

    const GraphSet test = load_named(opt.test);
    const GraphSet train = load_named(opt.train);
    log_info("loaded test (" + std::to_string(test.graphs.size()) + ") and train (" +
             std::to_string(train.graphs.size()) + ")");

    std::deque<GraphSet> owned;
    std::vector<NamedSet> models;
    for (const std::string& entry : opt.models) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw UsageError("--model takes NAME=PATH, got '" + entry + "'");
        const std::string name = entry.substr(0, eq);
        owned.push_back(load_named(entry.substr(eq + 1)));
        models.push_back({name, &owned.back()});
    }
    if (!opt.pseudo_levels.empty()) {
        const std::uint64_t seed = require_seed(opt.common, "rank with pseudo-models");
        const std::vector<double> levels = parse_levels(opt.pseudo_levels);
        auto rewired = perturb_sweep(test, PerturbKind::REWIRE_EDGES,
                                     PerturbationLevelGrid{levels}, seed);
        for (std::size_t l = 0; l < levels.size(); ++l) {
            owned.push_back(std::move(rewired[l]));
            models.push_back({"rewire-" + fmt_double(levels[l]), &owned.back()});
        }
        log_info("built " + std::to_string(levels.size()) + " rewired pseudo-models");
    }
    for (std::size_t i = 0; i < models.size(); ++i)
        for (std::size_t j = i + 1; j < models.size(); ++j)
            if (models[i].name == models[j].name)
                throw UsageError("duplicate model name: " + models[i].name);

    const RankingReport report = rank_models(test, train, models, descriptors, kernels, est);
    write_file_atomic(opt.out, ranking_report_json(report));
    log_info("wrote " + opt.out);
    if (!opt.csv.empty()) {
        write_file_atomic(opt.csv, mmd_csv(csv_rows_from_ranking(report)));
        log_info("wrote " + opt.csv);
    }
    if (!opt.svg.empty()) {
        DescriptorKind kind = descriptors.front().kind;
        if (!opt.svg_descriptor.empty())
            kind = named([&] { return descriptor_from_name(opt.svg_descriptor); },
                         "--svg-descriptor");
        KernelFamily family = KernelFamily::RBF_EUCLIDEAN;
        bool found = false;
        for (const KernelGrid& kg : kernels)
            if (kg.family != KernelFamily::LINEAR) {
                family = kg.family;
                found = true;
                break;
            }
        if (!opt.svg_kernel.empty()) {
            family = named([&] { return kernel_from_name(opt.svg_kernel); }, "--svg-kernel");
            found = true;
        }
        if (!found)
            throw UsageError("the scale plot needs a kernel with a scale");
        write_file_atomic(opt.svg, render_mmd_vs_scale(report, kind, family));
        log_info("wrote " + opt.svg);
    }
    return 0;
}

// ------------------------------------------------------------------- bench

struct BenchOpts {
    Common common;
    std::string variable = "n-graphs";
    std::string values = "100:1000:100";
    int fixed_graphs = 100;
    int fixed_nodes = 100;
    int fixed_bins = 100;
    int repetitions = 10;
    double er_p = 0.3;
    std::string kernels = "linear,rbf,laplacian-tv,emd";
    bool parallel = false;
    std::string out;
    std::string svg;
};

int run_bench(const BenchOpts& opt) {
    apply_common(opt.common);
    const std::uint64_t seed = require_seed(opt.common, "bench");

    BenchSpec spec;
    spec.variable =
        named([&] { return bench_variable_from_name(opt.variable); }, "--variable");
    spec.values = parse_int_list(opt.values);
    spec.fixed_graphs = opt.fixed_graphs;
    spec.fixed_nodes = opt.fixed_nodes;
    spec.fixed_bins = opt.fixed_bins;
    spec.repetitions = opt.repetitions;
    spec.er_p = opt.er_p;
    spec.parallel = opt.parallel;

    std::vector<KernelFamily> kernels;
    for (const std::string& name : split(opt.kernels, ','))
        kernels.push_back(named([&] { return kernel_from_name(name); }, "--kernels"));

    log_info("benchmarking " + std::to_string(kernels.size()) + " kernels over " +
             std::to_string(spec.values.size()) + " values, " +
             std::to_string(spec.repetitions) + " repetitions each");
    const std::vector<BenchRow> rows = bench_kernels(spec, kernels, seed);
    write_file_atomic(opt.out, bench_csv(rows));
    log_info("wrote " + opt.out);
    if (!opt.svg.empty()) {
        write_file_atomic(opt.svg, render_bench_lines(rows));
        log_info("wrote " + opt.svg);
    }
    return 0;
}

// ------------------------------------------------------------------ report

struct ReportOpts {
    Common common;
    std::string input;
    std::string kind;
    std::string descriptor = "degree";
    std::string kernel = "rbf";
    std::string out;
};

int run_report(const ReportOpts& opt) {
    apply_common(opt.common);
    const std::string text = read_file(opt.input);

    std::string svg;
    if (opt.kind == "mmd-vs-scale") {
        const RankingReport report = parse_ranking_report(text);
        svg = render_mmd_vs_scale(
            report, named([&] { return descriptor_from_name(opt.descriptor); }, "--descriptor"),
            named([&] { return kernel_from_name(opt.kernel); }, "--kernel"));
    } else if (opt.kind == "heatmap-best-worst") {
        const CorrelationReport report = parse_correlation_report(text);
        svg = render_best_worst(best_worst_heatmap(report));
    } else if (opt.kind == "heatmap-argmin") {
        const RankingReport report = parse_ranking_report(text);
        svg = render_argmin_heatmap(
            report, named([&] { return descriptor_from_name(opt.descriptor); }, "--descriptor"),
            named([&] { return kernel_from_name(opt.kernel); }, "--kernel"));
    } else if (opt.kind == "bench-lines") {
        svg = render_bench_lines(parse_bench_csv(text));
    } else {
        throw UsageError("unknown plot kind: " + opt.kind);
    }
    write_file_atomic(opt.out, svg);
    log_info("wrote " + opt.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph distribution evaluation toolkit"};
    app.require_subcommand(1);

    GenerateOpts gen;
    auto* cmd_gen = app.add_subcommand("generate", "sample a synthetic graph dataset");
    add_common(cmd_gen, gen.common);
    cmd_gen->add_option("--family", gen.family, "er|ba|ws|community")->required();
    cmd_gen->add_option("--n-graphs", gen.n_graphs, "number of graphs")->required();
    cmd_gen->add_option("--nodes", gen.nodes, "node count N or range LO:HI")->required();
    cmd_gen->add_option("--p-edge", gen.p_edge, "er edge probability");
    cmd_gen->add_option("--m", gen.ba_m, "ba attachments per vertex");
    cmd_gen->add_option("--k", gen.ws_k, "ws ring neighbors (even)");
    cmd_gen->add_option("--p-rewire", gen.ws_p_rewire, "ws rewiring probability");
    cmd_gen->add_option("--communities", gen.communities, "community count");
    cmd_gen->add_option("--p-intra", gen.p_intra, "within-community edge probability");
    cmd_gen->add_option("--p-inter", gen.p_inter, "cross-community edge probability");
    cmd_gen->add_option("--out", gen.out, "output JSONL path")->required();

    PerturbOpts per;
    auto* cmd_per = app.add_subcommand("perturb", "write perturbed copies of a dataset");
    add_common(cmd_per, per.common);
    cmd_per->add_option("--input", per.input, "input JSONL dataset")->required();
    cmd_per->add_option("--kind", per.kind,
                        "add-edges|remove-edges|rewire-edges|add-connected-nodes")
        ->required();
    cmd_per->add_option("--levels", per.levels, "levels, start:end:step or comma list");
    cmd_per->add_option("--n-add", per.n_add, "new vertices for add-connected-nodes");
    cmd_per->add_option("--out-dir", per.out_dir, "directory for level_<p>.jsonl files")
        ->required();

    SelectOpts sel;
    auto* cmd_sel = app.add_subcommand(
        "select", "correlate MMD with perturbation level and pick a configuration");
    add_common(cmd_sel, sel.common);
    cmd_sel->add_option("--input", sel.inputs, "input JSONL dataset(s)")
        ->required()
        ->delimiter(',');
    cmd_sel->add_option("--descriptors", sel.descriptors, "comma list of descriptors");
    cmd_sel->add_option("--bins", sel.bins, "descriptor=count[,descriptor=count...]");
    cmd_sel->add_flag("--normalize,!--no-normalize", sel.normalize,
                      "normalize degree histograms by node count");
    cmd_sel->add_option("--kernels", sel.kernels, "comma list of kernel families");
    cmd_sel->add_option("--scales", sel.scales, "scale grid, start:end:log10 or comma list");
    cmd_sel->add_option("--perturbations", sel.perturbations, "comma list of kinds");
    cmd_sel->add_option("--levels", sel.levels, "perturbation levels");
    cmd_sel->add_option("--n-add", sel.n_add, "new vertices for add-connected-nodes");
    cmd_sel->add_option("--correlation", sel.correlation, "pearson|spearman|mi");
    cmd_sel->add_option("--mi-bins", sel.mi_bins, "contingency bins for mi (0 = auto)");
    cmd_sel->add_option("--estimator", sel.estimator, "biased|unbiased");
    cmd_sel->add_option("--strategy", sel.strategy,
                        "best-average|best-single-perturbation");
    cmd_sel->add_option("--target", sel.target, "target kind for best-single-perturbation");
    cmd_sel->add_option("--out", sel.out, "output report JSON path")->required();
    cmd_sel->add_option("--csv", sel.csv, "optional MMD table CSV path");

    RankOpts rnk;
    auto* cmd_rnk = app.add_subcommand("rank", "rank model outputs against a test set");
    add_common(cmd_rnk, rnk.common);
    cmd_rnk->add_option("--test", rnk.test, "test set JSONL")->required();
    cmd_rnk->add_option("--train", rnk.train, "training set JSONL (scale anchor)")
        ->required();
    cmd_rnk->add_option("--model", rnk.models, "model output as NAME=PATH (repeatable)");
    cmd_rnk->add_option("--pseudo-models", rnk.pseudo_levels,
                        "rewiring levels for pseudo-models built from the test set");
    cmd_rnk->add_option("--descriptors", rnk.descriptors, "comma list of descriptors");
    cmd_rnk->add_option("--bins", rnk.bins,
                        "descriptor=count; use a|b for several counts per descriptor");
    cmd_rnk->add_flag("--normalize,!--no-normalize", rnk.normalize,
                      "normalize degree histograms by node count");
    cmd_rnk->add_option("--kernels", rnk.kernels, "comma list of kernel families");
    cmd_rnk->add_option("--scales", rnk.scales, "scale grid");
    cmd_rnk->add_option("--estimator", rnk.estimator, "biased|unbiased");
    cmd_rnk->add_option("--out", rnk.out, "output ranking JSON path")->required();
    cmd_rnk->add_option("--csv", rnk.csv, "optional MMD table CSV path");
    cmd_rnk->add_option("--svg", rnk.svg, "optional MMD-vs-scale SVG path");
    cmd_rnk->add_option("--svg-descriptor", rnk.svg_descriptor, "descriptor for --svg");
    cmd_rnk->add_option("--svg-kernel", rnk.svg_kernel, "kernel family for --svg");

    BenchOpts ben;
    auto* cmd_ben = app.add_subcommand("bench", "measure kernel + MMD runtime");
    add_common(cmd_ben, ben.common);
    cmd_ben->add_option("--variable", ben.variable, "n-graphs|n-nodes|n-bins");
    cmd_ben->add_option("--values", ben.values, "swept values, start:end:step or list");
    cmd_ben->add_option("--fixed-graphs", ben.fixed_graphs, "graphs per set when fixed");
    cmd_ben->add_option("--fixed-nodes", ben.fixed_nodes, "nodes per graph when fixed");
    cmd_ben->add_option("--fixed-bins", ben.fixed_bins, "histogram bins when fixed");
    cmd_ben->add_option("--repetitions", ben.repetitions, "timed repetitions");
    cmd_ben->add_option("--er-p", ben.er_p, "edge probability of the ER inputs");
    cmd_ben->add_option("--kernels", ben.kernels, "comma list of kernel families");
    cmd_ben->add_flag("--parallel", ben.parallel, "allow multithreaded measurement");
    cmd_ben->add_option("--out", ben.out, "output CSV path")->required();
    cmd_ben->add_option("--svg", ben.svg, "optional runtime plot SVG path");

    ReportOpts rep;
    auto* cmd_rep = app.add_subcommand("report", "render an SVG plot from saved results");
    add_common(cmd_rep, rep.common);
    cmd_rep->add_option("--input", rep.input, "report JSON or bench CSV")->required();
    cmd_rep->add_option("--kind", rep.kind,
                        "mmd-vs-scale|heatmap-best-worst|heatmap-argmin|bench-lines")
        ->required();
    cmd_rep->add_option("--descriptor", rep.descriptor, "descriptor for scale/argmin plots");
    cmd_rep->add_option("--kernel", rep.kernel, "kernel family for scale/argmin plots");
    cmd_rep->add_option("--out", rep.out, "output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (cmd_gen->parsed())
            return run_generate(gen);
        if (cmd_per->parsed())
            return run_perturb(per);
        if (cmd_sel->parsed())
            return run_select(sel);
        if (cmd_rnk->parsed())
            return run_rank(rnk);
        if (cmd_ben->parsed())
            return run_bench(ben);
        if (cmd_rep->parsed())
            return run_report(rep);
        std::cerr << "error: no subcommand\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
