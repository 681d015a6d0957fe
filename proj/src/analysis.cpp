#include "ggeval/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ggeval/error.hpp"
#include "ggeval/numfmt.hpp"

namespace ggeval {

namespace {

void check_series(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw ConfigError("series lengths differ");
    // A lone observation cannot vary, so it falls under the same error the
    // experiment pipeline already degrades gracefully on.
    if (xs.size() < 2)
        throw ConstantSeriesError("dependence measures need at least 2 points");
}

}  // namespace

double pearson(std::span<const double> xs, std::span<const double> ys) {
    check_series(xs, ys);
    const auto n = xs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0)
        throw ConstantSeriesError("first series is constant");
    if (syy == 0.0)
        throw ConstantSeriesError("second series is constant");
    return sxy / (std::sqrt(sxx) * std::sqrt(syy));
}

std::vector<double> average_ranks(std::span<const double> xs) {
    const auto n = xs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (xs[a] != xs[b])
            return xs[a] < xs[b];
        return a < b;
    });

    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]])
            ++j;
        // 1-based average rank of the tie run [i, j].
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k)
            ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
    check_series(xs, ys);
    const std::vector<double> rx = average_ranks(xs);
    const std::vector<double> ry = average_ranks(ys);
    // Identical rankings are perfectly correlated by definition; returning
    // 1 directly keeps that exact instead of round-tripping through sqrt.
    if (rx == ry)
        return 1.0;
    return pearson(rx, ry);
}

namespace {

// Quantile bin per element: sort, give each tie run the rank of its first
// element, bin = rank * q / n. Ties can never straddle a bin boundary.
std::vector<int> quantile_bins(std::span<const double> xs, int q) {
    const auto n = xs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (xs[a] != xs[b])
            return xs[a] < xs[b];
        return a < b;
    });

    std::vector<int> bins(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]])
            ++j;
        const int bin = static_cast<int>(i * static_cast<std::size_t>(q) / n);
        for (std::size_t k = i; k <= j; ++k)
            bins[order[k]] = bin;
        i = j + 1;
    }
    return bins;
}

}  // namespace

double mutual_information(std::span<const double> xs, std::span<const double> ys, int q) {
    check_series(xs, ys);
    if (q < 1)
        throw ConfigError("mutual information needs at least 1 bin");

    const auto n = xs.size();
    const std::vector<int> bx = quantile_bins(xs, q);
    const std::vector<int> by = quantile_bins(ys, q);

    // Integer cell counts; the probability ratio becomes a single division
    // of exact integers, so saturated tables give exact bit counts.
    std::vector<long long> joint(static_cast<std::size_t>(q) * static_cast<std::size_t>(q), 0);
    std::vector<long long> px(static_cast<std::size_t>(q), 0);
    std::vector<long long> py(static_cast<std::size_t>(q), 0);
    for (std::size_t i = 0; i < n; ++i) {
        ++joint[static_cast<std::size_t>(bx[i]) * static_cast<std::size_t>(q) +
                static_cast<std::size_t>(by[i])];
        ++px[static_cast<std::size_t>(bx[i])];
        ++py[static_cast<std::size_t>(by[i])];
    }

    double mi = 0.0;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
            const long long c = joint[static_cast<std::size_t>(a) * static_cast<std::size_t>(q) +
                                      static_cast<std::size_t>(b)];
            if (c > 0) {
                const double ratio =
                    static_cast<double>(c * static_cast<long long>(n)) /
                    static_cast<double>(px[static_cast<std::size_t>(a)] *
                                        py[static_cast<std::size_t>(b)]);
                mi += static_cast<double>(c) / static_cast<double>(n) * std::log2(ratio);
            }
        }
    return mi;
}

namespace {

int resolve_mi_bins(int requested, std::size_t n_levels) {
    if (requested > 0)
        return requested;
    const int by_len = static_cast<int>(n_levels / 4);
    return std::max(2, std::min(5, by_len));
}

bool is_constant(const std::vector<double>& xs) {
    for (double v : xs)
        if (v != xs.front())
            return false;
    return true;
}

std::uint64_t kind_seed(std::uint64_t seed, std::size_t kind_index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(0x5eedULL + kind_index));
}

}  // namespace

CorrelationReport perturbation_experiment(const GraphSet& base, const ExperimentConfig& cfg) {
    if (cfg.descriptors.empty())
        throw ConfigError("experiment needs at least one descriptor");
    if (cfg.kernels.empty())
        throw ConfigError("experiment needs at least one kernel");
    if (cfg.kinds.empty())
        throw ConfigError("experiment needs at least one perturbation kind");
    validate_grid(cfg.grid);
    if (cfg.grid.levels.size() < 2)
        throw ConfigError("experiment needs at least 2 perturbation levels");
    for (const KernelGrid& kg : cfg.kernels)
        if (kg.family != KernelFamily::LINEAR && kg.scales.empty())
            throw ConfigError("kernel family " + kernel_name(kg.family) +
                              " needs a scale grid");

    CorrelationReport report;
    report.datasets = {base.name};
    report.measure = cfg.measure;
    report.estimator = cfg.estimator;
    report.levels = cfg.grid.levels;
    report.n_add = cfg.n_add;
    report.seed = cfg.seed;

    const std::size_t n_levels = cfg.grid.levels.size();
    const int mi_q = resolve_mi_bins(cfg.mi_bins, n_levels);

    // Perturb once per kind; every descriptor/kernel sees the same copies.
    std::vector<std::vector<GraphSet>> perturbed;
    perturbed.reserve(cfg.kinds.size());
    for (std::size_t k = 0; k < cfg.kinds.size(); ++k)
        perturbed.push_back(perturb_sweep(base, cfg.kinds[k], cfg.grid,
                                          kind_seed(cfg.seed, k), cfg.n_add));

    auto correlate = [&](const std::vector<double>& series) -> std::optional<double> {
        if (is_constant(series)) {
            report.warning = "constant MMD series; affected coefficients are missing";
            return std::nullopt;
        }
        try {
            switch (cfg.measure) {
            case Measure::PEARSON: return pearson(cfg.grid.levels, series);
            case Measure::SPEARMAN: return spearman(cfg.grid.levels, series);
            case Measure::MUTUAL_INFORMATION:
                return mutual_information(cfg.grid.levels, series, mi_q);
            }
        } catch (const ConstantSeriesError&) {
            report.warning = "constant MMD series; affected coefficients are missing";
            return std::nullopt;
        }
        throw ConfigError("unknown measure");
    };

    for (const DescriptorSpec& d : cfg.descriptors) {
        // One shared support across the base set and every perturbed copy.
        std::vector<const GraphSet*> all_sets = {&base};
        for (const auto& level_sets : perturbed)
            for (const GraphSet& s : level_sets)
                all_sets.push_back(&s);
        const DescriptorSpec resolved = resolve_bins(d, all_sets);

        const std::vector<Histogram> base_h = describe_set(base, resolved);
        std::vector<std::vector<std::vector<Histogram>>> hists(cfg.kinds.size());
        for (std::size_t k = 0; k < cfg.kinds.size(); ++k) {
            hists[k].reserve(n_levels);
            for (std::size_t l = 0; l < n_levels; ++l)
                hists[k].push_back(describe_set(perturbed[k][l], resolved));
        }

        for (const KernelGrid& kg : cfg.kernels) {
            auto emit_row = [&](std::optional<double> scale, std::size_t k,
                                std::vector<double> series) {
                CorrelationRow row;
                row.dataset = base.name;
                row.descriptor = resolved;
                row.kernel = kg.family;
                row.scale = scale;
                row.kind = cfg.kinds[k];
                row.coefficient = correlate(series);
                row.mmd2 = std::move(series);
                row.n = static_cast<int>(base.graphs.size());
                row.m = row.n;
                report.rows.push_back(std::move(row));
            };

            if (kg.family == KernelFamily::LINEAR) {
                const KernelSpec spec = KernelSpec::linear();
                for (std::size_t k = 0; k < cfg.kinds.size(); ++k) {
                    std::vector<double> series(n_levels);
                    for (std::size_t l = 0; l < n_levels; ++l)
                        series[l] = mmd2(spec, base_h, hists[k][l], cfg.estimator).value;
                    emit_row(std::nullopt, k, std::move(series));
                }
                continue;
            }

            const DistanceFamily dist = distance_family_for(kg.family);
            // values[k][s][l]
            std::vector<std::vector<std::vector<double>>> values(
                cfg.kinds.size(),
                std::vector<std::vector<double>>(kg.scales.size(),
                                                 std::vector<double>(n_levels)));
            for (std::size_t k = 0; k < cfg.kinds.size(); ++k)
                for (std::size_t l = 0; l < n_levels; ++l) {
                    const GramCache cache = build_cache(base_h, hists[k][l], dist);
                    const auto swept =
                        mmd_sweep(cache, kg.family, kg.scales, cfg.estimator);
                    for (std::size_t s = 0; s < kg.scales.size(); ++s)
                        values[k][s][l] = swept[s].value;
                }
            for (std::size_t s = 0; s < kg.scales.size(); ++s)
                for (std::size_t k = 0; k < cfg.kinds.size(); ++k)
                    emit_row(kg.scales[s], k, values[k][s]);
        }
    }
    return report;
}

CorrelationReport merge_reports(const std::vector<CorrelationReport>& parts) {
    if (parts.empty())
        throw ConfigError("nothing to merge");
    CorrelationReport merged = parts.front();
    merged.selection.reset();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const CorrelationReport& p = parts[i];
        if (p.measure != merged.measure || p.estimator != merged.estimator ||
            p.levels != merged.levels || p.n_add != merged.n_add)
            throw ConfigError("cannot merge reports with different settings");
        merged.datasets.insert(merged.datasets.end(), p.datasets.begin(),
                               p.datasets.end());
        merged.rows.insert(merged.rows.end(), p.rows.begin(), p.rows.end());
        if (p.warning && !merged.warning)
            merged.warning = p.warning;
    }
    return merged;
}

std::string descriptor_label(const DescriptorSpec& spec) {
    std::string label = descriptor_name(spec.kind);
    label += "-";
    label += spec.n_bin == AUTO_MAX_DEGREE ? "auto" : std::to_string(spec.n_bin);
    if (spec.kind == DescriptorKind::DEGREE && !spec.normalize)
        label += "-raw";
    return label;
}

BestWorstHeatmap best_worst_heatmap(const CorrelationReport& report) {
    BestWorstHeatmap map;
    map.datasets = report.datasets;

    auto desc_index = [&](const std::string& label) {
        for (std::size_t i = 0; i < map.descriptors.size(); ++i)
            if (map.descriptors[i] == label)
                return i;
        map.descriptors.push_back(label);
        return map.descriptors.size() - 1;
    };
    auto kind_index = [&](PerturbKind kind) {
        for (std::size_t i = 0; i < map.kinds.size(); ++i)
            if (map.kinds[i] == kind)
                return i;
        map.kinds.push_back(kind);
        return map.kinds.size() - 1;
    };
    auto dataset_index = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < map.datasets.size(); ++i)
            if (map.datasets[i] == name)
                return i;
        throw ConfigError("row references unknown dataset " + name);
    };

    for (const CorrelationRow& row : report.rows) {
        desc_index(descriptor_label(row.descriptor));
        kind_index(row.kind);
    }
    map.cells.assign(map.kinds.size(),
                     std::vector<std::vector<HeatmapCell>>(
                         map.descriptors.size(),
                         std::vector<HeatmapCell>(map.datasets.size())));

    for (const CorrelationRow& row : report.rows) {
        if (!row.coefficient)
            continue;
        HeatmapCell& cell = map.cells[kind_index(row.kind)]
                                     [desc_index(descriptor_label(row.descriptor))]
                                     [dataset_index(row.dataset)];
        const double c = *row.coefficient;
        if (cell.missing) {
            cell.best = c;
            cell.worst = c;
            cell.missing = false;
        } else {
            cell.best = std::max(cell.best, c);
            cell.worst = std::min(cell.worst, c);
        }
    }
    return map;
}

namespace {

// Aggregated view of one (descriptor, kernel, scale) configuration.
struct ConfigAgg {
    DescriptorSpec descriptor;
    KernelFamily kernel = KernelFamily::LINEAR;
    std::optional<double> scale;
    // per kind: sum and count of defined coefficients over datasets
    std::map<std::string, std::pair<double, int>> acc;

    double mean_for(const std::string& kind) const {
        const auto it = acc.find(kind);
        if (it == acc.end() || it->second.second == 0)
            throw ConfigError("no defined coefficient");
        return it->second.first / it->second.second;
    }
    bool has(const std::string& kind) const {
        const auto it = acc.find(kind);
        return it != acc.end() && it->second.second > 0;
    }
};

std::string config_key(const CorrelationRow& row) {
    std::string key = descriptor_label(row.descriptor);
    key += "|";
    key += kernel_name(row.kernel);
    key += "|";
    key += row.scale ? fmt_double(*row.scale) : "-";
    return key;
}

}  // namespace

SelectionResult select_config(const CorrelationReport& report, SelectionStrategy strategy,
                              std::optional<PerturbKind> target) {
    if (strategy == SelectionStrategy::BEST_SINGLE_PERTURBATION && !target)
        throw ConfigError("best-single-perturbation needs a target perturbation kind");
    if (report.rows.empty())
        throw ConfigError("empty report");

    std::vector<ConfigAgg> configs;
    std::vector<std::string> keys;
    std::vector<std::string> kind_names;
    for (const CorrelationRow& row : report.rows) {
        const std::string key = config_key(row);
        std::size_t idx = keys.size();
        for (std::size_t i = 0; i < keys.size(); ++i)
            if (keys[i] == key) {
                idx = i;
                break;
            }
        if (idx == keys.size()) {
            keys.push_back(key);
            ConfigAgg agg;
            agg.descriptor = row.descriptor;
            agg.kernel = row.kernel;
            agg.scale = row.scale;
            configs.push_back(agg);
        }
        const std::string kn = perturb_name(row.kind);
        if (std::find(kind_names.begin(), kind_names.end(), kn) == kind_names.end())
            kind_names.push_back(kn);
        if (row.coefficient) {
            auto& [sum, count] = configs[idx].acc[kn];
            sum += *row.coefficient;
            ++count;
        }
    }

    const ConfigAgg* best = nullptr;
    double best_objective = 0.0;
    auto better = [&](const ConfigAgg& cand, double objective) {
        if (!best)
            return true;
        if (objective != best_objective)
            return objective > best_objective;
        // Ties: lower scale first, then the earlier kernel family.
        const double cs = cand.scale.value_or(0.0);
        const double bs = best->scale.value_or(0.0);
        if (cs != bs)
            return cs < bs;
        return family_order(cand.kernel) < family_order(best->kernel);
    };

    for (const ConfigAgg& cand : configs) {
        double objective;
        if (strategy == SelectionStrategy::BEST_SINGLE_PERTURBATION) {
            const std::string kn = perturb_name(*target);
            if (!cand.has(kn))
                continue;
            objective = cand.mean_for(kn);
        } else {
            double sum = 0.0;
            int kinds = 0;
            for (const std::string& kn : kind_names)
                if (cand.has(kn)) {
                    sum += cand.mean_for(kn);
                    ++kinds;
                }
            if (kinds == 0)
                continue;
            objective = sum / kinds;
        }
        if (better(cand, objective)) {
            best = &cand;
            best_objective = objective;
        }
    }
    if (!best)
        throw ConfigError("no configuration produced a defined coefficient");

    SelectionResult result;
    result.descriptor = best->descriptor;
    result.kernel = best->kernel;
    result.scale = best->scale;
    result.strategy = strategy;
    result.target = target;
    result.objective = best_objective;
    for (const std::string& kn : kind_names)
        if (best->has(kn))
            result.per_perturbation[kn] = best->mean_for(kn);
    return result;
}

RankingReport rank_models(const GraphSet& test, const GraphSet& train,
                          const std::vector<NamedSet>& models,
                          const std::vector<DescriptorSpec>& descriptors,
                          const std::vector<KernelGrid>& kernels, Estimator est) {
    if (models.empty())
        throw ConfigError("ranking needs at least one model");
    if (descriptors.empty() || kernels.empty())
        throw ConfigError("ranking needs at least one descriptor and kernel");

    RankingReport report;
    report.estimator = est;
    report.test_size = static_cast<int>(test.graphs.size());
    report.train_size = static_cast<int>(train.graphs.size());
    for (const NamedSet& m : models) {
        report.models.push_back(m.name);
        report.model_sizes.push_back(static_cast<int>(m.set->graphs.size()));
    }

    auto pick_argmin = [&](const std::vector<double>& vals) {
        int arg = 0;
        for (std::size_t j = 1; j < vals.size(); ++j) {
            if (vals[j] < vals[static_cast<std::size_t>(arg)] ||
                (vals[j] == vals[static_cast<std::size_t>(arg)] &&
                 report.models[j] < report.models[static_cast<std::size_t>(arg)]))
                arg = static_cast<int>(j);
        }
        return arg;
    };

    for (const DescriptorSpec& d : descriptors) {
        std::vector<const GraphSet*> all_sets = {&test, &train};
        for (const NamedSet& m : models)
            all_sets.push_back(m.set);
        const DescriptorSpec resolved = resolve_bins(d, all_sets);

        const std::vector<Histogram> test_h = describe_set(test, resolved);
        const std::vector<Histogram> train_h = describe_set(train, resolved);
        std::vector<std::vector<Histogram>> model_h;
        model_h.reserve(models.size());
        for (const NamedSet& m : models)
            model_h.push_back(describe_set(*m.set, resolved));

        for (const KernelGrid& kg : kernels) {
            if (kg.family == KernelFamily::LINEAR) {
                const KernelSpec spec = KernelSpec::linear();
                RankingRow row;
                row.descriptor = resolved;
                row.kernel = kg.family;
                for (const auto& mh : model_h)
                    row.model_mmd2.push_back(mmd2(spec, mh, test_h, est).value);
                row.anchor_mmd2 = mmd2(spec, train_h, test_h, est).value;
                row.argmin = pick_argmin(row.model_mmd2);
                report.rows.push_back(std::move(row));
                continue;
            }

            const DistanceFamily dist = distance_family_for(kg.family);
            std::vector<std::vector<MmdResult>> swept;
            swept.reserve(models.size());
            for (const auto& mh : model_h)
                swept.push_back(
                    mmd_sweep(build_cache(mh, test_h, dist), kg.family, kg.scales, est));
            const auto anchor =
                mmd_sweep(build_cache(train_h, test_h, dist), kg.family, kg.scales, est);

            for (std::size_t s = 0; s < kg.scales.size(); ++s) {
                RankingRow row;
                row.descriptor = resolved;
                row.kernel = kg.family;
                row.scale = kg.scales[s];
                for (std::size_t j = 0; j < models.size(); ++j)
                    row.model_mmd2.push_back(swept[j][s].value);
                row.anchor_mmd2 = anchor[s].value;
                row.argmin = pick_argmin(row.model_mmd2);
                report.rows.push_back(std::move(row));
            }
        }
    }
    return report;
}

std::string measure_name(Measure m) {
    switch (m) {
    case Measure::PEARSON: return "pearson";
    case Measure::SPEARMAN: return "spearman";
    case Measure::MUTUAL_INFORMATION: return "mi";
    }
    throw ConfigError("unknown measure");
}

Measure measure_from_name(const std::string& name) {
    if (name == "pearson") return Measure::PEARSON;
    if (name == "spearman") return Measure::SPEARMAN;
    if (name == "mi") return Measure::MUTUAL_INFORMATION;
    throw ConfigError("unknown measure: " + name);
}

std::string strategy_name(SelectionStrategy s) {
    return s == SelectionStrategy::BEST_SINGLE_PERTURBATION ? "best-single-perturbation"
                                                            : "best-average";
}

SelectionStrategy strategy_from_name(const std::string& name) {
    if (name == "best-single-perturbation")
        return SelectionStrategy::BEST_SINGLE_PERTURBATION;
    if (name == "best-average")
        return SelectionStrategy::BEST_AVERAGE;
    throw ConfigError("unknown strategy: " + name);
}

}  // namespace ggeval
