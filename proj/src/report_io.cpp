#include "ggeval/report_io.hpp"

#include <json.hpp>

#include "ggeval/error.hpp"
#include "ggeval/numfmt.hpp"

namespace ggeval {

namespace {

using json = nlohmann::ordered_json;

json descriptor_to_json(const DescriptorSpec& spec) {
    json j;
    j["descriptor"] = descriptor_name(spec.kind);
    j["n_bin"] = spec.n_bin;
    j["normalize"] = spec.normalize;
    return j;
}

DescriptorSpec descriptor_from_json(const json& j) {
    DescriptorSpec spec;
    spec.kind = descriptor_from_name(j.at("descriptor").get<std::string>());
    spec.n_bin = j.at("n_bin").get<int>();
    spec.normalize = j.at("normalize").get<bool>();
    return spec;
}

json selection_to_json(const SelectionResult& sel) {
    json j = descriptor_to_json(sel.descriptor);
    j["kernel"] = kernel_name(sel.kernel);
    if (sel.scale)
        j["scale"] = *sel.scale;
    else
        j["scale"] = nullptr;
    j["strategy"] = strategy_name(sel.strategy);
    if (sel.target)
        j["target"] = perturb_name(*sel.target);
    else
        j["target"] = nullptr;
    j["objective"] = sel.objective;
    json per = json::object();
    for (const auto& [kind, coeff] : sel.per_perturbation)
        per[kind] = coeff;
    j["per_perturbation"] = per;
    return j;
}

SelectionResult selection_from_json(const json& j) {
    SelectionResult sel;
    sel.descriptor = descriptor_from_json(j);
    sel.kernel = kernel_from_name(j.at("kernel").get<std::string>());
    if (!j.at("scale").is_null())
        sel.scale = j.at("scale").get<double>();
    sel.strategy = strategy_from_name(j.at("strategy").get<std::string>());
    if (!j.at("target").is_null())
        sel.target = perturb_from_name(j.at("target").get<std::string>());
    sel.objective = j.at("objective").get<double>();
    for (const auto& [kind, coeff] : j.at("per_perturbation").items())
        sel.per_perturbation[kind] = coeff.get<double>();
    return sel;
}

[[noreturn]] void report_fail(const std::string& what) {
    throw ParseError("malformed report: " + what);
}

}  // namespace

std::string correlation_report_json(const CorrelationReport& report) {
    json j;
    j["kind"] = "correlation_report";
    j["datasets"] = report.datasets;
    j["measure"] = measure_name(report.measure);
    j["estimator"] = estimator_name(report.estimator);
    j["levels"] = report.levels;
    j["n_add"] = report.n_add;
    j["seed"] = report.seed;
    if (report.warning)
        j["warning"] = *report.warning;
    json rows = json::array();
    for (const CorrelationRow& row : report.rows) {
        json r;
        r["dataset"] = row.dataset;
        r["descriptor"] = descriptor_name(row.descriptor.kind);
        r["n_bin"] = row.descriptor.n_bin;
        r["normalize"] = row.descriptor.normalize;
        r["kernel"] = kernel_name(row.kernel);
        if (row.scale)
            r["scale"] = *row.scale;
        else
            r["scale"] = nullptr;
        r["perturbation"] = perturb_name(row.kind);
        if (row.coefficient)
            r["coefficient"] = *row.coefficient;
        else
            r["coefficient"] = nullptr;
        r["mmd2"] = row.mmd2;
        r["n"] = row.n;
        r["m"] = row.m;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    if (report.selection)
        j["selection"] = selection_to_json(*report.selection);
    return j.dump(2) + "\n";
}

CorrelationReport parse_correlation_report(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        report_fail(e.what());
    }
    try {
        if (j.at("kind").get<std::string>() != "correlation_report")
            report_fail("not a correlation report");
        CorrelationReport report;
        report.datasets = j.at("datasets").get<std::vector<std::string>>();
        report.measure = measure_from_name(j.at("measure").get<std::string>());
        report.estimator = estimator_from_name(j.at("estimator").get<std::string>());
        report.levels = j.at("levels").get<std::vector<double>>();
        report.n_add = j.at("n_add").get<int>();
        report.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("warning"))
            report.warning = j.at("warning").get<std::string>();
        for (const auto& r : j.at("rows")) {
            CorrelationRow row;
            row.dataset = r.at("dataset").get<std::string>();
            row.descriptor = descriptor_from_json(r);
            row.kernel = kernel_from_name(r.at("kernel").get<std::string>());
            if (!r.at("scale").is_null())
                row.scale = r.at("scale").get<double>();
            row.kind = perturb_from_name(r.at("perturbation").get<std::string>());
            if (!r.at("coefficient").is_null())
                row.coefficient = r.at("coefficient").get<double>();
            row.mmd2 = r.at("mmd2").get<std::vector<double>>();
            row.n = r.at("n").get<int>();
            row.m = r.at("m").get<int>();
            report.rows.push_back(std::move(row));
        }
        if (j.contains("selection"))
            report.selection = selection_from_json(j.at("selection"));
        return report;
    } catch (const json::exception& e) {
        report_fail(e.what());
    }
}

std::string ranking_report_json(const RankingReport& report) {
    json j;
    j["kind"] = "ranking_report";
    j["estimator"] = estimator_name(report.estimator);
    j["models"] = report.models;
    j["model_sizes"] = report.model_sizes;
    j["test_size"] = report.test_size;
    j["train_size"] = report.train_size;
    json rows = json::array();
    for (const RankingRow& row : report.rows) {
        json r;
        r["descriptor"] = descriptor_name(row.descriptor.kind);
        r["n_bin"] = row.descriptor.n_bin;
        r["normalize"] = row.descriptor.normalize;
        r["kernel"] = kernel_name(row.kernel);
        if (row.scale)
            r["scale"] = *row.scale;
        else
            r["scale"] = nullptr;
        r["model_mmd2"] = row.model_mmd2;
        r["argmin"] = row.argmin;
        r["best_model"] = report.models.at(static_cast<std::size_t>(row.argmin));
        r["anchor_mmd2"] = row.anchor_mmd2;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

RankingReport parse_ranking_report(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        report_fail(e.what());
    }
    try {
        if (j.at("kind").get<std::string>() != "ranking_report")
            report_fail("not a ranking report");
        RankingReport report;
        report.estimator = estimator_from_name(j.at("estimator").get<std::string>());
        report.models = j.at("models").get<std::vector<std::string>>();
        report.model_sizes = j.at("model_sizes").get<std::vector<int>>();
        report.test_size = j.at("test_size").get<int>();
        report.train_size = j.at("train_size").get<int>();
        for (const auto& r : j.at("rows")) {
            RankingRow row;
            row.descriptor = descriptor_from_json(r);
            row.kernel = kernel_from_name(r.at("kernel").get<std::string>());
            if (!r.at("scale").is_null())
                row.scale = r.at("scale").get<double>();
            row.model_mmd2 = r.at("model_mmd2").get<std::vector<double>>();
            row.argmin = r.at("argmin").get<int>();
            row.anchor_mmd2 = r.at("anchor_mmd2").get<double>();
            report.rows.push_back(std::move(row));
        }
        return report;
    } catch (const json::exception& e) {
        report_fail(e.what());
    }
}

std::string mmd_csv(const std::vector<MmdCsvRow>& rows) {
    std::string out = "descriptor,kernel,scale,estimator,n,m,mmd2\n";
    for (const MmdCsvRow& row : rows) {
        out += descriptor_name(row.descriptor);
        out += ',';
        out += kernel_name(row.kernel);
        out += ',';
        if (row.scale)
            out += fmt_double(*row.scale);
        out += ',';
        out += estimator_name(row.estimator);
        out += ',';
        out += std::to_string(row.n);
        out += ',';
        out += std::to_string(row.m);
        out += ',';
        out += fmt_double(row.mmd2);
        out += '\n';
    }
    return out;
}

std::vector<MmdCsvRow> csv_rows_from_correlation(const CorrelationReport& report) {
    std::vector<MmdCsvRow> rows;
    for (const CorrelationRow& r : report.rows)
        for (double value : r.mmd2) {
            MmdCsvRow row;
            row.descriptor = r.descriptor.kind;
            row.kernel = r.kernel;
            row.scale = r.scale;
            row.estimator = report.estimator;
            row.n = r.n;
            row.m = r.m;
            row.mmd2 = value;
            rows.push_back(row);
        }
    return rows;
}

std::vector<MmdCsvRow> csv_rows_from_ranking(const RankingReport& report) {
    std::vector<MmdCsvRow> rows;
    for (const RankingRow& r : report.rows) {
        for (std::size_t j = 0; j < r.model_mmd2.size(); ++j) {
            MmdCsvRow row;
            row.descriptor = r.descriptor.kind;
            row.kernel = r.kernel;
            row.scale = r.scale;
            row.estimator = report.estimator;
            row.n = report.model_sizes.at(j);
            row.m = report.test_size;
            row.mmd2 = r.model_mmd2[j];
            rows.push_back(row);
        }
        MmdCsvRow anchor;
        anchor.descriptor = r.descriptor.kind;
        anchor.kernel = r.kernel;
        anchor.scale = r.scale;
        anchor.estimator = report.estimator;
        anchor.n = report.train_size;
        anchor.m = report.test_size;
        anchor.mmd2 = r.anchor_mmd2;
        rows.push_back(anchor);
    }
    return rows;
}

}  // namespace ggeval
