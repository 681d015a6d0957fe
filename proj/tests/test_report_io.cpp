#include <doctest.h>

#include <optional>

#include "ggeval/bench.hpp"
#include "ggeval/error.hpp"
#include "ggeval/report_io.hpp"

using namespace ggeval;

namespace {

CorrelationReport sample_correlation() {
    CorrelationReport rep;
    rep.datasets = {"er", "ba"};
    rep.measure = Measure::SPEARMAN;
    rep.estimator = Estimator::UNBIASED;
    rep.levels = {0.0, 0.5, 1.0};
    rep.n_add = 5;
    rep.seed = 99;
    rep.warning = "constant MMD series; affected coefficients are missing";

    CorrelationRow r1;
    r1.dataset = "er";
    r1.descriptor.kind = DescriptorKind::DEGREE;
    r1.descriptor.n_bin = 12;
    r1.kernel = KernelFamily::RBF_EUCLIDEAN;
    r1.scale = 0.1;
    r1.kind = PerturbKind::ADD_EDGES;
    r1.coefficient = 0.875;
    r1.mmd2 = {0.0, 0.25, 0.5};
    r1.n = 10;
    r1.m = 10;

    CorrelationRow r2;
    r2.dataset = "ba";
    r2.descriptor.kind = DescriptorKind::CLUSTERING;
    r2.descriptor.n_bin = 100;
    r2.kernel = KernelFamily::LINEAR;
    r2.scale = std::nullopt;
    r2.kind = PerturbKind::REWIRE_EDGES;
    r2.coefficient = std::nullopt;
    r2.mmd2 = {0.125, 0.125, 0.125};
    r2.n = 10;
    r2.m = 10;

    rep.rows = {r1, r2};

    SelectionResult sel;
    sel.descriptor = r1.descriptor;
    sel.kernel = r1.kernel;
    sel.scale = r1.scale;
    sel.strategy = SelectionStrategy::BEST_AVERAGE;
    sel.objective = 0.875;
    sel.per_perturbation = {{"add-edges", 0.875}};
    rep.selection = sel;
    return rep;
}

RankingReport sample_ranking() {
    RankingReport rep;
    rep.models = {"rewire-0.05", "rewire-0.5"};
    rep.model_sizes = {20, 20};
    rep.test_size = 20;
    rep.train_size = 40;
    rep.estimator = Estimator::UNBIASED;

    RankingRow row;
    row.descriptor.kind = DescriptorKind::DEGREE;
    row.descriptor.n_bin = 15;
    row.kernel = KernelFamily::RBF_EUCLIDEAN;
    row.scale = 1.0;
    row.model_mmd2 = {0.0625, -0.03125};
    row.argmin = 1;
    row.anchor_mmd2 = 0.015625;
    rep.rows = {row};
    return rep;
}

}  // namespace

TEST_CASE("correlation report json round-trips byte for byte") {
    const CorrelationReport rep = sample_correlation();
    const std::string text = correlation_report_json(rep);
    const CorrelationReport back = parse_correlation_report(text);
    CHECK(correlation_report_json(back) == text);

    CHECK(back.datasets == rep.datasets);
    CHECK(back.measure == rep.measure);
    CHECK(back.estimator == rep.estimator);
    CHECK(back.levels == rep.levels);
    CHECK(back.seed == rep.seed);
    CHECK(back.warning == rep.warning);
    REQUIRE(back.rows.size() == 2);
    CHECK(back.rows[0].coefficient == rep.rows[0].coefficient);
    CHECK(back.rows[1].coefficient == std::nullopt);
    CHECK(back.rows[1].scale == std::nullopt);
    CHECK(back.rows[0].mmd2 == rep.rows[0].mmd2);
    REQUIRE(back.selection.has_value());
    CHECK(back.selection->objective == rep.selection->objective);
    CHECK(back.selection->per_perturbation == rep.selection->per_perturbation);
}

TEST_CASE("ranking report json round-trips byte for byte") {
    const RankingReport rep = sample_ranking();
    const std::string text = ranking_report_json(rep);
    const RankingReport back = parse_ranking_report(text);
    CHECK(ranking_report_json(back) == text);
    CHECK(back.models == rep.models);
    CHECK(back.model_sizes == rep.model_sizes);
    CHECK(back.test_size == 20);
    CHECK(back.train_size == 40);
    REQUIRE(back.rows.size() == 1);
    CHECK(back.rows[0].model_mmd2 == rep.rows[0].model_mmd2);
    CHECK(back.rows[0].argmin == 1);
    CHECK(back.rows[0].anchor_mmd2 == rep.rows[0].anchor_mmd2);
}

TEST_CASE("parsers reject malformed documents") {
    CHECK_THROWS_WITH_AS(parse_correlation_report("not json"),
                         doctest::Contains("malformed report"), ParseError);
    CHECK_THROWS_AS(parse_correlation_report(R"({"kind":"something_else"})"), ParseError);
    CHECK_THROWS_AS(parse_ranking_report(R"({"kind":"correlation_report"})"), ParseError);
    CHECK_THROWS_AS(parse_ranking_report("{}"), ParseError);
}

TEST_CASE("csv export uses the documented schema") {
    std::vector<MmdCsvRow> rows;
    MmdCsvRow a;
    a.descriptor = DescriptorKind::DEGREE;
    a.kernel = KernelFamily::RBF_EUCLIDEAN;
    a.scale = 0.5;
    a.estimator = Estimator::UNBIASED;
    a.n = 10;
    a.m = 12;
    a.mmd2 = 0.25;
    MmdCsvRow b;
    b.descriptor = DescriptorKind::SPECTRAL;
    b.kernel = KernelFamily::LINEAR;
    b.scale = std::nullopt;
    b.estimator = Estimator::BIASED;
    b.n = 3;
    b.m = 3;
    b.mmd2 = -0.0625;
    rows = {a, b};

    CHECK(mmd_csv(rows) ==
          "descriptor,kernel,scale,estimator,n,m,mmd2\n"
          "degree,rbf,0.5,unbiased,10,12,0.25\n"
          "spectral,linear,,biased,3,3,-0.0625\n");
}

TEST_CASE("correlation rows expand to one csv row per level") {
    const CorrelationReport rep = sample_correlation();
    const auto rows = csv_rows_from_correlation(rep);
    REQUIRE(rows.size() == 6);  // 2 rows x 3 levels
    CHECK(rows[0].mmd2 == 0.0);
    CHECK(rows[1].mmd2 == 0.25);
    CHECK(rows[2].mmd2 == 0.5);
    CHECK(rows[0].n == 10);
    CHECK(rows[3].kernel == KernelFamily::LINEAR);
    CHECK_FALSE(rows[3].scale.has_value());
}

TEST_CASE("ranking rows expand to one csv row per model plus the anchor") {
    const RankingReport rep = sample_ranking();
    const auto rows = csv_rows_from_ranking(rep);
    REQUIRE(rows.size() == 3);  // 2 models + anchor
    CHECK(rows[0].mmd2 == 0.0625);
    CHECK(rows[1].mmd2 == -0.03125);
    CHECK(rows[2].mmd2 == 0.015625);  // anchor
    CHECK(rows[2].n == 40);           // train size
    CHECK(rows[2].m == 20);           // test size
}

TEST_CASE("bench csv round-trips") {
    std::vector<BenchRow> rows(2);
    rows[0].kernel = KernelFamily::EMD_GAUSSIAN;
    rows[0].variable = BenchVariable::N_NODES;
    rows[0].value = 100;
    rows[0].mean_seconds = 0.125;
    rows[0].std_seconds = 0.015625;
    rows[1].kernel = KernelFamily::LINEAR;
    rows[1].variable = BenchVariable::N_NODES;
    rows[1].value = 200;
    rows[1].mean_seconds = 3.5e-05;
    rows[1].std_seconds = 1.25e-06;

    const std::string text = bench_csv(rows);
    CHECK(text.substr(0, text.find('\n')) ==
          "kernel,variable,value,mean_seconds,std_seconds");
    const auto back = parse_bench_csv(text);
    REQUIRE(back.size() == 2);
    CHECK(back[0].kernel == KernelFamily::EMD_GAUSSIAN);
    CHECK(back[0].variable == BenchVariable::N_NODES);
    CHECK(back[0].value == 100);
    CHECK(back[0].mean_seconds == 0.125);
    CHECK(back[1].std_seconds == 1.25e-06);
    CHECK(bench_csv(back) == text);
}

TEST_CASE("bench csv parser validates the header") {
    CHECK_THROWS_AS(parse_bench_csv("who,what\n"), ParseError);
    CHECK_THROWS_AS(parse_bench_csv(""), ParseError);
    CHECK_THROWS_AS(
        parse_bench_csv("kernel,variable,value,mean_seconds,std_seconds\nrbf,n-nodes,abc,1,1\n"),
        ParseError);
}
