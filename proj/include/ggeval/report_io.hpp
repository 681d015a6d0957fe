#pragma once

#include <string>
#include <vector>

#include "ggeval/analysis.hpp"

namespace ggeval {

// JSON round-trip for the two report types. Serialization is key-ordered
// and number formatting is locale-independent, so identical reports
// produce identical bytes.
std::string correlation_report_json(const CorrelationReport& report);
CorrelationReport parse_correlation_report(const std::string& text);

std::string ranking_report_json(const RankingReport& report);
RankingReport parse_ranking_report(const std::string& text);

// Flat MMD table: descriptor,kernel,scale,estimator,n,m,mmd2. The scale
// column is empty for the linear kernel.
struct MmdCsvRow {
    DescriptorKind descriptor = DescriptorKind::DEGREE;
    KernelFamily kernel = KernelFamily::LINEAR;
    std::optional<double> scale;
    Estimator estimator = Estimator::UNBIASED;
    int n = 0;
    int m = 0;
    double mmd2 = 0.0;
};

std::string mmd_csv(const std::vector<MmdCsvRow>& rows);

// One CSV row per (report row, level), in report order.
std::vector<MmdCsvRow> csv_rows_from_correlation(const CorrelationReport& report);

// One CSV row per (report row, model) plus the train/test anchor value.
std::vector<MmdCsvRow> csv_rows_from_ranking(const RankingReport& report);

}  // namespace ggeval
