// SPDX-License-Identifier: Apache-2.0

#ifndef GIG_CLI_REPORT_HPP_
#define GIG_CLI_REPORT_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gig/metrics/metrics.hpp"

namespace gig::cli {

struct ReportRow {
  std::string run_id;
  std::string method;
  std::string split;
  metrics::MetricsReport test;
};

// Reads <runs_dir>/*/report.json, sorted by run id. Directories without a
// report are skipped.
std::vector<ReportRow> collect_reports(const std::filesystem::path& runs_dir);

inline constexpr const char* kReportCsvHeader = "method,split,roc_auc,auc_pr,f1,mcc,run_id";

std::string report_csv(std::span<const ReportRow> rows);
// {"runs": [...], "summary": [{method, split, runs, <metric>: {mean, std}}]}
std::string report_json(std::span<const ReportRow> rows);

using Curve = std::vector<std::pair<double, double>>;

// (FPR, TPR) points from (0,0) to (1,1), one per distinct threshold.
Curve roc_curve(std::span<const double> scores, std::span<const double> labels);
// (recall, precision) points, one per distinct threshold.
Curve pr_curve(std::span<const double> scores, std::span<const double> labels);

std::string curve_svg(const Curve& curve, const std::string& title, const std::string& x_label,
                      const std::string& y_label);

// Writes <out_dir>/<run_id>_roc.svg and _pr.svg from each run's scores.csv.
// Returns the number of files written.
std::size_t write_plots(const std::filesystem::path& runs_dir, std::span<const ReportRow> rows,
                        const std::filesystem::path& out_dir);

}  // namespace gig::cli

#endif  // GIG_CLI_REPORT_HPP_
