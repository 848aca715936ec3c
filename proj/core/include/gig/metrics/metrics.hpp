// SPDX-License-Identifier: Apache-2.0

#ifndef GIG_METRICS_METRICS_HPP_
#define GIG_METRICS_METRICS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>

namespace gig::metrics {

inline constexpr double kDefaultThreshold = 0.5;

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + fp + tn + fn; }
  friend bool operator==(const Confusion&, const Confusion&) = default;
};

// Labels are 0/1 doubles (anything >= 0.5 counts as positive).

// Mann-Whitney AUC with ties counted half; nullopt without both classes.
std::optional<double> roc_auc(std::span<const double> scores, std::span<const double> labels);

// Average precision with negatives ranked ahead of positives on equal scores;
// nullopt when there are no positives.
std::optional<double> auprc(std::span<const double> scores, std::span<const double> labels);

// Predicted positive when score >= threshold.
Confusion confusion(std::span<const double> scores, std::span<const double> labels,
                    double threshold = kDefaultThreshold);

double f1(const Confusion& c) noexcept;
double mcc(const Confusion& c) noexcept;

struct MetricsReport {
  std::optional<double> roc_auc;
  std::optional<double> auprc;
  double f1 = 0.0;
  double mcc = 0.0;
  Confusion confusion;
  double threshold = kDefaultThreshold;
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

MetricsReport evaluate(std::span<const double> scores, std::span<const double> labels,
                       double threshold = kDefaultThreshold);

// Undefined values serialize as JSON null and as "undefined" in CSV.
std::string to_json(const MetricsReport& report);
MetricsReport report_from_json(const std::string& text);
std::string csv_header();
std::string to_csv_row(const MetricsReport& report);

}  // namespace gig::metrics

#endif  // GIG_METRICS_METRICS_HPP_
