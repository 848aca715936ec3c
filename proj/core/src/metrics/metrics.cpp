// SPDX-License-Identifier: Apache-2.0

#include "gig/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <vector>

#include <json.hpp>

#include "gig/error.hpp"

namespace gig::metrics {

namespace {

bool positive(double label) { return label >= 0.5; }

void check_lengths(std::span<const double> scores, std::span<const double> labels) {
  if (scores.size() != labels.size()) {
    throw ContractViolation("metrics: " + std::to_string(scores.size()) + " scores but " +
                            std::to_string(labels.size()) + " labels");
  }
  for (double s : scores) {
    if (!std::isfinite(s)) throw NumericError("metrics: non-finite score");
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::optional<double> roc_auc(std::span<const double> scores, std::span<const double> labels) {
  check_lengths(scores, labels);
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Sum of (negatives strictly below + half of tied negatives) over positives.
  double wins = 0.0;
  std::size_t neg_below = 0;
  std::size_t pos = 0;
  std::size_t neg = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    std::size_t group_pos = 0;
    std::size_t group_neg = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      if (positive(labels[order[j]])) {
        ++group_pos;
      } else {
        ++group_neg;
      }
      ++j;
    }
    wins += static_cast<double>(group_pos) *
            (static_cast<double>(neg_below) + 0.5 * static_cast<double>(group_neg));
    neg_below += group_neg;
    pos += group_pos;
    neg += group_neg;
    i = j;
  }
  if (pos == 0 || neg == 0) return std::nullopt;
  return wins / (static_cast<double>(pos) * static_cast<double>(neg));
}

std::optional<double> auprc(std::span<const double> scores, std::span<const double> labels) {
  check_lengths(scores, labels);
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return !positive(labels[a]) && positive(labels[b]);
  });
  const auto total_pos = static_cast<std::size_t>(
      std::count_if(labels.begin(), labels.end(), [](double l) { return positive(l); }));
  if (total_pos == 0) return std::nullopt;

  double ap = 0.0;
  std::size_t hits = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (!positive(labels[order[k]])) continue;
    ++hits;
    ap += static_cast<double>(hits) / static_cast<double>(k + 1);
  }
  return ap / static_cast<double>(total_pos);
}

Confusion confusion(std::span<const double> scores, std::span<const double> labels,
                    double threshold) {
  check_lengths(scores, labels);
  Confusion c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] >= threshold;
    const bool actual = positive(labels[i]);
    if (predicted && actual) ++c.tp;
    if (predicted && !actual) ++c.fp;
    if (!predicted && actual) ++c.fn;
    if (!predicted && !actual) ++c.tn;
  }
  return c;
}

double f1(const Confusion& c) noexcept {
  const double denom = 2.0 * static_cast<double>(c.tp) + static_cast<double>(c.fp + c.fn);
  if (c.tp == 0 || denom == 0.0) return 0.0;
  return 2.0 * static_cast<double>(c.tp) / denom;
}

double mcc(const Confusion& c) noexcept {
  const double tp = static_cast<double>(c.tp);
  const double fp = static_cast<double>(c.fp);
  const double tn = static_cast<double>(c.tn);
  const double fn = static_cast<double>(c.fn);
  const double a = tp + fp;
  const double b = tp + fn;
  const double d = tn + fp;
  const double e = tn + fn;
  if (a == 0.0 || b == 0.0 || d == 0.0 || e == 0.0) return 0.0;
  return (tp * tn - fp * fn) / std::sqrt(a * b * d * e);
}

MetricsReport evaluate(std::span<const double> scores, std::span<const double> labels,
                       double threshold) {
  MetricsReport r;
  r.roc_auc = roc_auc(scores, labels);
  r.auprc = auprc(scores, labels);
  r.confusion = confusion(scores, labels, threshold);
  r.f1 = f1(r.confusion);
  r.mcc = mcc(r.confusion);
  r.threshold = threshold;
  r.positives = r.confusion.tp + r.confusion.fn;
  r.negatives = r.confusion.tn + r.confusion.fp;
  return r;
}

std::string to_json(const MetricsReport& r) {
  nlohmann::ordered_json j;
  j["roc_auc"] = r.roc_auc ? nlohmann::ordered_json(*r.roc_auc) : nlohmann::ordered_json(nullptr);
  j["auc_pr"] = r.auprc ? nlohmann::ordered_json(*r.auprc) : nlohmann::ordered_json(nullptr);
  j["f1"] = r.f1;
  j["mcc"] = r.mcc;
  j["threshold"] = r.threshold;
  j["positives"] = r.positives;
  j["negatives"] = r.negatives;
  j["confusion"] = {{"tp", r.confusion.tp},
                    {"fp", r.confusion.fp},
                    {"tn", r.confusion.tn},
                    {"fn", r.confusion.fn}};
  j["undefined"] = {{"roc_auc", !r.roc_auc.has_value()}, {"auc_pr", !r.auprc.has_value()}};
  return j.dump(2);
}

MetricsReport report_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("metrics report: ") + e.what());
  }
  MetricsReport r;
  try {
    if (!j.at("roc_auc").is_null()) r.roc_auc = j.at("roc_auc").get<double>();
    if (!j.at("auc_pr").is_null()) r.auprc = j.at("auc_pr").get<double>();
    r.f1 = j.at("f1").get<double>();
    r.mcc = j.at("mcc").get<double>();
    r.threshold = j.at("threshold").get<double>();
    r.positives = j.at("positives").get<std::size_t>();
    r.negatives = j.at("negatives").get<std::size_t>();
    const auto& c = j.at("confusion");
    r.confusion = {c.at("tp").get<std::size_t>(), c.at("fp").get<std::size_t>(),
                   c.at("tn").get<std::size_t>(), c.at("fn").get<std::size_t>()};
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("metrics report: ") + e.what());
  }
  return r;
}

std::string csv_header() { return "roc_auc,auc_pr,f1,mcc,tp,fp,tn,fn,threshold"; }

std::string to_csv_row(const MetricsReport& r) {
  auto opt = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string("undefined");
  };
  return opt(r.roc_auc) + "," + opt(r.auprc) + "," + format_double(r.f1) + "," +
         format_double(r.mcc) + "," + std::to_string(r.confusion.tp) + "," +
         std::to_string(r.confusion.fp) + "," + std::to_string(r.confusion.tn) + "," +
         std::to_string(r.confusion.fn) + "," + format_double(r.threshold);
}

}  // namespace gig::metrics
