// SPDX-License-Identifier: Apache-2.0

#include "gig/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "gig/ad/container.hpp"
#include "gig/data/hash.hpp"
#include "gig/error.hpp"

namespace gig::cli {

namespace {

std::string num(const std::optional<double>& v) {
  if (!v) return "undefined";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", *v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Order of score-descending thresholds, ties grouped.
std::vector<std::size_t> descending(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

template <typename Emit>
void sweep(std::span<const double> scores, std::span<const double> labels, Emit emit) {
  if (scores.size() != labels.size()) throw ContractViolation("scores and labels differ in length");
  const auto order = descending(scores);
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t k = 0; k < order.size();) {
    const double s = scores[order[k]];
    while (k < order.size() && scores[order[k]] == s) {
      labels[order[k]] >= 0.5 ? ++tp : ++fp;
      ++k;
    }
    emit(tp, fp);
  }
}

struct Stats {
  double mean = 0.0;
  double std = 0.0;
  std::size_t count = 0;
};

Stats stats(const std::vector<double>& v) {
  Stats s;
  s.count = v.size();
  if (v.empty()) return s;
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  s.std = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
  return s;
}

}  // namespace

std::vector<ReportRow> collect_reports(const std::filesystem::path& runs_dir) {
  if (!std::filesystem::is_directory(runs_dir)) {
    throw DataError("runs directory " + runs_dir.string() + " does not exist");
  }
  std::vector<ReportRow> rows;
  for (const auto& entry : std::filesystem::directory_iterator(runs_dir)) {
    const auto path = entry.path() / "report.json";
    if (!entry.is_directory() || !std::filesystem::exists(path)) continue;
    const auto j = nlohmann::json::parse(data::read_file(path));
    ReportRow row;
    row.run_id = j.at("run_id").get<std::string>();
    row.method = j.at("method").get<std::string>();
    row.split = j.at("split").get<std::string>();
    row.test = metrics::report_from_json(j.at("test").dump());
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(),
            [](const ReportRow& a, const ReportRow& b) { return a.run_id < b.run_id; });
  return rows;
}

std::string report_csv(std::span<const ReportRow> rows) {
  std::ostringstream out;
  out << kReportCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.method << ',' << r.split << ',' << num(r.test.roc_auc) << ',' << num(r.test.auprc) << ','
        << num(r.test.f1) << ',' << num(r.test.mcc) << ',' << r.run_id << '\n';
  }
  return out.str();
}

std::string report_json(std::span<const ReportRow> rows) {
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  std::map<std::pair<std::string, std::string>, std::map<std::string, std::vector<double>>> groups;
  std::vector<std::pair<std::string, std::string>> group_order;
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["run_id"] = r.run_id;
    j["method"] = r.method;
    j["split"] = r.split;
    j["test"] = nlohmann::ordered_json::parse(metrics::to_json(r.test));
    runs.push_back(std::move(j));

    const auto key = std::make_pair(r.method, r.split);
    if (!groups.count(key)) group_order.push_back(key);
    auto& g = groups[key];
    if (r.test.roc_auc) g["roc_auc"].push_back(*r.test.roc_auc);
    if (r.test.auprc) g["auc_pr"].push_back(*r.test.auprc);
    g["f1"].push_back(r.test.f1);
    g["mcc"].push_back(r.test.mcc);
  }
  nlohmann::ordered_json summary = nlohmann::ordered_json::array();
  for (const auto& key : group_order) {
    auto& g = groups[key];
    nlohmann::ordered_json j;
    j["method"] = key.first;
    j["split"] = key.second;
    j["runs"] = g["mcc"].size();
    for (const char* metric : {"roc_auc", "auc_pr", "f1", "mcc"}) {
      const Stats s = stats(g[metric]);
      if (s.count == 0) {
        j[metric] = nullptr;
      } else {
        j[metric] = {{"mean", s.mean}, {"std", s.std}, {"count", s.count}};
      }
    }
    summary.push_back(std::move(j));
  }
  nlohmann::ordered_json out;
  out["runs"] = std::move(runs);
  out["summary"] = std::move(summary);
  return out.dump(2) + "\n";
}

Curve roc_curve(std::span<const double> scores, std::span<const double> labels) {
  std::size_t pos = 0;
  for (double l : labels) pos += l >= 0.5 ? 1 : 0;
  const std::size_t neg = labels.size() - pos;
  Curve c{{0.0, 0.0}};
  sweep(scores, labels, [&](std::size_t tp, std::size_t fp) {
    c.emplace_back(neg ? static_cast<double>(fp) / static_cast<double>(neg) : 0.0,
                   pos ? static_cast<double>(tp) / static_cast<double>(pos) : 0.0);
  });
  return c;
}

Curve pr_curve(std::span<const double> scores, std::span<const double> labels) {
  std::size_t pos = 0;
  for (double l : labels) pos += l >= 0.5 ? 1 : 0;
  Curve c;
  sweep(scores, labels, [&](std::size_t tp, std::size_t fp) {
    c.emplace_back(pos ? static_cast<double>(tp) / static_cast<double>(pos) : 0.0,
                   static_cast<double>(tp) / static_cast<double>(tp + fp));
  });
  return c;
}

std::string curve_svg(const Curve& curve, const std::string& title, const std::string& x_label,
                      const std::string& y_label) {
  constexpr double kSize = 320.0;
  constexpr double kMargin = 48.0;
  auto px = [&](double x) { return kMargin + x * kSize; };
  auto py = [&](double y) { return kMargin + (1.0 - y) * kSize; };
  std::ostringstream out;
  out.precision(6);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize + 2 * kMargin << "\" height=\""
      << kSize + 2 * kMargin << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kSize << "\" height=\""
      << kSize << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double t = k / 4.0;
    out << "<text x=\"" << px(t) << "\" y=\"" << py(0) + 16 << "\" text-anchor=\"middle\">" << t
        << "</text>\n";
    out << "<text x=\"" << kMargin - 6 << "\" y=\"" << py(t) + 4 << "\" text-anchor=\"end\">" << t
        << "</text>\n";
  }
  out << "<text x=\"" << px(0.5) << "\" y=\"" << kMargin - 16 << "\" text-anchor=\"middle\">"
      << xml_escape(title) << "</text>\n";
  out << "<text x=\"" << px(0.5) << "\" y=\"" << py(0) + 36 << "\" text-anchor=\"middle\">"
      << xml_escape(x_label) << "</text>\n";
  out << "<text transform=\"translate(14," << py(0.5) << ") rotate(-90)\" text-anchor=\"middle\">"
      << xml_escape(y_label) << "</text>\n";
  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
  for (const auto& [x, y] : curve) out << px(x) << ',' << py(y) << ' ';
  out << "\"/>\n</svg>\n";
  return out.str();
}

std::size_t write_plots(const std::filesystem::path& runs_dir, std::span<const ReportRow> rows,
                        const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::size_t written = 0;
  for (const auto& r : rows) {
    const auto path = runs_dir / r.run_id / "scores.csv";
    if (!std::filesystem::exists(path)) continue;
    std::istringstream in(data::read_file(path));
    std::string line;
    std::getline(in, line);
    std::vector<double> scores;
    std::vector<double> labels;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto last = line.rfind(',');
      const auto prev = line.rfind(',', last - 1);
      if (last == std::string::npos || prev == std::string::npos) {
        throw FormatError(path.string() + ": malformed row '" + line + "'");
      }
      labels.push_back(std::stod(line.substr(prev + 1, last - prev - 1)));
      scores.push_back(std::stod(line.substr(last + 1)));
    }
    const std::string title = r.method + " (" + r.run_id + ")";
    ad::write_file_atomically(out_dir / (r.run_id + "_roc.svg"),
                              curve_svg(roc_curve(scores, labels), title, "false positive rate",
                                        "true positive rate"));
    ad::write_file_atomically(out_dir / (r.run_id + "_pr.svg"),
                              curve_svg(pr_curve(scores, labels), title, "recall", "precision"));
    written += 2;
  }
  return written;
}

}  // namespace gig::cli
