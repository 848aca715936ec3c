// SPDX-License-Identifier: Apache-2.0
//
// Deliberately naive reference implementations of the evaluation metrics.

#ifndef GIG_TEST_METRIC_ORACLES_HPP_
#define GIG_TEST_METRIC_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "gig/metrics/metrics.hpp"
#include "gig/rng.hpp"

namespace gig::test {

// Every (positive, negative) pair: 1 for a win, 0.5 for a tie.
inline std::optional<double> brute_force_auc(const std::vector<double>& s,
                                             const std::vector<double>& y) {
  double wins = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (y[i] != 1.0) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[j] != 0.0) continue;
      ++pairs;
      if (s[i] > s[j]) wins += 1.0;
      if (s[i] == s[j]) wins += 0.5;
    }
  }
  if (pairs == 0) return std::nullopt;
  return wins / static_cast<double>(pairs);
}

// Recomputes precision and recall from scratch for every prefix of the
// ranking (negatives first within a tie) and sums precision * recall gain.
inline std::optional<double> prefix_enumeration_ap(const std::vector<double>& s,
                                                   const std::vector<double>& y) {
  const std::size_t n = s.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (s[a] != s[b]) return s[a] > s[b];
    return y[a] < y[b];
  });
  const double total = std::count(y.begin(), y.end(), 1.0);
  if (total == 0) return std::nullopt;
  double ap = 0.0;
  double previous_recall = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    double tp = 0;
    for (std::size_t i = 0; i < k; ++i) tp += y[order[i]];
    const double precision = tp / static_cast<double>(k);
    const double recall = tp / total;
    ap += (recall - previous_recall) * precision;
    previous_recall = recall;
  }
  return ap;
}

inline metrics::Confusion hand_confusion(const std::vector<double>& s, const std::vector<double>& y,
                                         double threshold) {
  metrics::Confusion c;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool predicted = s[i] >= threshold;
    const bool actual = y[i] == 1.0;
    if (predicted && actual) ++c.tp;
    if (predicted && !actual) ++c.fp;
    if (!predicted && actual) ++c.fn;
    if (!predicted && !actual) ++c.tn;
  }
  return c;
}

inline double hand_f1(const metrics::Confusion& c) {
  const double p = c.tp + c.fp == 0 ? 0.0 : double(c.tp) / double(c.tp + c.fp);
  const double r = c.tp + c.fn == 0 ? 0.0 : double(c.tp) / double(c.tp + c.fn);
  return p + r == 0.0 ? 0.0 : 2 * p * r / (p + r);
}

inline double hand_mcc(const metrics::Confusion& c) {
  const double tp = c.tp, fp = c.fp, tn = c.tn, fn = c.fn;
  const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  return denom == 0.0 ? 0.0 : (tp * tn - fp * fn) / std::sqrt(denom);
}

struct ScoredInstance {
  std::vector<double> scores;
  std::vector<double> labels;
};

// Sizes 1..50. Scores come from a coarse grid half the time so ties are common;
// label balance varies, including single-class instances.
inline ScoredInstance random_instance(Rng& rng) {
  ScoredInstance inst;
  const std::size_t n = 1 + rng.below(50);
  const bool coarse = rng.below(2) == 0;
  const double pos_rate = rng.uniform();
  for (std::size_t i = 0; i < n; ++i) {
    inst.scores.push_back(coarse ? static_cast<double>(rng.below(5)) / 4.0 : rng.uniform());
    inst.labels.push_back(rng.uniform() < pos_rate ? 1.0 : 0.0);
  }
  return inst;
}

}  // namespace gig::test

#endif  // GIG_TEST_METRIC_ORACLES_HPP_
