// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <json.hpp>

#include "gig/metrics/metrics.hpp"
#include "metric_oracles.hpp"

namespace gig::metrics {
namespace {

using V = std::vector<double>;

TEST(RocAuc, Examples) {
  EXPECT_DOUBLE_EQ(*roc_auc(V{0.9, 0.8, 0.3}, V{1, 1, 0}), 1.0);
  EXPECT_DOUBLE_EQ(*roc_auc(V{0.3, 0.7}, V{1, 0}), 0.0);
  EXPECT_DOUBLE_EQ(*roc_auc(V{0.4, 0.4, 0.4, 0.4}, V{1, 0, 1, 0}), 0.5);
}

TEST(RocAuc, SingleClassIsUndefined) {
  EXPECT_FALSE(roc_auc(V{0.1, 0.2}, V{1, 1}).has_value());
  EXPECT_FALSE(roc_auc(V{}, V{}).has_value());
}

TEST(Auprc, Examples) {
  EXPECT_DOUBLE_EQ(*auprc(V{0.9, 0.8, 0.2, 0.1}, V{1, 1, 0, 0}), 1.0);
  EXPECT_NEAR(*auprc(V{0.9, 0.8, 0.7}, V{1, 0, 1}), 5.0 / 6.0, 1e-15);
  for (std::size_t n = 1; n <= 8; ++n) {
    V s, y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) s.push_back(1.0 - 0.1 * double(i));
    y.back() = 1;
    EXPECT_NEAR(*auprc(s, y), 1.0 / double(n), 1e-15);
  }
  EXPECT_FALSE(auprc(V{0.5}, V{0}).has_value());
}

TEST(Auprc, TiesArePessimistic) {
  // One positive tied with three negatives ranks last among them.
  EXPECT_NEAR(*auprc(V{0.5, 0.5, 0.5, 0.5}, V{0, 1, 0, 0}), 0.25, 1e-15);
}

TEST(Confusion, F1AndMccExamples) {
  const Confusion c{.tp = 2, .fp = 1, .tn = 0, .fn = 1};
  EXPECT_NEAR(f1(c), 2.0 / 3.0, 1e-15);
  const auto perfect = evaluate(V{0.9, 0.7, 0.1, 0.3}, V{1, 1, 0, 0});
  EXPECT_EQ(perfect.f1, 1.0);
  EXPECT_EQ(perfect.mcc, 1.0);
  const auto one_class = evaluate(V{0.9, 0.8, 0.7}, V{1, 0, 1});
  EXPECT_EQ(one_class.mcc, 0.0);
  EXPECT_EQ(f1(Confusion{.tp = 0, .fp = 0, .tn = 5, .fn = 0}), 0.0);
}

TEST(Confusion, ThresholdIsInclusive) {
  const auto c = confusion(V{0.5, 0.49999}, V{1, 1});
  EXPECT_EQ(c.tp, 1u);
  EXPECT_EQ(c.fn, 1u);
}

TEST(Metrics, MatchOraclesOnRandomInstances) {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto inst = test::random_instance(rng);
    const auto auc = roc_auc(inst.scores, inst.labels);
    const auto auc_ref = test::brute_force_auc(inst.scores, inst.labels);
    ASSERT_EQ(auc.has_value(), auc_ref.has_value()) << trial;
    if (auc) {
      ASSERT_NEAR(*auc, *auc_ref, 1e-12) << trial;
    }

    const auto ap = auprc(inst.scores, inst.labels);
    const auto ap_ref = test::prefix_enumeration_ap(inst.scores, inst.labels);
    ASSERT_EQ(ap.has_value(), ap_ref.has_value()) << trial;
    if (ap) {
      ASSERT_NEAR(*ap, *ap_ref, 1e-12) << trial;
    }

    const double threshold = rng.uniform();
    const auto c = confusion(inst.scores, inst.labels, threshold);
    ASSERT_EQ(c, test::hand_confusion(inst.scores, inst.labels, threshold));
    ASSERT_NEAR(f1(c), test::hand_f1(c), 1e-12);
    ASSERT_NEAR(mcc(c), test::hand_mcc(c), 1e-12);
    ASSERT_EQ(c.total(), inst.scores.size());
  }
}

TEST(Metrics, InvariantUnderMonotoneTransform) {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = test::random_instance(rng);
    V moved;
    for (const double s : inst.scores) moved.push_back(std::exp(3 * s) - 7);
    const auto a = roc_auc(inst.scores, inst.labels);
    const auto b = roc_auc(moved, inst.labels);
    if (a) {
      EXPECT_NEAR(*a, *b, 1e-12);
    }
    const auto p = auprc(inst.scores, inst.labels);
    const auto q = auprc(moved, inst.labels);
    if (p) {
      EXPECT_NEAR(*p, *q, 1e-12);
    }
  }
}

TEST(Metrics, RangesHold) {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = test::random_instance(rng);
    const auto r = evaluate(inst.scores, inst.labels);
    if (r.roc_auc) {
      EXPECT_TRUE(*r.roc_auc >= 0 && *r.roc_auc <= 1);
    }
    if (r.auprc) {
      EXPECT_TRUE(*r.auprc >= 0 && *r.auprc <= 1);
    }
    EXPECT_TRUE(r.f1 >= 0 && r.f1 <= 1);
    EXPECT_TRUE(r.mcc >= -1 && r.mcc <= 1);
    EXPECT_EQ(r.positives + r.negatives, inst.scores.size());
  }
}

TEST(Metrics, JsonRoundTripAndCsv) {
  const auto r = evaluate(V{0.9, 0.2, 0.6}, V{1, 0, 0}, 0.4);
  const auto back = report_from_json(to_json(r));
  EXPECT_EQ(back.roc_auc, r.roc_auc);
  EXPECT_EQ(back.auprc, r.auprc);
  EXPECT_EQ(back.confusion, r.confusion);
  EXPECT_EQ(back.threshold, 0.4);

  const auto undefined = evaluate(V{0.9, 0.2}, V{0, 0});
  const auto json = to_json(undefined);
  EXPECT_TRUE(nlohmann::json::parse(json).at("roc_auc").is_null()) << json;
  EXPECT_FALSE(report_from_json(json).roc_auc.has_value());
  EXPECT_NE(to_csv_row(undefined).find("undefined"), std::string::npos);
  const auto header = csv_header();
  const auto row = to_csv_row(r);
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), std::count(row.begin(), row.end(), ','));
}

}  // namespace
}  // namespace gig::metrics
