// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numeric>

#include "gig/ad/adam.hpp"
#include "gig/ad/container.hpp"
#include "gig/ad/gradcheck.hpp"
#include "gig/ad/parameters.hpp"
#include "gig/ad/tape.hpp"
#include "gig/error.hpp"
#include "test_support.hpp"

namespace gig::ad {
namespace {

Tensor leaf(std::size_t r, std::size_t c, std::vector<double> v) {
  return Tensor::from(Shape{r, c}, std::move(v), true);
}

Tensor random_leaf(std::size_t r, std::size_t c, Rng& rng) {
  return Tensor::from(test::random_matrix(r, c, rng), true);
}

TEST(Tape, MatmulValues) {
  Tape tape;
  const auto a = leaf(2, 3, {1, 2, 3, 4, 5, 6});
  const auto b = leaf(3, 2, {7, 8, 9, 10, 11, 12});
  const auto c = tape.matmul(a, b);
  ASSERT_EQ(c.shape(), (Shape{2, 2}));
  EXPECT_EQ(c.at(0, 0), 58);
  EXPECT_EQ(c.at(0, 1), 64);
  EXPECT_EQ(c.at(1, 0), 139);
  EXPECT_EQ(c.at(1, 1), 154);
}

TEST(Tape, ReusedInputAccumulatesGradient) {
  Tape tape;
  const auto x = leaf(1, 3, {1.5, -2, 0.25});
  tape.backward(tape.sum(tape.mul(x, x)));
  const auto g = x.grad();
  EXPECT_DOUBLE_EQ(g[0], 3.0);
  EXPECT_DOUBLE_EQ(g[1], -4.0);
  EXPECT_DOUBLE_EQ(g[2], 0.5);
}

TEST(Tape, SecondBackwardIsRejected) {
  Tape tape;
  const auto x = leaf(1, 1, {2});
  const auto y = tape.sum(tape.mul(x, x));
  tape.backward(y);
  EXPECT_THROW(tape.backward(y), ContractViolation);
}

TEST(Tape, NoGradRecordsNothing) {
  Tape tape(Tape::Mode::kNoGrad);
  const auto x = leaf(2, 2, {1, 2, 3, 4});
  const auto y = tape.sum(tape.relu(tape.matmul(x, x)));
  EXPECT_EQ(tape.size(), 0u);
  EXPECT_EQ(y.item(), 7 + 10 + 15 + 22);
  EXPECT_THROW(tape.backward(y), ContractViolation);
}

TEST(Tape, ConstantsDoNotRecord) {
  Tape tape;
  const auto a = Tensor::from(Shape{1, 2}, {1, 2});
  tape.add(a, a);
  EXPECT_EQ(tape.size(), 0u);
}

TEST(Tape, ShapeErrors) {
  Tape tape;
  const auto a = leaf(2, 3, std::vector<double>(6, 1.0));
  EXPECT_THROW(tape.matmul(a, a), ContractViolation);
  EXPECT_THROW(tape.add(a, leaf(3, 2, std::vector<double>(6, 1.0))), ContractViolation);
  EXPECT_THROW(tape.slice_rows(a, 1, 2), ContractViolation);
  const std::vector<std::size_t> bad{0, 5};
  EXPECT_THROW(tape.gather_rows(a, bad), ContractViolation);
  const std::vector<std::size_t> seg{0, 0};
  EXPECT_THROW(tape.segment_mean(a, seg, 2), ContractViolation);
  EXPECT_THROW(tape.backward(a), ContractViolation);
}

TEST(Tape, RowBroadcastAdd) {
  Tape tape;
  const auto x = leaf(2, 2, {1, 2, 3, 4});
  const auto b = leaf(1, 2, {10, 20});
  const auto y = tape.add(x, b);
  EXPECT_EQ(y.at(1, 0), 13);
  tape.backward(tape.sum(y));
  EXPECT_EQ(b.grad(), (std::vector<double>{2, 2}));
}

TEST(Tape, SegmentSoftmaxNormalizesEachSegment) {
  Rng rng(3);
  const std::vector<std::size_t> seg{2, 0, 2, 1, 0, 2, 2};
  Tape tape(Tape::Mode::kNoGrad);
  const auto x = Tensor::from(test::random_matrix(seg.size(), 1, rng, -30, 30));
  const auto y = tape.segment_softmax(x, seg, 3);
  std::vector<double> total(3, 0.0);
  for (std::size_t i = 0; i < seg.size(); ++i) {
    EXPECT_GT(y.at(i, 0), 0.0);
    total[seg[i]] += y.at(i, 0);
  }
  for (const double t : total) EXPECT_NEAR(t, 1.0, 1e-12);
}

TEST(Tape, BceMatchesDirectFormula) {
  Tape tape(Tape::Mode::kNoGrad);
  const std::vector<double> p{0.9, 0.2, 0.6, 1.0};
  const std::vector<double> y{1, 0, 0, 1};
  const auto loss = tape.bce_loss(Tensor::from(Shape{4, 1}, p), y);
  double expected = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double q = std::clamp(p[i], kBceEpsilon, 1.0 - kBceEpsilon);
    expected -= y[i] * std::log(q) + (1 - y[i]) * std::log(1 - q);
  }
  EXPECT_NEAR(loss.item(), expected / 4, 1e-12);
}

TEST(Tape, LogSigmoidIsStableForLargeInputs) {
  Tape tape(Tape::Mode::kNoGrad);
  const auto y = tape.log_sigmoid(Tensor::from(Shape{2, 1}, {-800, 800}));
  EXPECT_NEAR(y.at(0, 0), -800, 1e-9);
  EXPECT_EQ(y.at(1, 0), 0.0);
}

TEST(Tape, ShiftedSigmoidClampsTemperature) {
  Tape tape(Tape::Mode::kNoGrad);
  const auto before = shifted_sigmoid_clamp_count();
  const auto y = tape.shifted_sigmoid(Tensor::from(Shape{1, 1}, {1e-9}), Tensor::scalar(1),
                                      Tensor::scalar(0), Tensor::scalar(0));
  EXPECT_TRUE(std::isfinite(y.item()));
  EXPECT_GT(shifted_sigmoid_clamp_count(), before);
}

TEST(Tape, DropoutModes) {
  Rng rng(5);
  Tape tape(Tape::Mode::kNoGrad);
  const auto x = Tensor::filled(Shape{200, 50}, 1.0);
  const auto eval = tape.dropout(x, 0.5, false, rng);
  EXPECT_EQ(eval.to_matrix(), x.to_matrix());
  const auto y = tape.dropout(x, 0.25, true, rng);
  std::size_t zeros = 0;
  for (const double v : y.values()) {
    if (v == 0.0) {
      ++zeros;
    } else {
      EXPECT_NEAR(v, 1.0 / 0.75, 1e-12);
    }
  }
  EXPECT_NEAR(static_cast<double>(zeros) / y.size(), 0.25, 0.02);
  EXPECT_THROW(tape.dropout(x, 1.0, true, rng), ContractViolation);
}

// Random compositions of ops, checked against finite differences.
TEST(Gradcheck, RandomCompositions) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const std::size_t n = 2 + rng.below(4);
    const std::size_t d = 1 + rng.below(4);
    const auto x = random_leaf(n, d, rng);
    const auto w = random_leaf(d, d, rng);
    const auto bias = random_leaf(1, d, rng);
    std::vector<std::size_t> seg(n);
    for (std::size_t i = 0; i < n; ++i) seg[i] = i % 2;
    const auto result = gradcheck(
        "composite",
        [&](Tape& tape) {
          auto h = tape.add(tape.matmul(x, w), bias);
          h = tape.sigmoid(h);
          auto pooled = tape.segment_mean(tape.mul(h, x), seg, 2);
          return tape.sum(tape.log_sigmoid(tape.row_sum(pooled)));
        },
        {x, w, bias});
    EXPECT_LT(result.max_rel_error, 1e-6) << "seed " << seed;
    EXPECT_EQ(result.entries, n * d + d * d + d);
  }
}

TEST(Gradcheck, DetectsWrongGradient) {
  Rng rng(1);
  const auto x = random_leaf(3, 3, rng);
  GradcheckOptions options;
  options.analytic_scale = 1.01;
  const auto result = gradcheck(
      "scaled", [&](Tape& tape) { return tape.sum(tape.mul(x, x)); }, {x}, options);
  EXPECT_GT(result.max_rel_error, 5e-3);
}

TEST(Adam, FirstStepMovesByLearningRate) {
  auto x = leaf(1, 3, {1.0, -2.0, 0.5});
  Adam adam({x}, AdamOptions{.lr = 0.1});
  Tape tape;
  tape.backward(tape.sum(tape.mul(x, x)));
  adam.step();
  // Bias-corrected first step is lr * g / (|g| + eps).
  const auto v = x.values();
  EXPECT_NEAR(v[0], 0.9, 1e-7);
  EXPECT_NEAR(v[1], -1.9, 1e-7);
  EXPECT_NEAR(v[2], 0.4, 1e-7);
  EXPECT_EQ(adam.steps(), 1u);
}

TEST(Adam, MatchesReferenceRecurrence) {
  auto x = leaf(1, 1, {3.0});
  const AdamOptions o{.lr = 0.05};
  Adam adam({x}, o);
  double ref = 3.0, m = 0.0, v = 0.0;
  for (int k = 1; k <= 50; ++k) {
    adam.zero_grad();
    Tape tape;
    tape.backward(tape.sum(tape.mul(tape.mul(x, x), x)));
    adam.step();
    const double g = 3 * ref * ref;
    m = o.beta1 * m + (1 - o.beta1) * g;
    v = o.beta2 * v + (1 - o.beta2) * g * g;
    const double mh = m / (1 - std::pow(o.beta1, k));
    const double vh = v / (1 - std::pow(o.beta2, k));
    ref -= o.lr * mh / (std::sqrt(vh) + o.eps);
    ASSERT_NEAR(x.item(), ref, 1e-12) << "step " << k;
  }
}

TEST(Adam, RejectsFrozenTensor) {
  EXPECT_THROW(Adam({Tensor::scalar(1.0)}), ContractViolation);
}

TEST(Parameters, GlorotBoundsAndOrder) {
  Rng rng(9);
  ParameterSet params;
  const auto w = params.glorot("w", 30, 20, rng);
  params.zeros("b", Shape{1, 20});
  const double limit = std::sqrt(6.0 / 50.0);
  for (const double v : w.values()) EXPECT_LE(std::abs(v), limit);
  EXPECT_EQ(params.entries()[0].first, "w");
  EXPECT_EQ(params.scalar_count(), 620u);
  EXPECT_THROW(params.zeros("w", Shape{1, 1}), ContractViolation);
  EXPECT_THROW(params.find("nope"), ContractViolation);
}

TEST(Parameters, CheckpointRoundTrip) {
  test::TempDir dir;
  Rng rng(4);
  ParameterSet a;
  a.glorot("w", 4, 3, rng);
  a.constant("t", Shape{1, 1}, 1.0);
  save_checkpoint(dir / "m.gckpt", a);
  EXPECT_TRUE(std::filesystem::exists(dir / "m.gckpt.json"));

  ParameterSet b;
  b.zeros("w", Shape{4, 3});
  b.zeros("t", Shape{1, 1});
  load_checkpoint(dir / "m.gckpt", b);
  EXPECT_EQ(a.snapshot(), b.snapshot());

  ParameterSet wrong;
  wrong.zeros("w", Shape{3, 4});
  wrong.zeros("t", Shape{1, 1});
  EXPECT_THROW(load_checkpoint(dir / "m.gckpt", wrong), FormatError);
}

TEST(Container, RoundTripAndCorruption) {
  test::TempDir dir;
  const std::vector<NamedArray> arrays{{"a", {2, 2}, {1, 2, 3, 4}}, {"scalar", {}, {7.5}},
                                       {"empty", {0, 3}, {}}};
  write_container(dir / "c.bin", arrays);
  EXPECT_TRUE(has_container_magic(dir / "c.bin"));
  EXPECT_EQ(read_container(dir / "c.bin"), arrays);

  const auto size = std::filesystem::file_size(dir / "c.bin");
  std::filesystem::resize_file(dir / "c.bin", size - 3);
  EXPECT_THROW(read_container(dir / "c.bin"), FormatError);

  test::write_text(dir / "bad.bin", "NOTMAGIC........");
  EXPECT_FALSE(has_container_magic(dir / "bad.bin"));
  EXPECT_THROW(read_container(dir / "bad.bin"), FormatError);
  const std::vector<NamedArray> inconsistent{{"x", {3}, {1, 2}}};
  EXPECT_THROW(write_container(dir / "x.bin", inconsistent), ContractViolation);
}

}  // namespace
}  // namespace gig::ad
