// SPDX-License-Identifier: Apache-2.0
//
// Reverse-mode computation record. Every differentiable operation in the
// project goes through a Tape: ops run eagerly, and when any input requires a
// gradient the op is appended together with its backward closure. Entries are
// therefore already in topological order; backward() replays them in reverse.

#ifndef GIG_AD_TAPE_HPP_
#define GIG_AD_TAPE_HPP_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <vector>

#include "gig/ad/tensor.hpp"
#include "gig/rng.hpp"

namespace gig::ad {

// Constant sparse matrix in coordinate form (e.g. a normalized adjacency).
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_index;
  std::vector<std::size_t> col_index;
  std::vector<double> value;
};

inline constexpr double kBceEpsilon = 1e-12;
inline constexpr double kMinTemperature = 1e-8;

// Number of times shifted_sigmoid had to clamp its temperature, process-wide.
std::uint64_t shifted_sigmoid_clamp_count() noexcept;

class Tape {
 public:
  enum class Mode { kRecord, kNoGrad };

  explicit Tape(Mode mode = Mode::kRecord) : mode_(mode) {}
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  bool recording() const noexcept { return mode_ == Mode::kRecord; }
  std::size_t size() const noexcept { return entries_.size(); }

  Tensor matmul(const Tensor& a, const Tensor& b);
  // b has a's shape, or is a 1 x cols row broadcast over a's rows.
  Tensor add(const Tensor& a, const Tensor& b);
  Tensor sub(const Tensor& a, const Tensor& b);
  Tensor mul(const Tensor& a, const Tensor& b);
  // Scales row i of x (n x d) by w(i) (w is n x 1).
  Tensor mul_rows(const Tensor& x, const Tensor& w);
  Tensor mul_scalar(const Tensor& x, double c);
  Tensor concat_rows(std::span<const Tensor> parts);
  Tensor concat_cols(std::span<const Tensor> parts);
  Tensor concat_rows(std::initializer_list<Tensor> parts) {
    return concat_rows(std::span<const Tensor>(parts.begin(), parts.size()));
  }
  Tensor concat_cols(std::initializer_list<Tensor> parts) {
    return concat_cols(std::span<const Tensor>(parts.begin(), parts.size()));
  }
  Tensor slice_rows(const Tensor& x, std::size_t begin, std::size_t count);
  Tensor gather_rows(const Tensor& x, std::span<const std::size_t> index);

  Tensor relu(const Tensor& x);
  Tensor leaky_relu(const Tensor& x, double slope);
  Tensor sigmoid(const Tensor& x);
  Tensor log_sigmoid(const Tensor& x);
  // 1 / (1 + exp(-(a x + b) / t)) with 1x1 tensors a, b, t. |t| below
  // kMinTemperature is clamped and counted.
  Tensor shifted_sigmoid(const Tensor& x, const Tensor& a, const Tensor& b, const Tensor& t);

  Tensor segment_sum(const Tensor& x, std::span<const std::size_t> segment, std::size_t k);
  // Every segment must be non-empty.
  Tensor segment_mean(const Tensor& x, std::span<const std::size_t> segment, std::size_t k);
  // logits is n x 1; normalized within each segment.
  Tensor segment_softmax(const Tensor& logits, std::span<const std::size_t> segment,
                         std::size_t k);

  Tensor sparse_matmul(std::shared_ptr<const SparseMatrix> a, const Tensor& x);

  // Inverted dropout; identity when !training or p == 0.
  Tensor dropout(const Tensor& x, double p, bool training, Rng& rng);

  // Mean binary cross-entropy of preds (N x 1) against 0/1 labels.
  Tensor bce_loss(const Tensor& preds, std::span<const double> labels);

  Tensor sum(const Tensor& x);
  Tensor row_sum(const Tensor& x);

  // Seeds d(loss)/d(loss) = 1 and runs the record in reverse. Valid once.
  void backward(const Tensor& loss);
  // Same with an explicit upstream gradient for a non-scalar output.
  void backward(const Tensor& output, std::span<const double> seed);

 private:
  using Backward = std::function<void(detail::Node& out)>;

  Tensor emit(Shape shape, std::vector<double> value, std::initializer_list<const Tensor*> inputs,
              Backward backward);
  Tensor emit(Shape shape, std::vector<double> value, std::span<const Tensor> inputs,
              Backward backward);

  struct Entry {
    std::shared_ptr<detail::Node> out;
    Backward backward;
  };

  Mode mode_;
  std::vector<Entry> entries_;
  bool consumed_ = false;
};

}  // namespace gig::ad

#endif  // GIG_AD_TAPE_HPP_
