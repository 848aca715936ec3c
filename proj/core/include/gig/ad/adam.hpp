// SPDX-License-Identifier: Apache-2.0

#ifndef GIG_AD_ADAM_HPP_
#define GIG_AD_ADAM_HPP_

#include <cstdint>
#include <vector>

#include "gig/ad/tensor.hpp"

namespace gig::ad {

struct AdamOptions {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Bias-corrected Adam over a fixed parameter list. Moment buffers are
// allocated to match each parameter at construction.
class Adam {
 public:
  explicit Adam(std::vector<Tensor> params, AdamOptions options = {});

  // Applies one update from the parameters' accumulated gradients.
  void step();
  void zero_grad();

  std::uint64_t steps() const noexcept { return step_; }
  const AdamOptions& options() const noexcept { return options_; }

 private:
  std::vector<Tensor> params_;
  std::vector<std::vector<double>> m_;
  std::vector<std::vector<double>> v_;
  AdamOptions options_;
  std::uint64_t step_ = 0;
};

}  // namespace gig::ad

#endif  // GIG_AD_ADAM_HPP_
