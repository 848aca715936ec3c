// SPDX-License-Identifier: Apache-2.0

#ifndef GIG_AD_GRADCHECK_HPP_
#define GIG_AD_GRADCHECK_HPP_

#include <functional>
#include <string>
#include <vector>

#include "gig/ad/tape.hpp"

namespace gig::ad {

struct GradcheckOptions {
  double step = 1e-5;
  // |analytic - numeric| / max(|analytic|, |numeric|, floor)
  double denominator_floor = 1e-6;
  // Test hook: scales analytic gradients to simulate a broken backward.
  double analytic_scale = 1.0;
};

struct GradcheckResult {
  std::string name;
  double max_rel_error = 0.0;
  std::size_t entries = 0;
};

// Compares reverse-mode gradients of the scalar `loss(tape)` with respect to
// `inputs` against central finite differences. The loss must be a pure
// function of the inputs' values.
GradcheckResult gradcheck(std::string name, const std::function<Tensor(Tape&)>& loss,
                          std::vector<Tensor> inputs, const GradcheckOptions& options = {});

// General form for losses not expressed on a single tape. `compute_gradients`
// must leave d(loss)/d(input) in every input's gradient buffer; `evaluate`
// returns the loss at the inputs' current values.
GradcheckResult gradcheck(std::string name, const std::function<void()>& compute_gradients,
                          const std::function<double()>& evaluate, std::vector<Tensor> inputs,
                          const GradcheckOptions& options = {});

}  // namespace gig::ad

#endif  // GIG_AD_GRADCHECK_HPP_
