// SPDX-License-Identifier: Apache-2.0

#include "gig/ad/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "gig/error.hpp"

namespace gig::ad {

GradcheckResult gradcheck(std::string name, const std::function<Tensor(Tape&)>& loss,
                          std::vector<Tensor> inputs, const GradcheckOptions& options) {
  auto compute = [&] {
    Tape tape;
    Tensor out = loss(tape);
    tape.backward(out);
  };
  auto evaluate = [&] {
    Tape tape(Tape::Mode::kNoGrad);
    return loss(tape).item();
  };
  return gradcheck(std::move(name), compute, evaluate, std::move(inputs), options);
}

GradcheckResult gradcheck(std::string name, const std::function<void()>& compute_gradients,
                          const std::function<double()>& evaluate, std::vector<Tensor> inputs,
                          const GradcheckOptions& options) {
  for (Tensor& t : inputs) {
    if (!t.requires_grad()) throw ContractViolation("gradcheck input without requires_grad");
    t.zero_grad();
  }
  compute_gradients();
  std::vector<std::vector<double>> analytic;
  for (const Tensor& t : inputs) {
    auto g = t.grad();
    for (double& v : g) v *= options.analytic_scale;
    analytic.push_back(std::move(g));
  }

  GradcheckResult result{std::move(name), 0.0, 0};
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    auto values = inputs[k].mutable_values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double saved = values[i];
      values[i] = saved + options.step;
      const double up = evaluate();
      values[i] = saved - options.step;
      const double down = evaluate();
      values[i] = saved;
      const double numeric = (up - down) / (2.0 * options.step);
      const double a = analytic[k][i];
      const double denom = std::max({std::abs(a), std::abs(numeric), options.denominator_floor});
      result.max_rel_error = std::max(result.max_rel_error, std::abs(a - numeric) / denom);
      ++result.entries;
    }
    inputs[k].zero_grad();
  }
  return result;
}

}  // namespace gig::ad
