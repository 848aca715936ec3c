// SPDX-License-Identifier: Apache-2.0

#ifndef GIG_AD_PARAMETERS_HPP_
#define GIG_AD_PARAMETERS_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gig/ad/container.hpp"
#include "gig/ad/tensor.hpp"
#include "gig/rng.hpp"

namespace gig::ad {

// Named trainable tensors in registration order. Registration order is also
// the order in which initializers consume the run's random stream.
class ParameterSet {
 public:
  Tensor add(std::string name, Shape shape, std::vector<double> values);
  // Glorot-uniform fan_in x fan_out weight matrix.
  Tensor glorot(std::string name, std::size_t fan_in, std::size_t fan_out, Rng& rng);
  Tensor zeros(std::string name, Shape shape);
  Tensor constant(std::string name, Shape shape, double value);

  const std::vector<std::pair<std::string, Tensor>>& entries() const noexcept { return entries_; }
  std::vector<Tensor> tensors() const;
  Tensor find(std::string_view name) const;  // throws when absent
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t scalar_count() const;

  void zero_grad();

  std::vector<NamedArray> snapshot() const;
  // Copies values in place; names and shapes must match exactly.
  void restore(std::span<const NamedArray> arrays);

  // "name=||p||" pairs, used in divergence diagnostics.
  std::string norm_report() const;

 private:
  std::vector<std::pair<std::string, Tensor>> entries_;
};

// Binary container at `path` plus a JSON manifest of shapes at `path` + ".json".
void save_checkpoint(const std::filesystem::path& path, const ParameterSet& params);
void load_checkpoint(const std::filesystem::path& path, ParameterSet& params);

}  // namespace gig::ad

#endif  // GIG_AD_PARAMETERS_HPP_
