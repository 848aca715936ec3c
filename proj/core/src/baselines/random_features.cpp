// SPDX-License-Identifier: Apache-2.0

#include "gig/baselines/baselines.hpp"
#include "gig/error.hpp"

namespace gig::baselines {

model::MainGraphState random_meta_features(std::size_t num_drugs, std::size_t num_targets,
                                           const RandomFeatureConfig& config) {
  if (config.dim == 0) throw ContractViolation("random features: dim must be positive");
  Rng rng(config.seed);
  model::MainGraphState s{Matrix(num_drugs, config.dim), Matrix(num_targets, config.dim)};
  for (double& v : s.drugs.data()) v = rng.normal();
  for (double& v : s.targets.data()) v = rng.normal();
  return s;
}

}  // namespace gig::baselines
