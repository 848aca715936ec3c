// SPDX-License-Identifier: Apache-2.0

#ifndef GIG_CLI_GRADCHECK_SUITE_HPP_
#define GIG_CLI_GRADCHECK_SUITE_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gig/ad/gradcheck.hpp"

namespace gig::cli {

inline constexpr double kOpTolerance = 1e-4;
inline constexpr double kModelTolerance = 1e-3;

struct GradcheckLine {
  std::string name;
  double max_rel_error = 0.0;
  double tolerance = 0.0;
  std::size_t entries = 0;
  bool pass = false;
};

struct GradcheckSuiteResult {
  std::vector<GradcheckLine> lines;
  double seconds = 0.0;

  bool passed() const;
};

// Finite-difference checks of every differentiable op, each layer type and
// the end-to-end hierarchical model on a 5-drug / 5-target toy instance.
// `scale` is "tiny" (default widths) or "small" (wider layers).
GradcheckSuiteResult run_gradcheck_suite(std::string_view scale,
                                         const ad::GradcheckOptions& options = {});

}  // namespace gig::cli

#endif  // GIG_CLI_GRADCHECK_SUITE_HPP_
