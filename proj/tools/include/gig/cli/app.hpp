// SPDX-License-Identifier: Apache-2.0

#ifndef GIG_CLI_APP_HPP_
#define GIG_CLI_APP_HPP_

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace gig::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitNumeric = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runs the gig command line. `args` excludes the program name. Results go to
// `out`, diagnostics to `err`; progress is logged through spdlog.
int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gig::cli

#endif  // GIG_CLI_APP_HPP_
