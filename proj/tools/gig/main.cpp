// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "gig/cli/app.hpp"

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("gig"));
  spdlog::set_pattern("[%H:%M:%S] %v");
  return gig::cli::run_app(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
