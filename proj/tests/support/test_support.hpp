// SPDX-License-Identifier: Apache-2.0

#ifndef GIG_TEST_SUPPORT_HPP_
#define GIG_TEST_SUPPORT_HPP_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "gig/matrix.hpp"
#include "gig/nn/graph.hpp"
#include "gig/rng.hpp"

namespace gig::test {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "gig");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::filesystem::path data_dir();

void write_text(const std::filesystem::path& path, const std::string& text);

Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng, double lo = -1.0,
                     double hi = 1.0);

// Connected-ish random simple graph: a spanning path plus extra random edges.
std::vector<std::pair<std::size_t, std::size_t>> random_edges(std::size_t n, std::size_t extra,
                                                              Rng& rng);

nn::FeatureGraph random_feature_graph(std::size_t n, std::size_t dim, Rng& rng);

// A random permutation of 0..n-1.
std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng);

double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace gig::test

#endif  // GIG_TEST_SUPPORT_HPP_
