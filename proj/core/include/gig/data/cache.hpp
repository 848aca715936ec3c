// SPDX-License-Identifier: Apache-2.0

#ifndef GIG_DATA_CACHE_HPP_
#define GIG_DATA_CACHE_HPP_

#include <filesystem>
#include <string>

#include "gig/data/dataset.hpp"

namespace gig::data {

// Bumped whenever node features or graph construction change.
inline constexpr int kFeatureVersion = 1;

struct CacheStatus {
  bool drugs_rebuilt = false;
  bool targets_rebuilt = false;
  DatasetSummary summary;
};

// Builds (or refreshes) the graph cache for raw_dir. Drug graphs are keyed by
// the drug table, target graphs by sequences, contact maps and tau; only the
// stale side is rebuilt. Corrupt files are detected by checksum and rebuilt.
CacheStatus prepare_cache(const std::filesystem::path& raw_dir,
                          const std::filesystem::path& cache_dir, double tau);

// Throws DataError when the cache is missing or a file fails its checksum.
GraphDataset load_cache(const std::filesystem::path& cache_dir);

// Content hash identifying the cached dataset (used to scope derived caches).
std::string cache_key(const std::filesystem::path& cache_dir);

}  // namespace gig::data

#endif  // GIG_DATA_CACHE_HPP_
