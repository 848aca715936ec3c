// SPDX-License-Identifier: Apache-2.0

#ifndef GIG_DATA_FETCH_HPP_
#define GIG_DATA_FETCH_HPP_

#include <filesystem>
#include <string>
#include <vector>

namespace gig::data {

struct FetchEntry {
  std::string key;     // file path relative to the raw directory
  std::string url;     // empty when the manifest leaves it unset
  std::string sha256;  // optional
};

// JSON: {"files": {"<relative path>": {"url": "...", "sha256": "..."}}}
std::vector<FetchEntry> load_fetch_manifest(const std::filesystem::path& path);

struct FetchOptions {
  int attempts = 3;
  long timeout_seconds = 300;
};

struct FetchReport {
  std::vector<std::string> downloaded;
  std::vector<std::string> skipped;  // already present and verified
};

// Downloads every entry into raw_dir via a temporary file that is renamed only
// after its checksum (when configured) matches. Throws DataError naming the
// manifest key on a missing URL, exhausted retries or a checksum mismatch.
FetchReport fetch(const std::vector<FetchEntry>& entries, const std::filesystem::path& raw_dir,
                  const FetchOptions& options = {});

}  // namespace gig::data

#endif  // GIG_DATA_FETCH_HPP_
