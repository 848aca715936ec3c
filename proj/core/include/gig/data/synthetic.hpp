// SPDX-License-Identifier: Apache-2.0

#ifndef GIG_DATA_SYNTHETIC_HPP_
#define GIG_DATA_SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace gig::data {

inline constexpr std::size_t kMotifCount = 9;
inline constexpr std::size_t kMaxSyntheticClasses = kMotifCount * (kMotifCount - 1) / 2;

// Benchmark with planted motifs. Drug i belongs to class i % K and carries the
// two substituent groups of that class; target j belongs to class j % K and is
// enriched in the two signature residues of that class. A drug and a target
// interact exactly when their classes agree.
struct SyntheticConfig {
  std::size_t num_drugs = 60;
  std::size_t num_targets = 60;
  std::size_t num_classes = 30;  // at most kMaxSyntheticClasses
  std::size_t min_residues = 40;
  std::size_t max_residues = 80;
  double signature_rate = 0.3;
  std::uint64_t seed = 0;  // scaffolds, sequences and contacts only
};

struct SyntheticDataset {
  std::vector<std::string> drug_ids;
  std::vector<std::string> smiles;
  std::vector<std::string> target_ids;
  std::vector<std::string> sequences;
  std::vector<std::size_t> drug_class;
  std::vector<std::size_t> target_class;
  std::size_t interactions = 0;
};

SyntheticDataset make_synthetic(const SyntheticConfig& config);

// Writes the raw/ layout (matrix, drug table, FASTA, text contact maps).
SyntheticDataset write_synthetic_raw(const std::filesystem::path& raw_dir,
                                     const SyntheticConfig& config);

}  // namespace gig::data

#endif  // GIG_DATA_SYNTHETIC_HPP_
