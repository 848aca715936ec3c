// SPDX-License-Identifier: Apache-2.0
//
// Residue graphs for protein targets: contact-map ingestion, the residue
// property table and thresholding into a TargetGraph.

#ifndef GIG_PROTEIN_TARGET_GRAPH_HPP_
#define GIG_PROTEIN_TARGET_GRAPH_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gig/matrix.hpp"

namespace gig::protein {

inline constexpr std::size_t kResidueFeatureDim = 12;
inline constexpr std::size_t kClassFlags = 5;
inline constexpr std::size_t kDescriptors = 7;
inline constexpr double kDefaultContactThreshold = 0.5;

struct ContactMap {
  std::size_t size = 0;
  Matrix probs;  // size x size, symmetric, entries in [0, 1]
};

// Validates a raw matrix: square, every entry in [-0.01, 1.01]; then clamps to
// [0, 1] and symmetrizes by averaging. Throws FormatError otherwise.
ContactMap make_contact_map(const Matrix& raw);

// Whitespace-separated text matrix, or a tensor container holding one 2-D
// array (detected by its magic bytes).
ContactMap load_contact_map(const std::filesystem::path& path);
void save_contact_map_binary(const std::filesystem::path& path, const ContactMap& map);

struct ResidueRow {
  char letter = 'X';
  std::array<double, kResidueFeatureDim> raw{};  // 5 flags + 7 descriptors
};

// Per-letter physicochemical table; descriptor columns are min-max normalized
// over the 20 canonical residues when the table is built.
class ResiduePropertyTable {
 public:
  explicit ResiduePropertyTable(std::vector<ResidueRow> rows);

  static const ResiduePropertyTable& standard();
  // CSV with header "letter,<12 feature columns>" holding raw values.
  static ResiduePropertyTable load_csv(const std::filesystem::path& path);

  // Normalized 12-vector (case-insensitive); all zeros for letters outside the table.
  std::array<double, kResidueFeatureDim> features(char letter) const;
  bool contains(char letter) const { return normalized_.count(letter) != 0; }
  const std::vector<ResidueRow>& raw_rows() const { return rows_; }

 private:
  std::vector<ResidueRow> rows_;
  std::map<char, std::array<double, kResidueFeatureDim>> normalized_;
};

std::array<double, kResidueFeatureDim> featurize_residue(char letter);

struct TargetGraph {
  std::string sequence;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j
  Matrix features;  // sequence.size() x kResidueFeatureDim
};

// Backbone pairs (i, i+1) are always edges; other pairs when the contact
// probability reaches tau.
TargetGraph build_target_graph(std::string_view sequence, const ContactMap& contacts,
                               double tau = kDefaultContactThreshold,
                               std::string_view target_id = {},
                               const ResiduePropertyTable& table = ResiduePropertyTable::standard());

// (id, sequence) records from FASTA or "id<TAB>sequence" TSV, picked by content.
std::vector<std::pair<std::string, std::string>> read_sequences(const std::filesystem::path& path);

}  // namespace gig::protein

#endif  // GIG_PROTEIN_TARGET_GRAPH_HPP_
