// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "gig/error.hpp"
#include "gig/protein/target_graph.hpp"

namespace gig::protein {
namespace {

// Mirrors data/amino_acid_properties.csv (raw, pre-normalization).
// Flags: aliphatic, aromatic, polar neutral, acidic charged, basic charged.
// Descriptors: MW, pKa, pKb, pKx, pI, hydrophobicity pH2, hydrophobicity pH7.
const std::vector<ResidueRow>& builtin_rows() {
  static const std::vector<ResidueRow> rows = {
      {'A', {1, 0, 0, 0, 0, 71.08, 2.34, 9.69, 0.00, 6.00, 47, 41}},
      {'C', {0, 0, 1, 0, 0, 103.15, 1.96, 10.28, 8.18, 5.07, 52, 49}},
      {'D', {0, 0, 0, 1, 0, 115.09, 1.88, 9.60, 3.65, 2.77, -18, -55}},
      {'E', {0, 0, 0, 1, 0, 129.12, 2.19, 9.67, 4.25, 3.22, 8, -31}},
      {'F', {0, 1, 0, 0, 0, 147.18, 1.83, 9.13, 0.00, 5.48, 92, 100}},
      {'G', {1, 0, 0, 0, 0, 57.05, 2.34, 9.60, 0.00, 5.97, 0, 0}},
      {'H', {0, 0, 0, 0, 1, 137.14, 1.82, 9.17, 6.00, 7.59, -42, 8}},
      {'I', {1, 0, 0, 0, 0, 113.16, 2.36, 9.60, 0.00, 6.02, 100, 99}},
      {'K', {0, 0, 0, 0, 1, 128.18, 2.18, 8.95, 10.53, 9.74, -37, -23}},
      {'L', {1, 0, 0, 0, 0, 113.16, 2.36, 9.60, 0.00, 5.98, 100, 97}},
      {'M', {1, 0, 0, 0, 0, 131.20, 2.28, 9.21, 0.00, 5.74, 74, 74}},
      {'N', {0, 0, 1, 0, 0, 114.11, 2.02, 8.80, 0.00, 5.41, -41, -28}},
      {'P', {1, 0, 0, 0, 0, 97.12, 1.99, 10.60, 0.00, 6.30, -46, -46}},
      {'Q', {0, 0, 1, 0, 0, 128.13, 2.17, 9.13, 0.00, 5.65, -18, -10}},
      {'R', {0, 0, 0, 0, 1, 156.19, 2.17, 9.04, 12.48, 10.76, -26, -14}},
      {'S', {0, 0, 1, 0, 0, 87.08, 2.21, 9.15, 0.00, 5.68, -7, -5}},
      {'T', {0, 0, 1, 0, 0, 101.10, 2.09, 9.10, 0.00, 5.60, 13, 13}},
      {'V', {1, 0, 0, 0, 0, 99.13, 2.32, 9.62, 0.00, 5.96, 79, 76}},
      {'W', {0, 1, 0, 0, 0, 186.22, 2.83, 9.39, 0.00, 5.89, 84, 97}},
      {'Y', {0, 1, 0, 0, 0, 163.18, 2.32, 9.62, 0.00, 5.96, 49, 63}},
  };
  return rows;
}

}  // namespace

ResiduePropertyTable::ResiduePropertyTable(std::vector<ResidueRow> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw FormatError("residue property table is empty");
  std::array<double, kDescriptors> lo;
  std::array<double, kDescriptors> hi;
  lo.fill(std::numeric_limits<double>::infinity());
  hi.fill(-std::numeric_limits<double>::infinity());
  for (const ResidueRow& r : rows_) {
    int flags = 0;
    for (std::size_t k = 0; k < kClassFlags; ++k) {
      if (r.raw[k] != 0.0 && r.raw[k] != 1.0) {
        throw FormatError(std::string("class flag must be 0/1 for residue ") + r.letter);
      }
      flags += r.raw[k] == 1.0;
    }
    if (flags != 1) {
      throw FormatError(std::string("residue needs exactly one class flag: ") + r.letter);
    }
    for (std::size_t k = 0; k < kDescriptors; ++k) {
      lo[k] = std::min(lo[k], r.raw[kClassFlags + k]);
      hi[k] = std::max(hi[k], r.raw[kClassFlags + k]);
    }
  }
  for (const ResidueRow& r : rows_) {
    if (normalized_.count(r.letter)) {
      throw FormatError(std::string("duplicate residue letter ") + r.letter);
    }
    std::array<double, kResidueFeatureDim> f = r.raw;
    for (std::size_t k = 0; k < kDescriptors; ++k) {
      const double span = hi[k] - lo[k];
      f[kClassFlags + k] = span > 0.0 ? (r.raw[kClassFlags + k] - lo[k]) / span : 0.0;
    }
    normalized_.emplace(r.letter, f);
  }
}

const ResiduePropertyTable& ResiduePropertyTable::standard() {
  static const ResiduePropertyTable table(builtin_rows());
  return table;
}

ResiduePropertyTable ResiduePropertyTable::load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open residue table " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty residue table " + path.string());
  if (std::count(line.begin(), line.end(), ',') != static_cast<long>(kResidueFeatureDim)) {
    throw FormatError("residue table header must have 13 columns");
  }
  std::vector<ResidueRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    ResidueRow row;
    if (!std::getline(ss, cell, ',') || cell.size() != 1) {
      throw FormatError("bad residue letter in line: " + line);
    }
    row.letter = cell[0];
    for (std::size_t k = 0; k < kResidueFeatureDim; ++k) {
      if (!std::getline(ss, cell, ',')) throw FormatError("short residue row: " + line);
      try {
        row.raw[k] = std::stod(cell);
      } catch (const std::exception&) {
        throw FormatError("non-numeric residue value: " + cell);
      }
    }
    rows.push_back(row);
  }
  return ResiduePropertyTable(std::move(rows));
}

std::array<double, kResidueFeatureDim> ResiduePropertyTable::features(char letter) const {
  auto it = normalized_.find(static_cast<char>(std::toupper(static_cast<unsigned char>(letter))));
  if (it == normalized_.end()) return {};
  return it->second;
}

std::array<double, kResidueFeatureDim> featurize_residue(char letter) {
  return ResiduePropertyTable::standard().features(letter);
}

}  // namespace gig::protein
