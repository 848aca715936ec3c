// SPDX-License-Identifier: Apache-2.0

#include "gig/data/synthetic.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <string_view>
#include <utility>

#include "gig/data/dataset.hpp"
#include "gig/error.hpp"
#include "gig/rng.hpp"

namespace gig::data {

namespace {

constexpr std::array<std::string_view, kMotifCount> kGroups{"Cl", "Br", "F", "I", "S",
                                                             "P", "N", "O", "C#N"};
constexpr std::array<char, kMotifCount> kSignature{'W', 'C', 'H', 'M', 'Y', 'K', 'R', 'Q', 'N'};
constexpr std::string_view kBackground = "ADEFGILPSTV";

// The unordered pairs of motif indices, in a fixed order.
std::pair<std::size_t, std::size_t> class_pair(std::size_t c) {
  std::size_t k = 0;
  for (std::size_t a = 0; a < kMotifCount; ++a) {
    for (std::size_t b = a + 1; b < kMotifCount; ++b) {
      if (k++ == c) return {a, b};
    }
  }
  throw ContractViolation("synthetic class index out of range");
}

std::string make_smiles(std::size_t cls, Rng& rng) {
  const auto [g1, g2] = class_pair(cls);
  const std::size_t chain = 4 + rng.below(5);
  std::vector<std::vector<std::string_view>> branches(chain);
  for (std::string_view group : {kGroups[g1], kGroups[g1], kGroups[g2], kGroups[g2]}) {
    std::size_t pos = rng.below(chain);
    while (branches[pos].size() >= 2) pos = (pos + 1) % chain;
    branches[pos].push_back(group);
  }
  std::string s = rng.uniform() < 0.5 ? "c1ccccc1" : "";
  for (std::size_t k = 0; k < chain; ++k) {
    s += 'C';
    for (std::string_view b : branches[k]) {
      s += '(';
      s += b;
      s += ')';
    }
  }
  return s;
}

std::string make_sequence(std::size_t cls, const SyntheticConfig& config, Rng& rng) {
  const auto [r1, r2] = class_pair(cls);
  const std::size_t span = config.max_residues - config.min_residues + 1;
  const std::size_t length = config.min_residues + rng.below(span);
  std::string seq;
  for (std::size_t k = 0; k < length; ++k) {
    if (rng.uniform() < config.signature_rate) {
      seq += kSignature[rng.uniform() < 0.5 ? r1 : r2];
    } else {
      seq += kBackground[rng.below(kBackground.size())];
    }
  }
  return seq;
}

void write_contact_map(const std::filesystem::path& path, std::size_t n, Rng& rng) {
  std::vector<double> p(n * n, 0.02);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = 0.02;
      if (j - i <= 1) {
        v = 0.99;
      } else if (j - i <= 3) {
        v = 0.7;
      } else if (rng.uniform() < 0.03) {
        v = 0.8;
      }
      p[i * n + j] = v;
      p[j * n + i] = v;
    }
    p[i * n + i] = 1.0;
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  char buf[16];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof buf, "%.2f", p[i * n + j]);
      out << (j ? " " : "") << buf;
    }
    out << '\n';
  }
}

}  // namespace

SyntheticDataset make_synthetic(const SyntheticConfig& config) {
  if (config.num_classes == 0 || config.num_classes > kMaxSyntheticClasses) {
    throw ContractViolation("synthetic benchmark supports 1 to " +
                            std::to_string(kMaxSyntheticClasses) + " classes");
  }
  if (config.min_residues < 2 || config.max_residues < config.min_residues) {
    throw ContractViolation("synthetic benchmark: invalid residue range");
  }
  Rng rng(config.seed);
  SyntheticDataset d;
  char id[32];
  for (std::size_t i = 0; i < config.num_drugs; ++i) {
    std::snprintf(id, sizeof id, "D%03zu", i);
    d.drug_ids.emplace_back(id);
    d.drug_class.push_back(i % config.num_classes);
    d.smiles.push_back(make_smiles(d.drug_class.back(), rng));
  }
  for (std::size_t j = 0; j < config.num_targets; ++j) {
    std::snprintf(id, sizeof id, "T%03zu", j);
    d.target_ids.emplace_back(id);
    d.target_class.push_back(j % config.num_classes);
    d.sequences.push_back(make_sequence(d.target_class.back(), config, rng));
  }
  for (std::size_t i = 0; i < config.num_drugs; ++i) {
    for (std::size_t j = 0; j < config.num_targets; ++j) {
      if (d.drug_class[i] == d.target_class[j]) ++d.interactions;
    }
  }
  return d;
}

SyntheticDataset write_synthetic_raw(const std::filesystem::path& raw_dir,
                                     const SyntheticConfig& config) {
  SyntheticDataset d = make_synthetic(config);
  const auto contact_dir = raw_dir / kContactDir;
  std::filesystem::create_directories(contact_dir);

  std::ofstream drugs(raw_dir / kDrugsFile);
  drugs << "id\tsmiles\n";
  for (std::size_t i = 0; i < d.drug_ids.size(); ++i) drugs << d.drug_ids[i] << '\t' << d.smiles[i] << '\n';

  std::ofstream fasta(raw_dir / kTargetsFile);
  for (std::size_t j = 0; j < d.target_ids.size(); ++j) {
    fasta << '>' << d.target_ids[j] << '\n' << d.sequences[j] << '\n';
  }

  std::ofstream matrix(raw_dir / kMatrixFile);
  for (std::size_t i = 0; i < d.drug_ids.size(); ++i) {
    for (std::size_t j = 0; j < d.target_ids.size(); ++j) {
      matrix << (j ? " " : "") << (d.drug_class[i] == d.target_class[j] ? 1 : 0);
    }
    matrix << '\n';
  }

  Rng rng(derive_seed(config.seed, 1));
  for (std::size_t j = 0; j < d.target_ids.size(); ++j) {
    write_contact_map(contact_dir / (d.target_ids[j] + ".txt"), d.sequences[j].size(), rng);
  }
  if (!drugs || !fasta || !matrix) throw DataError("failed writing synthetic data to " + raw_dir.string());
  return d;
}

}  // namespace gig::data
