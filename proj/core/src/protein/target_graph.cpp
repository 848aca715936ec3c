// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "gig/ad/container.hpp"
#include "gig/error.hpp"
#include "gig/protein/target_graph.hpp"

namespace gig::protein {

ContactMap make_contact_map(const Matrix& raw) {
  if (raw.rows() != raw.cols()) {
    throw FormatError("contact map is not square: " + std::to_string(raw.rows()) + "x" +
                      std::to_string(raw.cols()));
  }
  const std::size_t n = raw.rows();
  for (double v : raw.data()) {
    if (!(v >= -0.01 && v <= 1.01)) {
      throw FormatError("contact probability out of range: " + std::to_string(v));
    }
  }
  ContactMap map{n, Matrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double a = std::clamp(raw(i, j), 0.0, 1.0);
      const double b = std::clamp(raw(j, i), 0.0, 1.0);
      map.probs(i, j) = 0.5 * (a + b);
    }
  }
  return map;
}

ContactMap load_contact_map(const std::filesystem::path& path) {
  if (ad::has_container_magic(path)) {
    auto arrays = ad::read_container(path);
    if (arrays.size() != 1 || arrays[0].shape.size() != 2) {
      throw FormatError("binary contact map must hold one 2-D array: " + path.string());
    }
    const auto& a = arrays[0];
    return make_contact_map(Matrix(a.shape[0], a.shape[1], a.data));
  }
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open contact map " + path.string());
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::size_t count = 0;
    std::string tok;
    while (ss >> tok) {
      try {
        values.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw FormatError("non-numeric contact map entry '" + tok + "' in " + path.string());
      }
      ++count;
    }
    if (count == 0) continue;
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      throw FormatError("ragged contact map row in " + path.string());
    }
    ++rows;
  }
  return make_contact_map(Matrix(rows, cols, std::move(values)));
}

void save_contact_map_binary(const std::filesystem::path& path, const ContactMap& map) {
  const ad::NamedArray arr{"contact_map", {map.size, map.size}, map.probs.storage()};
  ad::write_container(path, std::span(&arr, 1));
}

TargetGraph build_target_graph(std::string_view sequence, const ContactMap& contacts, double tau,
                               std::string_view target_id, const ResiduePropertyTable& table) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw ContractViolation("contact threshold must lie in (0, 1), got " + std::to_string(tau));
  }
  const std::size_t n = sequence.size();
  if (contacts.size != n) {
    throw DataError("target '" + std::string(target_id) + "': sequence length " +
                    std::to_string(n) + " does not match contact map size " +
                    std::to_string(contacts.size));
  }
  TargetGraph g;
  g.sequence = std::string(sequence);
  g.features = Matrix(n, kResidueFeatureDim);
  for (std::size_t i = 0; i < n; ++i) {
    const auto f = table.features(static_cast<char>(std::toupper(sequence[i])));
    std::copy(f.begin(), f.end(), g.features.row(i).begin());
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || contacts.probs(i, j) >= tau) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

std::vector<std::pair<std::string, std::string>> read_sequences(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open sequence file " + path.string());
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  bool fasta = false;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      fasta = line[0] == '>';
      first = false;
    }
    if (fasta) {
      if (line[0] == '>') {
        std::string id = line.substr(1);
        const auto ws = id.find_first_of(" \t|");
        if (ws != std::string::npos) id.resize(ws);
        out.emplace_back(id, "");
      } else {
        if (out.empty()) throw FormatError("FASTA sequence before header in " + path.string());
        for (char c : line) {
          if (!std::isspace(static_cast<unsigned char>(c))) {
            out.back().second.push_back(static_cast<char>(std::toupper(c)));
          }
        }
      }
    } else {
      const auto tab = line.find('\t');
      if (tab == std::string::npos) throw FormatError("expected id<TAB>sequence: " + line);
      std::string seq = line.substr(tab + 1);
      std::transform(seq.begin(), seq.end(), seq.begin(),
                     [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
      out.emplace_back(line.substr(0, tab), seq);
    }
  }
  return out;
}

}  // namespace gig::protein
