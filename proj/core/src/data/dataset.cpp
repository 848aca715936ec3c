// SPDX-License-Identifier: Apache-2.0

#include "gig/data/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <regex>
#include <sstream>

#include "gig/chem/smiles.hpp"
#include "gig/error.hpp"
#include "gig/protein/target_graph.hpp"
#include "gig/rng.hpp"

namespace gig::data {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::vector<std::uint8_t>> read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("missing interaction matrix " + path.string());
  std::vector<std::vector<std::uint8_t>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::istringstream ss(line);
    std::vector<std::uint8_t> row;
    std::string cell;
    while (ss >> cell) {
      if (cell == "0" || cell == "0.0") {
        row.push_back(0);
      } else if (cell == "1" || cell == "1.0") {
        row.push_back(1);
      } else {
        throw FormatError(path.string() + ":" + std::to_string(line_no) + ": entry '" + cell +
                          "' is not 0 or 1");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": row has " +
                      std::to_string(row.size()) + " columns, expected " +
                      std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.front().empty()) throw DataError("empty interaction matrix " + path.string());
  return rows;
}

void read_drugs(const std::filesystem::path& path, RawDataset& raw) {
  std::ifstream in(path);
  if (!in) throw DataError("missing drug table " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": expected id<TAB>SMILES");
    }
    std::string id = trim(line.substr(0, tab));
    std::string smiles = trim(line.substr(tab + 1));
    if (line_no == 1) {
      std::string lower = id;
      std::transform(lower.begin(), lower.end(), lower.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      if (lower == "id" || lower == "drug_id") continue;
    }
    raw.drug_ids.push_back(std::move(id));
    raw.smiles.push_back(std::move(smiles));
  }
}

}  // namespace

std::size_t RawDataset::num_interactions() const {
  std::size_t n = 0;
  for (const auto& row : interactions) n += static_cast<std::size_t>(std::count(row.begin(), row.end(), 1));
  return n;
}

RawDataset load_raw(const std::filesystem::path& raw_dir) {
  RawDataset raw;
  read_drugs(raw_dir / kDrugsFile, raw);
  const auto targets_path = raw_dir / kTargetsFile;
  if (!std::filesystem::exists(targets_path)) throw DataError("missing target sequences " + targets_path.string());
  for (auto& [id, seq] : protein::read_sequences(targets_path)) {
    raw.target_ids.push_back(std::move(id));
    raw.sequences.push_back(std::move(seq));
  }
  raw.interactions = read_matrix(raw_dir / kMatrixFile);
  raw.contact_dir = raw_dir / kContactDir;

  if (raw.interactions.size() != raw.drug_ids.size() ||
      raw.interactions.front().size() != raw.target_ids.size()) {
    throw DataError("interaction matrix is " + std::to_string(raw.interactions.size()) + "x" +
                    std::to_string(raw.interactions.front().size()) + " but there are " +
                    std::to_string(raw.drug_ids.size()) + " drugs and " +
                    std::to_string(raw.target_ids.size()) + " targets");
  }
  return raw;
}

std::filesystem::path find_contact_map(const std::filesystem::path& contact_dir,
                                       std::string_view target_id) {
  for (const char* ext : {".txt", ".gckpt", ".bin", ""}) {
    const auto p = contact_dir / (std::string(target_id) + ext);
    if (std::filesystem::is_regular_file(p)) return p;
  }
  return {};
}

EntityGraphs build_drug_graphs(const RawDataset& raw) {
  EntityGraphs out;
  for (std::size_t i = 0; i < raw.drug_ids.size(); ++i) {
    try {
      chem::DrugGraph g = chem::build_drug_graph(raw.smiles[i]);
      if (g.atoms.empty()) throw DataError("molecule has no atoms");
      nn::FeatureGraph fg;
      for (const auto& b : g.bonds) fg.edges.emplace_back(b.a, b.b);
      fg.features = std::move(g.features);
      out.ids.push_back(raw.drug_ids[i]);
      out.graphs.push_back(std::move(fg));
      out.raw_index.push_back(i);
    } catch (const std::exception& e) {
      out.dropped.push_back({"drug", raw.drug_ids[i], e.what()});
    }
  }
  return out;
}

EntityGraphs build_target_graphs(const RawDataset& raw, double tau) {
  EntityGraphs out;
  for (std::size_t j = 0; j < raw.target_ids.size(); ++j) {
    const auto path = find_contact_map(raw.contact_dir, raw.target_ids[j]);
    if (path.empty()) {
      out.dropped.push_back({"target", raw.target_ids[j], "no contact map"});
      continue;
    }
    try {
      const protein::ContactMap map = protein::load_contact_map(path);
      protein::TargetGraph g = protein::build_target_graph(raw.sequences[j], map, tau, raw.target_ids[j]);
      nn::FeatureGraph fg;
      fg.edges = std::move(g.edges);
      fg.features = std::move(g.features);
      out.ids.push_back(raw.target_ids[j]);
      out.graphs.push_back(std::move(fg));
      out.raw_index.push_back(j);
    } catch (const std::exception& e) {
      out.dropped.push_back({"target", raw.target_ids[j], e.what()});
    }
  }
  return out;
}

model::DtiGraph interactions_between(const RawDataset& raw, const EntityGraphs& drugs,
                                     const EntityGraphs& targets) {
  std::vector<model::Pair> edges;
  for (std::size_t i = 0; i < drugs.raw_index.size(); ++i) {
    const auto& row = raw.interactions[drugs.raw_index[i]];
    for (std::size_t j = 0; j < targets.raw_index.size(); ++j) {
      if (row[targets.raw_index[j]]) edges.emplace_back(i, j);
    }
  }
  return model::DtiGraph::make(drugs.ids.size(), targets.ids.size(), std::move(edges));
}

std::string DatasetSummary::str() const {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "drugs=%zu targets=%zu interactions=%zu mean_drug_degree=%.2f "
                "mean_target_degree=%.2f dropped=%zu",
                drugs, targets, interactions, mean_drug_degree, mean_target_degree, dropped);
  return buf;
}

DatasetSummary summarize(const GraphDataset& data) {
  DatasetSummary s;
  s.drugs = data.drugs.ids.size();
  s.targets = data.targets.ids.size();
  s.interactions = data.interactions.positive_edges.size();
  if (s.drugs) s.mean_drug_degree = static_cast<double>(s.interactions) / static_cast<double>(s.drugs);
  if (s.targets) s.mean_target_degree = static_cast<double>(s.interactions) / static_cast<double>(s.targets);
  s.dropped = data.drugs.dropped.size() + data.targets.dropped.size();
  return s;
}

std::string SplitRatio::str() const {
  return std::to_string(train) + ":" + std::to_string(val) + ":" + std::to_string(test);
}

SplitRatio parse_split_ratio(std::string_view text) {
  static const std::regex pattern(R"((\d{1,2}):(\d{1,2}):(\d{1,2}))");
  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, pattern)) {
    const SplitRatio r{static_cast<unsigned>(std::stoul(m[1])), static_cast<unsigned>(std::stoul(m[2])),
                       static_cast<unsigned>(std::stoul(m[3]))};
    if (r.train > 0 && r.train + r.val + r.test == 10) return r;
  }
  throw FormatError("invalid split '" + s + "': expected train:val:test summing to 10, e.g. 7:1:2");
}

Split make_splits(const model::DtiGraph& all, SplitRatio ratio, std::uint64_t seed) {
  if (ratio.train + ratio.val + ratio.test != 10) throw ContractViolation("split parts must sum to 10");
  const std::size_t total = all.positive_edges.size();
  if (total < 10) throw DataError("at least 10 interactions are needed to split, found " + std::to_string(total));

  Rng rng(seed);
  std::vector<model::Pair> positives = all.positive_edges;
  for (std::size_t i = positives.size(); i > 1; --i) {
    std::swap(positives[i - 1], positives[rng.below(i)]);
  }
  const std::size_t n_val = total * ratio.val / 10;
  const std::size_t n_test = total * ratio.test / 10;

  Split s;
  s.val.assign(positives.begin(), positives.begin() + static_cast<std::ptrdiff_t>(n_val));
  s.test.assign(positives.begin() + static_cast<std::ptrdiff_t>(n_val),
                positives.begin() + static_cast<std::ptrdiff_t>(n_val + n_test));
  s.train.assign(positives.begin() + static_cast<std::ptrdiff_t>(n_val + n_test), positives.end());

  std::vector<model::Pair> non_edges;
  for (std::size_t i = 0; i < all.num_drugs; ++i) {
    for (std::size_t j = 0; j < all.num_targets; ++j) {
      if (!all.contains({i, j})) non_edges.emplace_back(i, j);
    }
  }
  const std::size_t needed = n_val + n_test;
  if (non_edges.size() < needed) {
    throw DataError("not enough non-interacting pairs for evaluation negatives");
  }
  for (std::size_t k = 0; k < needed; ++k) {
    std::swap(non_edges[k], non_edges[k + rng.below(non_edges.size() - k)]);
  }
  s.val_negatives.assign(non_edges.begin(), non_edges.begin() + static_cast<std::ptrdiff_t>(n_val));
  s.test_negatives.assign(non_edges.begin() + static_cast<std::ptrdiff_t>(n_val),
                          non_edges.begin() + static_cast<std::ptrdiff_t>(needed));
  return s;
}

model::TrainingData to_training_data(const Split& split, std::size_t num_drugs,
                                     std::size_t num_targets) {
  model::TrainingData d;
  d.train = model::DtiGraph::make(num_drugs, num_targets, split.train);
  auto labeled = [](const std::vector<model::Pair>& pos, const std::vector<model::Pair>& neg) {
    model::LabeledPairs lp;
    lp.pairs = pos;
    lp.pairs.insert(lp.pairs.end(), neg.begin(), neg.end());
    lp.labels.assign(pos.size(), 1.0);
    lp.labels.resize(pos.size() + neg.size(), 0.0);
    return lp;
  };
  d.val = labeled(split.val, split.val_negatives);
  d.test = labeled(split.test, split.test_negatives);
  return d;
}

}  // namespace gig::data
