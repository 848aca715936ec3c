// SPDX-License-Identifier: Apache-2.0

#ifndef GIG_DATA_DATASET_HPP_
#define GIG_DATA_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gig/model/dti_graph.hpp"
#include "gig/model/trainer.hpp"
#include "gig/nn/graph.hpp"

namespace gig::data {

// raw/ layout.
inline constexpr std::string_view kMatrixFile = "mat_drug_protein.txt";
inline constexpr std::string_view kDrugsFile = "drugs.tsv";
inline constexpr std::string_view kTargetsFile = "targets.fasta";
inline constexpr std::string_view kContactDir = "contact_maps";

struct RawDataset {
  std::vector<std::string> drug_ids;
  std::vector<std::string> smiles;
  std::vector<std::string> target_ids;
  std::vector<std::string> sequences;
  std::vector<std::vector<std::uint8_t>> interactions;  // drugs x targets, 0/1
  std::filesystem::path contact_dir;

  std::size_t num_interactions() const;
};

// Reads and validates raw/. Throws DataError on missing files, dimension
// mismatch or an empty matrix, FormatError on malformed content.
RawDataset load_raw(const std::filesystem::path& raw_dir);

// Contact-map file of a target: <id>.txt, <id>.gckpt, <id>.bin or <id>; empty if none.
std::filesystem::path find_contact_map(const std::filesystem::path& contact_dir,
                                       std::string_view target_id);

struct DroppedEntity {
  std::string kind;  // "drug" or "target"
  std::string id;
  std::string reason;
};

struct EntityGraphs {
  std::vector<std::string> ids;
  std::vector<nn::FeatureGraph> graphs;
  std::vector<std::size_t> raw_index;  // position in the raw lists
  std::vector<DroppedEntity> dropped;
};

EntityGraphs build_drug_graphs(const RawDataset& raw);
EntityGraphs build_target_graphs(const RawDataset& raw, double tau);

// Everything a run needs: kept entities and their positives.
struct GraphDataset {
  EntityGraphs drugs;
  EntityGraphs targets;
  model::DtiGraph interactions;
};

model::DtiGraph interactions_between(const RawDataset& raw, const EntityGraphs& drugs,
                                     const EntityGraphs& targets);

struct DatasetSummary {
  std::size_t drugs = 0;
  std::size_t targets = 0;
  std::size_t interactions = 0;
  double mean_drug_degree = 0.0;
  double mean_target_degree = 0.0;
  std::size_t dropped = 0;

  std::string str() const;
};

DatasetSummary summarize(const GraphDataset& data);

struct SplitRatio {
  unsigned train = 7;
  unsigned val = 1;
  unsigned test = 2;

  std::string str() const;
};

// "a:b:c" with parts summing to 10.
SplitRatio parse_split_ratio(std::string_view text);

struct Split {
  std::vector<model::Pair> train;
  std::vector<model::Pair> val;
  std::vector<model::Pair> test;
  std::vector<model::Pair> val_negatives;
  std::vector<model::Pair> test_negatives;
};

// Shuffles the positives with the seed and partitions them: val and test take
// floor(P * part / 10) each, train the remainder. Val/test negatives are drawn
// uniformly without replacement from the non-edges, one per positive.
Split make_splits(const model::DtiGraph& all, SplitRatio ratio, std::uint64_t seed);

model::TrainingData to_training_data(const Split& split, std::size_t num_drugs,
                                     std::size_t num_targets);

}  // namespace gig::data

#endif  // GIG_DATA_DATASET_HPP_
