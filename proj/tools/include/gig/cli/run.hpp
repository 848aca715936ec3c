// SPDX-License-Identifier: Apache-2.0

#ifndef GIG_CLI_RUN_HPP_
#define GIG_CLI_RUN_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "gig/data/dataset.hpp"
#include "gig/metrics/metrics.hpp"
#include "gig/model/architecture.hpp"
#include "gig/model/dti_model.hpp"
#include "gig/model/trainer.hpp"

namespace gig::cli {

enum class Method { kGig, kDtiGcn, kDtiGat, kN2vGcn, kN2vGat };

std::string_view to_string(Method m) noexcept;
// Throws FormatError listing the valid kinds.
Method parse_method(std::string_view text);

// Everything that determines a run. Persisted as config.json.
struct RunSpec {
  Method method = Method::kGig;
  std::size_t n2v_epochs = 0;  // 5 or 10 for Node2Vec kinds, 0 otherwise
  std::filesystem::path cache;
  std::string split = "7:1:2";
  model::GigConfig model;

  // Throws ContractViolation on inconsistent combinations.
  void validate() const;
};

std::string spec_to_json(const RunSpec& spec);
// Keys absent from `text` keep their value from `base`.
RunSpec spec_from_json(std::string_view text, RunSpec base = {});

// Row label in reports, e.g. "GiG [GCN-GCN][GAT]" or "Node2Vec-5-enhanced GCN".
std::string method_label(const RunSpec& spec);
std::string default_run_id(const RunSpec& spec);

struct RunArtifacts {
  std::filesystem::path dir;
  model::FitResult fit;
  metrics::MetricsReport val;
  metrics::MetricsReport test;
};

// Builds the model for `spec` (including meta features for baselines), with
// parameters initialised from the spec's seed.
model::DtiModel build_model(const RunSpec& spec, const data::GraphDataset& data, Rng& rng,
                            const std::filesystem::path& n2v_cache = {});

model::TrainingData training_data(const RunSpec& spec, const data::GraphDataset& data);

// Trains, evaluates and writes config.json, log.csv, checkpoint.gckpt,
// report.json, scores.csv and run.json into run_dir.
RunArtifacts execute_run(const RunSpec& spec, const data::GraphDataset& data,
                         const std::filesystem::path& run_dir);

// Final embeddings of a finished run as CSV (node_kind,id,e_0..e_{d-1}).
std::string export_embeddings(const std::filesystem::path& run_dir);

}  // namespace gig::cli

#endif  // GIG_CLI_RUN_HPP_
