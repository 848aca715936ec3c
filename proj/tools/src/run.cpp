// SPDX-License-Identifier: Apache-2.0

#include "gig/cli/run.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "gig/ad/container.hpp"
#include "gig/ad/parameters.hpp"
#include "gig/baselines/baselines.hpp"
#include "gig/data/cache.hpp"
#include "gig/data/hash.hpp"
#include "gig/error.hpp"

#ifndef GIG_SOURCE_VERSION
#define GIG_SOURCE_VERSION "unknown"
#endif

namespace gig::cli {

namespace {

constexpr std::uint64_t kRandomFeatureStream = 101;
constexpr std::uint64_t kNode2VecStream = 202;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::ordered_json metrics_json(const metrics::MetricsReport& r) {
  return nlohmann::ordered_json::parse(metrics::to_json(r));
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::kGig: return "gig";
    case Method::kDtiGcn: return "dti-gcn";
    case Method::kDtiGat: return "dti-gat";
    case Method::kN2vGcn: return "n2v-gcn";
    case Method::kN2vGat: return "n2v-gat";
  }
  return "gig";
}

Method parse_method(std::string_view text) {
  for (Method m : {Method::kGig, Method::kDtiGcn, Method::kDtiGat, Method::kN2vGcn, Method::kN2vGat}) {
    if (text == to_string(m)) return m;
  }
  throw FormatError("unknown method '" + std::string(text) +
                    "' (expected gig, dti-gcn, dti-gat, n2v-gcn or n2v-gat)");
}

void RunSpec::validate() const {
  model.validate();
  data::parse_split_ratio(split);
  const bool n2v = method == Method::kN2vGcn || method == Method::kN2vGat;
  if (n2v && n2v_epochs != 5 && n2v_epochs != 10) {
    throw ContractViolation("Node2Vec baselines need --n2v-epochs 5 or 10");
  }
  if (!n2v && n2v_epochs != 0) throw ContractViolation("--n2v-epochs applies only to n2v-gcn and n2v-gat");
  if (method == Method::kDtiGcn || method == Method::kN2vGcn) {
    if (model.arch.main != nn::LayerKind::kGcn) throw ContractViolation("GCN baselines need a GCN interaction graph");
  }
  if (method == Method::kDtiGat || method == Method::kN2vGat) {
    if (model.arch.main != nn::LayerKind::kGat) throw ContractViolation("GAT baselines need a GAT interaction graph");
  }
}

std::string spec_to_json(const RunSpec& spec) {
  nlohmann::ordered_json j;
  j["method"] = std::string(to_string(spec.method));
  j["n2v_epochs"] = spec.n2v_epochs;
  j["cache"] = spec.cache.string();
  j["split"] = spec.split;
  const auto model = nlohmann::ordered_json::parse(model::config_to_json(spec.model));
  for (const auto& [k, v] : model.items()) j[k] = v;
  return j.dump(2);
}

RunSpec spec_from_json(std::string_view text, RunSpec base) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("config: top level must be an object");
  nlohmann::json model_keys = nlohmann::json::object();
  try {
    for (auto& [key, value] : j.items()) {
      if (key == "method") {
        base.method = parse_method(value.get<std::string>());
      } else if (key == "n2v_epochs") {
        base.n2v_epochs = value.get<std::size_t>();
      } else if (key == "cache") {
        base.cache = value.get<std::string>();
      } else if (key == "split") {
        base.split = value.get<std::string>();
      } else {
        model_keys[key] = value;
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  base.model = model::config_from_json(model_keys.dump(), base.model);
  return base;
}

std::string method_label(const RunSpec& spec) {
  switch (spec.method) {
    case Method::kGig: return "GiG " + spec.model.arch.str();
    case Method::kDtiGcn: return "DTI-GCN";
    case Method::kDtiGat: return "DTI-GAT";
    case Method::kN2vGcn: return "Node2Vec-" + std::to_string(spec.n2v_epochs) + "-enhanced GCN";
    case Method::kN2vGat: return "Node2Vec-" + std::to_string(spec.n2v_epochs) + "-enhanced GAT";
  }
  return {};
}

std::string default_run_id(const RunSpec& spec) {
  std::string id(to_string(spec.method));
  if (spec.method == Method::kGig) {
    id += "_" + std::string(nn::to_string(spec.model.arch.drug)) + "-" +
          std::string(nn::to_string(spec.model.arch.target)) + "-" +
          std::string(nn::to_string(spec.model.arch.main));
  }
  if (spec.n2v_epochs) id += "_e" + std::to_string(spec.n2v_epochs);
  std::string split = spec.split;
  for (char& c : split) {
    if (c == ':') c = '-';
  }
  id += "_" + split + "_s" + std::to_string(spec.model.seed);
  return id;
}

model::DtiModel build_model(const RunSpec& spec, const data::GraphDataset& data, Rng& rng,
                            const std::filesystem::path& n2v_cache) {
  const std::size_t m = data.drugs.graphs.size();
  const std::size_t n = data.targets.graphs.size();
  switch (spec.method) {
    case Method::kGig:
      return model::DtiModel::hierarchical(spec.model, data.drugs.graphs, data.targets.graphs, rng);
    case Method::kDtiGcn:
    case Method::kDtiGat: {
      baselines::RandomFeatureConfig rf{spec.model.embedding_dim,
                                        derive_seed(spec.model.seed, kRandomFeatureStream)};
      return model::DtiModel::with_features(spec.model, baselines::random_meta_features(m, n, rf), rng);
    }
    case Method::kN2vGcn:
    case Method::kN2vGat: {
      baselines::Node2VecConfig nc;
      nc.dim = spec.model.embedding_dim;
      nc.epochs = spec.n2v_epochs;
      auto features = baselines::node2vec_meta_features(
          data.drugs.graphs, data.targets.graphs, nc, derive_seed(spec.model.seed, kNode2VecStream),
          n2v_cache);
      return model::DtiModel::with_features(spec.model, std::move(features), rng);
    }
  }
  throw ContractViolation("unhandled method");
}

model::TrainingData training_data(const RunSpec& spec, const data::GraphDataset& data) {
  const auto split = data::make_splits(data.interactions, data::parse_split_ratio(spec.split), spec.model.seed);
  return data::to_training_data(split, data.interactions.num_drugs, data.interactions.num_targets);
}

namespace {

std::filesystem::path node2vec_cache_dir(const RunSpec& spec) {
  if (spec.cache.empty() || !std::filesystem::exists(spec.cache / "manifest.json")) return {};
  return spec.cache / "node2vec" / data::cache_key(spec.cache).substr(0, 16);
}

}  // namespace

RunArtifacts execute_run(const RunSpec& spec, const data::GraphDataset& data,
                         const std::filesystem::path& run_dir) {
  spec.validate();
  std::filesystem::create_directories(run_dir);
  const std::string started = utc_now();
  ad::write_file_atomically(run_dir / "config.json", spec_to_json(spec));

  Rng rng(spec.model.seed);
  model::DtiModel model = build_model(spec, data, rng, node2vec_cache_dir(spec));
  const model::TrainingData td = training_data(spec, data);
  model::Trainer trainer(model, td, rng);

  RunArtifacts out;
  out.dir = run_dir;
  out.fit = trainer.fit(run_dir / "log.csv", [&](const model::EpochRecord& r) {
    if (r.epoch % 50 == 0 || r.epoch == 1) {
      spdlog::info("epoch {} loss {:.6f} val_auc {}", r.epoch, r.loss,
                   r.val.roc_auc ? fmt(*r.val.roc_auc) : std::string("undefined"));
    }
  });
  ad::save_checkpoint(run_dir / "checkpoint.gckpt", model.params());

  out.val = trainer.evaluate(td.val);
  const std::vector<double> test_scores = model.score(td.test.pairs);
  out.test = metrics::evaluate(test_scores, td.test.labels, spec.model.threshold);

  nlohmann::ordered_json report;
  report["run_id"] = run_dir.filename().string();
  report["method"] = method_label(spec);
  report["split"] = spec.split;
  report["seed"] = spec.model.seed;
  report["epochs_run"] = out.fit.log.size();
  report["best_epoch"] = out.fit.best_epoch;
  report["stopped_early"] = out.fit.stopped_early;
  report["val"] = metrics_json(out.val);
  report["test"] = metrics_json(out.test);
  ad::write_file_atomically(run_dir / "report.json", report.dump(2));

  std::ostringstream scores;
  scores << "drug_id,target_id,label,score\n";
  for (std::size_t k = 0; k < td.test.pairs.size(); ++k) {
    const auto& [i, j] = td.test.pairs[k];
    scores << data.drugs.ids[i] << ',' << data.targets.ids[j] << ','
           << static_cast<int>(td.test.labels[k]) << ',' << fmt(test_scores[k]) << '\n';
  }
  ad::write_file_atomically(run_dir / "scores.csv", scores.str());

  nlohmann::ordered_json manifest;
  manifest["run_id"] = run_dir.filename().string();
  manifest["code_version"] = GIG_SOURCE_VERSION;
  manifest["config_sha256"] = data::sha256_file(run_dir / "config.json");
  manifest["seed"] = spec.model.seed;
  manifest["started"] = started;
  manifest["finished"] = utc_now();
  ad::write_file_atomically(run_dir / "run.json", manifest.dump(2));
  return out;
}

std::string export_embeddings(const std::filesystem::path& run_dir) {
  const RunSpec spec = spec_from_json(data::read_file(run_dir / "config.json"));
  const data::GraphDataset data = data::load_cache(spec.cache);
  Rng rng(spec.model.seed);
  model::DtiModel model = build_model(spec, data, rng, node2vec_cache_dir(spec));
  ad::load_checkpoint(run_dir / "checkpoint.gckpt", model.params());
  model.set_interactions(training_data(spec, data).train);
  const model::MainGraphState e = model.embed();

  std::ostringstream out;
  out << "node_kind,id";
  for (std::size_t k = 0; k < e.drugs.cols(); ++k) out << ",e_" << k;
  out << '\n';
  auto rows = [&](const char* kind, const Matrix& m, const std::vector<std::string>& ids) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      out << kind << ',' << ids[r];
      for (double v : m.row(r)) out << ',' << fmt(v);
      out << '\n';
    }
  };
  rows("drug", e.drugs, data.drugs.ids);
  rows("target", e.targets, data.targets.ids);
  return out.str();
}

}  // namespace gig::cli
