// SPDX-License-Identifier: Apache-2.0

#include "gig/data/cache.hpp"

#include <cstdio>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "gig/ad/container.hpp"
#include "gig/data/hash.hpp"
#include "gig/error.hpp"

namespace gig::data {

namespace {

using nlohmann::ordered_json;

constexpr const char* kManifest = "manifest.json";

std::string tau_text(double tau) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", tau);
  return buf;
}

void write_entities(const std::filesystem::path& dir, const std::string& stem, const EntityGraphs& e) {
  std::vector<ad::NamedArray> arrays;
  arrays.reserve(2 * e.graphs.size());
  for (std::size_t k = 0; k < e.graphs.size(); ++k) {
    const auto& g = e.graphs[k];
    arrays.push_back({"features/" + std::to_string(k), {g.features.rows(), g.features.cols()},
                      g.features.storage()});
    std::vector<double> edges;
    edges.reserve(2 * g.edges.size());
    for (const auto& [a, b] : g.edges) {
      edges.push_back(static_cast<double>(a));
      edges.push_back(static_cast<double>(b));
    }
    arrays.push_back({"edges/" + std::to_string(k), {g.edges.size(), 2}, std::move(edges)});
  }
  ad::write_container(dir / (stem + ".gckpt"), arrays);

  ordered_json j;
  j["ids"] = e.ids;
  j["raw_index"] = e.raw_index;
  j["dropped"] = ordered_json::array();
  for (const auto& d : e.dropped) j["dropped"].push_back({{"kind", d.kind}, {"id", d.id}, {"reason", d.reason}});
  ad::write_file_atomically(dir / (stem + ".json"), j.dump(2));
}

EntityGraphs read_entities(const std::filesystem::path& dir, const std::string& stem) {
  EntityGraphs e;
  const auto j = nlohmann::json::parse(read_file(dir / (stem + ".json")));
  e.ids = j.at("ids").get<std::vector<std::string>>();
  e.raw_index = j.at("raw_index").get<std::vector<std::size_t>>();
  for (const auto& d : j.at("dropped")) {
    e.dropped.push_back({d.at("kind").get<std::string>(), d.at("id").get<std::string>(),
                         d.at("reason").get<std::string>()});
  }
  const auto arrays = ad::read_container(dir / (stem + ".gckpt"));
  if (arrays.size() != 2 * e.ids.size()) throw DataError("cache " + stem + ": entry count mismatch");
  for (std::size_t k = 0; k < e.ids.size(); ++k) {
    const auto& f = arrays[2 * k];
    const auto& ed = arrays[2 * k + 1];
    if (f.shape.size() != 2 || ed.shape.size() != 2) throw DataError("cache " + stem + ": bad array rank");
    nn::FeatureGraph g;
    g.features = Matrix(f.shape[0], f.shape[1], f.data);
    for (std::size_t r = 0; r < ed.shape[0]; ++r) {
      g.edges.emplace_back(static_cast<std::size_t>(ed.data[2 * r]),
                           static_cast<std::size_t>(ed.data[2 * r + 1]));
    }
    e.graphs.push_back(std::move(g));
  }
  return e;
}

void write_interactions(const std::filesystem::path& dir, const model::DtiGraph& g) {
  std::vector<double> edges;
  for (const auto& [i, j] : g.positive_edges) {
    edges.push_back(static_cast<double>(i));
    edges.push_back(static_cast<double>(j));
  }
  const std::vector<ad::NamedArray> arrays{
      {"dims", {1, 2}, {static_cast<double>(g.num_drugs), static_cast<double>(g.num_targets)}},
      {"positives", {g.positive_edges.size(), 2}, std::move(edges)}};
  ad::write_container(dir / "interactions.gckpt", arrays);
}

model::DtiGraph read_interactions(const std::filesystem::path& dir) {
  const auto arrays = ad::read_container(dir / "interactions.gckpt");
  if (arrays.size() != 2) throw DataError("cache: malformed interactions file");
  std::vector<model::Pair> edges;
  for (std::size_t r = 0; r < arrays[1].shape[0]; ++r) {
    edges.emplace_back(static_cast<std::size_t>(arrays[1].data[2 * r]),
                       static_cast<std::size_t>(arrays[1].data[2 * r + 1]));
  }
  return model::DtiGraph::make(static_cast<std::size_t>(arrays[0].data[0]),
                               static_cast<std::size_t>(arrays[0].data[1]), std::move(edges));
}

nlohmann::json read_manifest(const std::filesystem::path& dir) {
  const auto path = dir / kManifest;
  if (!std::filesystem::exists(path)) return nlohmann::json::object();
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const std::exception&) {
    return nlohmann::json::object();
  }
}

bool files_verify(const std::filesystem::path& dir, const nlohmann::json& manifest,
                  std::initializer_list<const char*> names) {
  if (!manifest.contains("files")) return false;
  for (const char* name : names) {
    const auto p = dir / name;
    if (!manifest["files"].contains(name) || !std::filesystem::exists(p)) return false;
    if (sha256_file(p) != manifest["files"][name].get<std::string>()) return false;
  }
  return true;
}

std::string json_string(const nlohmann::json& j, const char* key) {
  return j.contains(key) && j[key].is_string() ? j[key].get<std::string>() : std::string();
}

}  // namespace

CacheStatus prepare_cache(const std::filesystem::path& raw_dir,
                          const std::filesystem::path& cache_dir, double tau) {
  const RawDataset raw = load_raw(raw_dir);
  std::filesystem::create_directories(cache_dir);

  const std::string version = "v" + std::to_string(kFeatureVersion);
  const std::string drug_key = sha256_hex(version + "|drugs|" + sha256_file(raw_dir / kDrugsFile));
  std::string target_material = version + "|targets|tau=" + tau_text(tau) + "|" +
                                sha256_file(raw_dir / kTargetsFile);
  for (const auto& id : raw.target_ids) {
    const auto p = find_contact_map(raw.contact_dir, id);
    target_material += "|" + id + ":" + (p.empty() ? std::string("none") : sha256_file(p));
  }
  const std::string target_key = sha256_hex(target_material);

  const nlohmann::json old = read_manifest(cache_dir);
  CacheStatus status;

  EntityGraphs drugs;
  if (json_string(old, "drug_key") == drug_key &&
      files_verify(cache_dir, old, {"drugs.gckpt", "drugs.json"})) {
    spdlog::info("cache hit: drug graphs");
    drugs = read_entities(cache_dir, "drugs");
  } else {
    if (old.contains("drug_key")) spdlog::warn("drug graph cache stale or corrupt; rebuilding");
    drugs = build_drug_graphs(raw);
    write_entities(cache_dir, "drugs", drugs);
    status.drugs_rebuilt = true;
  }

  EntityGraphs targets;
  if (json_string(old, "target_key") == target_key &&
      files_verify(cache_dir, old, {"targets.gckpt", "targets.json"})) {
    spdlog::info("cache hit: target graphs");
    targets = read_entities(cache_dir, "targets");
  } else {
    if (old.contains("target_key")) spdlog::warn("target graph cache stale or corrupt; rebuilding");
    targets = build_target_graphs(raw, tau);
    write_entities(cache_dir, "targets", targets);
    status.targets_rebuilt = true;
  }
  for (const auto* side : {&drugs, &targets}) {
    for (const auto& d : side->dropped) spdlog::warn("dropped {} {}: {}", d.kind, d.id, d.reason);
  }

  GraphDataset data{std::move(drugs), std::move(targets), {}};
  data.interactions = interactions_between(raw, data.drugs, data.targets);
  write_interactions(cache_dir, data.interactions);

  ordered_json manifest;
  manifest["feature_version"] = kFeatureVersion;
  manifest["tau"] = tau;
  manifest["drug_key"] = drug_key;
  manifest["target_key"] = target_key;
  manifest["interactions_key"] =
      sha256_hex(sha256_file(raw_dir / kMatrixFile) + "|" + drug_key + "|" + target_key);
  ordered_json files = ordered_json::object();
  for (const char* name : {"drugs.gckpt", "drugs.json", "targets.gckpt", "targets.json", "interactions.gckpt"}) {
    files[name] = sha256_file(cache_dir / name);
  }
  manifest["files"] = files;
  ad::write_file_atomically(cache_dir / kManifest, manifest.dump(2));

  status.summary = summarize(data);
  return status;
}

GraphDataset load_cache(const std::filesystem::path& cache_dir) {
  const auto path = cache_dir / kManifest;
  if (!std::filesystem::exists(path)) {
    throw DataError("no graph cache in " + cache_dir.string() + "; run 'gig prepare' first");
  }
  const nlohmann::json manifest = read_manifest(cache_dir);
  if (!manifest.contains("feature_version") || manifest["feature_version"] != kFeatureVersion) {
    throw DataError("graph cache in " + cache_dir.string() + " has an old feature version; rerun 'gig prepare'");
  }
  if (!manifest.contains("files")) throw DataError("graph cache manifest lists no files");
  for (const auto& [name, sum] : manifest["files"].items()) {
    const auto p = cache_dir / name;
    if (!std::filesystem::exists(p) || sha256_file(p) != sum.get<std::string>()) {
      throw DataError("cache file " + p.string() + " failed its checksum; rerun 'gig prepare'");
    }
  }
  GraphDataset data;
  data.drugs = read_entities(cache_dir, "drugs");
  data.targets = read_entities(cache_dir, "targets");
  data.interactions = read_interactions(cache_dir);
  if (data.interactions.num_drugs != data.drugs.ids.size() ||
      data.interactions.num_targets != data.targets.ids.size()) {
    throw DataError("graph cache is inconsistent; rerun 'gig prepare'");
  }
  return data;
}

std::string cache_key(const std::filesystem::path& cache_dir) {
  const nlohmann::json m = read_manifest(cache_dir);
  return sha256_hex(json_string(m, "drug_key") + "|" + json_string(m, "target_key") + "|" +
                    json_string(m, "interactions_key"));
}

}  // namespace gig::data
