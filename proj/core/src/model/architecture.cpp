// SPDX-License-Identifier: Apache-2.0

#include "gig/model/architecture.hpp"

#include <regex>

#include <json.hpp>

#include "gig/error.hpp"

namespace gig::model {

std::string Architecture::str() const {
  return "[" + std::string(nn::to_string(drug)) + "-" + std::string(nn::to_string(target)) + "][" +
         std::string(nn::to_string(main)) + "]";
}

Architecture parse_architecture(std::string_view text) {
  static const std::regex pattern(R"(\s*\[\s*(\w+)\s*-\s*(\w+)\s*\]\s*\[\s*(\w+)\s*\]\s*)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, pattern)) {
    throw FormatError("invalid architecture '" + std::string(text) + "': expected " +
                      std::string(kArchitectureGrammar));
  }
  try {
    return Architecture{nn::parse_layer_kind(m[1].str()), nn::parse_layer_kind(m[2].str()),
                        nn::parse_layer_kind(m[3].str())};
  } catch (const FormatError&) {
    throw FormatError("invalid architecture '" + std::string(text) + "': expected " +
                      std::string(kArchitectureGrammar));
  }
}

void GigConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ContractViolation("invalid configuration: " + what);
  };
  require(drug_layers >= 1, "drug encoder needs at least one layer");
  require(target_layers >= 1, "target encoder needs at least one layer");
  require(main_layers >= 2, "interaction graph network needs at least two layers");
  require(hidden_dim > 0 && embedding_dim > 0, "dimensions must be positive");
  require(heads >= 1, "at least one attention head");
  require(dropout >= 0.0 && dropout < 1.0, "dropout must lie in [0, 1)");
  require(lr >= 0.0, "learning rate must be non-negative");
  require(batch_size >= 1, "batch size must be positive");
  require(supervision_fraction >= 0.0 && supervision_fraction <= 1.0,
          "supervision fraction must lie in [0, 1]");
}

std::string config_to_json(const GigConfig& c) {
  nlohmann::ordered_json j;
  j["arch"] = c.arch.str();
  j["drug_layers"] = c.drug_layers;
  j["target_layers"] = c.target_layers;
  j["main_layers"] = c.main_layers;
  j["hidden_dim"] = c.hidden_dim;
  j["embedding_dim"] = c.embedding_dim;
  j["heads"] = c.heads;
  j["dropout"] = c.dropout;
  j["lr"] = c.lr;
  j["max_epochs"] = c.max_epochs;
  j["batch_size"] = c.batch_size;
  j["patience"] = c.patience;
  j["negative_warmup"] = c.negative_warmup;
  j["supervision_fraction"] = c.supervision_fraction;
  j["threshold"] = c.threshold;
  j["seed"] = c.seed;
  return j.dump(2);
}

GigConfig config_from_json(std::string_view text, GigConfig base) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("config: top level must be an object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "arch") {
        base.arch = parse_architecture(value.get<std::string>());
      } else if (key == "drug_layers") {
        base.drug_layers = value.get<std::size_t>();
      } else if (key == "target_layers") {
        base.target_layers = value.get<std::size_t>();
      } else if (key == "main_layers") {
        base.main_layers = value.get<std::size_t>();
      } else if (key == "hidden_dim") {
        base.hidden_dim = value.get<std::size_t>();
      } else if (key == "embedding_dim") {
        base.embedding_dim = value.get<std::size_t>();
      } else if (key == "heads") {
        base.heads = value.get<std::size_t>();
      } else if (key == "dropout") {
        base.dropout = value.get<double>();
      } else if (key == "lr") {
        base.lr = value.get<double>();
      } else if (key == "max_epochs") {
        base.max_epochs = value.get<std::size_t>();
      } else if (key == "batch_size") {
        base.batch_size = value.get<std::size_t>();
      } else if (key == "patience") {
        base.patience = value.get<std::size_t>();
      } else if (key == "negative_warmup") {
        base.negative_warmup = value.get<std::size_t>();
      } else if (key == "supervision_fraction") {
        base.supervision_fraction = value.get<double>();
      } else if (key == "threshold") {
        base.threshold = value.get<double>();
      } else if (key == "seed") {
        base.seed = value.get<std::uint64_t>();
      } else {
        throw FormatError("config: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  return base;
}

}  // namespace gig::model
