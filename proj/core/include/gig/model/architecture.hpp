// SPDX-License-Identifier: Apache-2.0

#ifndef GIG_MODEL_ARCHITECTURE_HPP_
#define GIG_MODEL_ARCHITECTURE_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gig/nn/layers.hpp"

namespace gig::model {

inline constexpr std::string_view kArchitectureGrammar =
    "[X-Y][Z] where X (drug encoder), Y (target encoder) and Z (interaction graph) are GCN or GAT";

struct Architecture {
  nn::LayerKind drug = nn::LayerKind::kGcn;
  nn::LayerKind target = nn::LayerKind::kGcn;
  nn::LayerKind main = nn::LayerKind::kGat;

  std::string str() const;
  friend bool operator==(const Architecture&, const Architecture&) = default;
};

// Throws FormatError naming the grammar on malformed input.
Architecture parse_architecture(std::string_view text);

struct GigConfig {
  Architecture arch;
  std::size_t drug_layers = 3;
  std::size_t target_layers = 3;
  std::size_t main_layers = 2;
  std::size_t hidden_dim = 128;
  std::size_t embedding_dim = 128;
  std::size_t heads = 1;
  double dropout = 0.2;
  double lr = 1e-4;
  std::size_t max_epochs = 1000;
  std::size_t batch_size = 64;
  std::size_t patience = 50;  // 0 disables early stopping
  std::size_t negative_warmup = 0;  // epochs of uniform negatives before hard mining
  // Share of training positives withheld from message passing each epoch and
  // used as that epoch's supervised positives; 0 supervises on the full graph.
  double supervision_fraction = 0.0;
  double threshold = 0.5;
  std::uint64_t seed = 0;

  // Throws ContractViolation on out-of-range values.
  void validate() const;

  std::vector<nn::LayerKind> drug_kinds() const { return std::vector<nn::LayerKind>(drug_layers, arch.drug); }
  std::vector<nn::LayerKind> target_kinds() const { return std::vector<nn::LayerKind>(target_layers, arch.target); }
  std::vector<nn::LayerKind> main_kinds() const { return std::vector<nn::LayerKind>(main_layers, arch.main); }
};

std::string config_to_json(const GigConfig& config);
// Keys absent from `text` keep their value from `base`; unknown keys are rejected.
GigConfig config_from_json(std::string_view text, GigConfig base = {});

}  // namespace gig::model

#endif  // GIG_MODEL_ARCHITECTURE_HPP_
