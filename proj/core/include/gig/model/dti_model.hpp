// SPDX-License-Identifier: Apache-2.0

#ifndef GIG_MODEL_DTI_MODEL_HPP_
#define GIG_MODEL_DTI_MODEL_HPP_

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gig/ad/parameters.hpp"
#include "gig/matrix.hpp"
#include "gig/model/architecture.hpp"
#include "gig/model/dti_graph.hpp"
#include "gig/nn/graph.hpp"
#include "gig/nn/layers.hpp"
#include "gig/rng.hpp"

namespace gig::model {

// Meta-node features: one row per drug and one per target.
struct MainGraphState {
  Matrix drugs;
  Matrix targets;
};

enum class Side { kDrug, kTarget };

// Pools a list of molecular graphs into one row each through a shared GNN
// stack. Graphs are processed in disjoint-union batches. To bound memory the
// training path keeps no computation record between forward and backward:
// backward() replays each batch from the random state it saw in forward().
class MolecularEncoder {
 public:
  MolecularEncoder(ad::ParameterSet& params, const std::string& prefix,
                   std::span<const nn::LayerKind> kinds, std::size_t hidden_dim,
                   std::size_t out_dim, std::size_t heads, double dropout, std::size_t batch_size,
                   std::vector<nn::FeatureGraph> graphs, Rng& rng);

  void set_batch_size(std::size_t batch_size);
  std::size_t batch_size() const noexcept { return batch_size_; }
  std::size_t size() const noexcept { return graphs_.size(); }
  std::size_t out_dim() const noexcept { return stack_.out_dim(); }
  const std::vector<nn::FeatureGraph>& graphs() const noexcept { return graphs_; }
  const nn::GnnStack& stack() const noexcept { return stack_; }

  Matrix forward(bool training, Rng& rng);
  // Accumulates parameter gradients for d(loss)/d(output of last forward).
  void backward(const Matrix& grad);

 private:
  ad::Tensor run_batch(ad::Tape& tape, std::size_t b, bool training, Rng& rng) const;

  nn::GnnStack stack_;
  std::vector<nn::FeatureGraph> graphs_;
  std::size_t batch_size_ = 0;
  std::vector<nn::GraphBatch> batches_;
  std::vector<std::size_t> batch_begin_;
  std::vector<Rng> replay_;
  bool replay_training_ = false;
  bool pending_ = false;
};

class MetaFeatureSource {
 public:
  virtual ~MetaFeatureSource() = default;
  virtual std::size_t dim() const noexcept = 0;
  virtual Matrix forward(Side side, bool training, Rng& rng) = 0;
  virtual void backward(Side side, const Matrix& grad) = 0;
};

// Constant features (random or precomputed embeddings); nothing to train.
class FixedFeatureSource final : public MetaFeatureSource {
 public:
  explicit FixedFeatureSource(MainGraphState features);
  std::size_t dim() const noexcept override { return features_.drugs.cols(); }
  Matrix forward(Side side, bool, Rng&) override;
  void backward(Side, const Matrix&) override {}

 private:
  MainGraphState features_;
};

class EncoderFeatureSource final : public MetaFeatureSource {
 public:
  EncoderFeatureSource(MolecularEncoder drugs, MolecularEncoder targets);
  std::size_t dim() const noexcept override { return drugs_.out_dim(); }
  Matrix forward(Side side, bool training, Rng& rng) override;
  void backward(Side side, const Matrix& grad) override;
  MolecularEncoder& encoder(Side side) { return side == Side::kDrug ? drugs_ : targets_; }

 private:
  MolecularEncoder drugs_;
  MolecularEncoder targets_;
};

struct LabeledPairs {
  std::vector<Pair> pairs;
  std::vector<double> labels;
};

// Interaction-graph GNN and pair classifier on top of a meta-feature source.
class DtiModel {
 public:
  // Full hierarchical model: molecular encoders feed the interaction graph.
  static DtiModel hierarchical(const GigConfig& config, std::vector<nn::FeatureGraph> drugs,
                               std::vector<nn::FeatureGraph> targets, Rng& rng);
  // Interaction-graph model over fixed meta-node features.
  static DtiModel with_features(const GigConfig& config, MainGraphState features, Rng& rng);

  DtiModel(DtiModel&&) noexcept = default;
  DtiModel& operator=(DtiModel&&) noexcept = default;

  const GigConfig& config() const noexcept { return config_; }
  ad::ParameterSet& params() noexcept { return *params_; }
  const ad::ParameterSet& params() const noexcept { return *params_; }
  MetaFeatureSource& source() noexcept { return *source_; }
  const nn::MlpHead& head() const noexcept { return head_; }
  const nn::GnnStack& main_stack() const noexcept { return main_; }
  std::size_t num_drugs() const noexcept { return num_drugs_; }
  std::size_t num_targets() const noexcept { return num_targets_; }

  // The interaction graph messages travel over (training positives only).
  void set_interactions(const DtiGraph& graph);
  const nn::PreparedGraph& main_graph() const;

  // Meta-node features before the interaction-graph GNN.
  MainGraphState initial_state(bool training, Rng& rng);
  // Interaction-graph GNN applied to `state`, without recording.
  MainGraphState propagate(const MainGraphState& state, bool training, Rng& rng) const;
  // Final embeddings in inference mode.
  MainGraphState embed();
  std::vector<double> score(std::span<const Pair> pairs);

  // Chooses the labeled pairs of a training step given the final embeddings
  // of that step (hard-negative mining hooks in here).
  using PairSelector = std::function<LabeledPairs(const MainGraphState& embeddings)>;

  // encode -> interaction graph -> head -> mean BCE, then backward into every
  // parameter. Gradients accumulate; the caller zeroes them.
  double forward_backward(const PairSelector& select, bool training, Rng& rng);

  // The same loss without gradients.
  double loss(const LabeledPairs& batch, bool training, Rng& rng);

 private:
  DtiModel(const GigConfig& config, std::unique_ptr<ad::ParameterSet> params,
           std::unique_ptr<MetaFeatureSource> source, std::size_t num_drugs,
           std::size_t num_targets, Rng& rng);

  GigConfig config_;
  std::unique_ptr<ad::ParameterSet> params_;
  std::unique_ptr<MetaFeatureSource> source_;
  std::size_t num_drugs_ = 0;
  std::size_t num_targets_ = 0;
  nn::GnnStack main_;
  nn::MlpHead head_;
  std::unique_ptr<nn::PreparedGraph> main_graph_;
};

}  // namespace gig::model

#endif  // GIG_MODEL_DTI_MODEL_HPP_
