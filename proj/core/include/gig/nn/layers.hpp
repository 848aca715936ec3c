// SPDX-License-Identifier: Apache-2.0

#ifndef GIG_NN_LAYERS_HPP_
#define GIG_NN_LAYERS_HPP_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gig/ad/parameters.hpp"
#include "gig/ad/tape.hpp"
#include "gig/matrix.hpp"
#include "gig/nn/graph.hpp"
#include "gig/rng.hpp"

namespace gig::nn {

enum class LayerKind { kGcn, kGat };

std::string_view to_string(LayerKind kind) noexcept;
// Accepts "GCN" / "GAT" (case-insensitive); throws FormatError otherwise.
LayerKind parse_layer_kind(std::string_view text);

class GraphLayer {
 public:
  virtual ~GraphLayer() = default;
  // Pre-activation output; the caller applies the nonlinearity.
  virtual ad::Tensor forward(ad::Tape& tape, const PreparedGraph& graph,
                             const ad::Tensor& h) const = 0;
  virtual std::size_t in_dim() const noexcept = 0;
  virtual std::size_t out_dim() const noexcept = 0;
};

// Â H W + b with Â the symmetric-normalized adjacency with self-loops.
class GcnLayer final : public GraphLayer {
 public:
  GcnLayer(ad::ParameterSet& params, const std::string& prefix, std::size_t in_dim,
           std::size_t out_dim, Rng& rng);
  ad::Tensor forward(ad::Tape& tape, const PreparedGraph& graph,
                     const ad::Tensor& h) const override;
  std::size_t in_dim() const noexcept override { return in_; }
  std::size_t out_dim() const noexcept override { return out_; }

 private:
  std::size_t in_;
  std::size_t out_;
  ad::Tensor weight_;
  ad::Tensor bias_;
};

// Attention over N(u) ∪ {u}. The self term is transformed by W_self, neighbour
// messages by W_neigh; heads are averaged before the shared bias.
class GatLayer final : public GraphLayer {
 public:
  static constexpr double kLeakySlope = 0.2;

  GatLayer(ad::ParameterSet& params, const std::string& prefix, std::size_t in_dim,
           std::size_t out_dim, std::size_t heads, Rng& rng);
  ad::Tensor forward(ad::Tape& tape, const PreparedGraph& graph,
                     const ad::Tensor& h) const override;
  std::size_t in_dim() const noexcept override { return in_; }
  std::size_t out_dim() const noexcept override { return out_; }
  std::size_t heads() const noexcept { return heads_.size(); }

 private:
  struct Head {
    ad::Tensor w_self;
    ad::Tensor w_neigh;
    ad::Tensor attn_self;   // out x 1, applied to the receiving node
    ad::Tensor attn_neigh;  // out x 1, applied to the sender
  };
  std::size_t in_;
  std::size_t out_;
  std::vector<Head> heads_;
  ad::Tensor bias_;
};

std::unique_ptr<GraphLayer> make_layer(LayerKind kind, ad::ParameterSet& params,
                                       const std::string& prefix, std::size_t in_dim,
                                       std::size_t out_dim, std::size_t heads, Rng& rng);

// Layers applied in sequence, each followed by ReLU and dropout. Inner layers
// are hidden_dim wide, the last one out_dim.
class GnnStack {
 public:
  GnnStack() = default;
  GnnStack(ad::ParameterSet& params, const std::string& prefix, std::span<const LayerKind> kinds,
           std::size_t in_dim, std::size_t hidden_dim, std::size_t out_dim, std::size_t heads,
           double dropout, Rng& rng);

  ad::Tensor forward(ad::Tape& tape, const PreparedGraph& graph, const ad::Tensor& h,
                     bool training, Rng& rng) const;

  std::size_t depth() const noexcept { return layers_.size(); }
  std::size_t out_dim() const noexcept;
  const GraphLayer& layer(std::size_t i) const { return *layers_.at(i); }

 private:
  std::vector<std::unique_ptr<GraphLayer>> layers_;
  double dropout_ = 0.0;
};

// Mean of node rows per graph id; every graph must own at least one node.
ad::Tensor global_mean_pool(ad::Tape& tape, const ad::Tensor& h,
                            std::span<const std::size_t> graph_ids, std::size_t num_graphs);

// Pair classifier: shifted_sigmoid(W2 ReLU(W1 [z_d ; z_t] + b1) + b2).
class MlpHead {
 public:
  MlpHead() = default;
  MlpHead(ad::ParameterSet& params, const std::string& prefix, std::size_t embed_dim,
          std::size_t hidden_dim, Rng& rng);

  // drugs and targets are N x embed_dim row-aligned pair embeddings; returns N x 1.
  ad::Tensor forward(ad::Tape& tape, const ad::Tensor& drugs, const ad::Tensor& targets,
                     double dropout, bool training, Rng& rng) const;

  // Inference-only scores for (drug row, target row) pairs of two embedding
  // tables. Splits W1 so each embedding is projected once instead of per pair.
  std::vector<double> score_pairs(const Matrix& drug_embeddings, const Matrix& target_embeddings,
                                  std::span<const std::pair<std::size_t, std::size_t>> pairs) const;

  std::size_t embed_dim() const noexcept { return embed_; }

 private:
  std::size_t embed_ = 0;
  std::size_t hidden_ = 0;
  ad::Tensor w1_, b1_, w2_, b2_;
  ad::Tensor a_, b_, t_;
};

}  // namespace gig::nn

#endif  // GIG_NN_LAYERS_HPP_
