// SPDX-License-Identifier: Apache-2.0

#include "gig/nn/layers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <Eigen/Dense>

#include "gig/error.hpp"

namespace gig::nn {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMatrix>;

double stable_sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

std::string_view to_string(LayerKind kind) noexcept {
  return kind == LayerKind::kGcn ? "GCN" : "GAT";
}

LayerKind parse_layer_kind(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "GCN") return LayerKind::kGcn;
  if (upper == "GAT") return LayerKind::kGat;
  throw FormatError("unknown layer type '" + std::string(text) + "' (expected GCN or GAT)");
}

GcnLayer::GcnLayer(ad::ParameterSet& params, const std::string& prefix, std::size_t in_dim,
                   std::size_t out_dim, Rng& rng)
    : in_(in_dim), out_(out_dim) {
  weight_ = params.glorot(prefix + ".weight", in_dim, out_dim, rng);
  bias_ = params.zeros(prefix + ".bias", ad::Shape{1, out_dim});
}

ad::Tensor GcnLayer::forward(ad::Tape& tape, const PreparedGraph& graph,
                             const ad::Tensor& h) const {
  if (h.rows() != graph.graph.num_nodes || h.cols() != in_) {
    throw ContractViolation("GcnLayer: input " + h.shape().str() + " does not match graph of " +
                            std::to_string(graph.graph.num_nodes) + " nodes and width " +
                            std::to_string(in_));
  }
  const ad::Tensor xw = tape.matmul(h, weight_);
  return tape.add(tape.sparse_matmul(graph.gcn_adjacency, xw), bias_);
}

GatLayer::GatLayer(ad::ParameterSet& params, const std::string& prefix, std::size_t in_dim,
                   std::size_t out_dim, std::size_t heads, Rng& rng)
    : in_(in_dim), out_(out_dim) {
  if (heads == 0) throw ContractViolation("GatLayer: at least one head required");
  for (std::size_t k = 0; k < heads; ++k) {
    const std::string p = prefix + ".head" + std::to_string(k);
    Head head;
    head.w_self = params.glorot(p + ".w_self", in_dim, out_dim, rng);
    head.w_neigh = params.glorot(p + ".w_neigh", in_dim, out_dim, rng);
    head.attn_self = params.glorot(p + ".attn_self", out_dim, 1, rng);
    head.attn_neigh = params.glorot(p + ".attn_neigh", out_dim, 1, rng);
    heads_.push_back(std::move(head));
  }
  bias_ = params.zeros(prefix + ".bias", ad::Shape{1, out_dim});
}

ad::Tensor GatLayer::forward(ad::Tape& tape, const PreparedGraph& graph,
                             const ad::Tensor& h) const {
  const std::size_t n = graph.graph.num_nodes;
  if (h.rows() != n || h.cols() != in_) {
    throw ContractViolation("GatLayer: input " + h.shape().str() + " does not match graph of " +
                            std::to_string(n) + " nodes and width " + std::to_string(in_));
  }
  const auto& dst = graph.attention_dst;
  const auto& src = graph.attention_src;

  std::vector<ad::Tensor> outputs;
  outputs.reserve(heads_.size());
  for (const Head& head : heads_) {
    const ad::Tensor self_rows = tape.matmul(h, head.w_self);
    const ad::Tensor neigh_rows = tape.matmul(h, head.w_neigh);
    // Rows [0, n) carry neighbour messages, rows [n, 2n) the self transform.
    const ad::Tensor senders = tape.concat_rows({neigh_rows, self_rows});

    const ad::Tensor recv_score = tape.gather_rows(tape.matmul(self_rows, head.attn_self), dst);
    const ad::Tensor send_score = tape.gather_rows(tape.matmul(senders, head.attn_neigh), src);
    const ad::Tensor logits = tape.leaky_relu(tape.add(recv_score, send_score), kLeakySlope);
    const ad::Tensor alpha = tape.segment_softmax(logits, dst, n);

    const ad::Tensor messages = tape.mul_rows(tape.gather_rows(senders, src), alpha);
    outputs.push_back(tape.segment_sum(messages, dst, n));
  }
  ad::Tensor combined = outputs.front();
  if (outputs.size() > 1) {
    for (std::size_t k = 1; k < outputs.size(); ++k) combined = tape.add(combined, outputs[k]);
    combined = tape.mul_scalar(combined, 1.0 / static_cast<double>(outputs.size()));
  }
  return tape.add(combined, bias_);
}

std::unique_ptr<GraphLayer> make_layer(LayerKind kind, ad::ParameterSet& params,
                                       const std::string& prefix, std::size_t in_dim,
                                       std::size_t out_dim, std::size_t heads, Rng& rng) {
  if (kind == LayerKind::kGcn) return std::make_unique<GcnLayer>(params, prefix, in_dim, out_dim, rng);
  return std::make_unique<GatLayer>(params, prefix, in_dim, out_dim, heads, rng);
}

GnnStack::GnnStack(ad::ParameterSet& params, const std::string& prefix,
                   std::span<const LayerKind> kinds, std::size_t in_dim, std::size_t hidden_dim,
                   std::size_t out_dim, std::size_t heads, double dropout, Rng& rng)
    : dropout_(dropout) {
  if (kinds.empty()) throw ContractViolation("GnnStack: no layers");
  std::size_t width = in_dim;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    const std::size_t next = i + 1 == kinds.size() ? out_dim : hidden_dim;
    layers_.push_back(make_layer(kinds[i], params, prefix + ".layer" + std::to_string(i), width,
                                 next, heads, rng));
    width = next;
  }
}

ad::Tensor GnnStack::forward(ad::Tape& tape, const PreparedGraph& graph, const ad::Tensor& h,
                             bool training, Rng& rng) const {
  ad::Tensor x = h;
  for (const auto& layer : layers_) {
    x = tape.relu(layer->forward(tape, graph, x));
    x = tape.dropout(x, dropout_, training, rng);
  }
  return x;
}

std::size_t GnnStack::out_dim() const noexcept {
  return layers_.empty() ? 0 : layers_.back()->out_dim();
}

ad::Tensor global_mean_pool(ad::Tape& tape, const ad::Tensor& h,
                            std::span<const std::size_t> graph_ids, std::size_t num_graphs) {
  return tape.segment_mean(h, graph_ids, num_graphs);
}

MlpHead::MlpHead(ad::ParameterSet& params, const std::string& prefix, std::size_t embed_dim,
                 std::size_t hidden_dim, Rng& rng)
    : embed_(embed_dim), hidden_(hidden_dim) {
  w1_ = params.glorot(prefix + ".w1", 2 * embed_dim, hidden_dim, rng);
  b1_ = params.zeros(prefix + ".b1", ad::Shape{1, hidden_dim});
  w2_ = params.glorot(prefix + ".w2", hidden_dim, 1, rng);
  b2_ = params.zeros(prefix + ".b2", ad::Shape{1, 1});
  a_ = params.constant(prefix + ".sigmoid_a", ad::Shape{1, 1}, 1.0);
  b_ = params.constant(prefix + ".sigmoid_b", ad::Shape{1, 1}, 0.0);
  t_ = params.constant(prefix + ".sigmoid_t", ad::Shape{1, 1}, 1.0);
}

ad::Tensor MlpHead::forward(ad::Tape& tape, const ad::Tensor& drugs, const ad::Tensor& targets,
                            double dropout, bool training, Rng& rng) const {
  if (drugs.cols() != embed_ || targets.cols() != embed_ || drugs.rows() != targets.rows()) {
    throw ContractViolation("MlpHead: pair embeddings " + drugs.shape().str() + " and " +
                            targets.shape().str() + " do not match width " +
                            std::to_string(embed_));
  }
  const ad::Tensor joined = tape.concat_cols({drugs, targets});
  ad::Tensor hidden = tape.relu(tape.add(tape.matmul(joined, w1_), b1_));
  hidden = tape.dropout(hidden, dropout, training, rng);
  const ad::Tensor logit = tape.add(tape.matmul(hidden, w2_), b2_);
  return tape.shifted_sigmoid(logit, a_, b_, t_);
}

std::vector<double> MlpHead::score_pairs(
    const Matrix& drug_embeddings, const Matrix& target_embeddings,
    std::span<const std::pair<std::size_t, std::size_t>> pairs) const {
  if (drug_embeddings.cols() != embed_ || target_embeddings.cols() != embed_) {
    throw ContractViolation("MlpHead::score_pairs: embedding width mismatch");
  }
  const ConstMap w1(w1_.values().data(), static_cast<Eigen::Index>(2 * embed_),
                    static_cast<Eigen::Index>(hidden_));
  const ConstMap zd(drug_embeddings.data().data(), static_cast<Eigen::Index>(drug_embeddings.rows()),
                    static_cast<Eigen::Index>(embed_));
  const ConstMap zt(target_embeddings.data().data(),
                    static_cast<Eigen::Index>(target_embeddings.rows()),
                    static_cast<Eigen::Index>(embed_));
  const RowMatrix pd = zd * w1.topRows(static_cast<Eigen::Index>(embed_));
  const RowMatrix pt = zt * w1.bottomRows(static_cast<Eigen::Index>(embed_));

  const std::span<const double> b1 = b1_.values();
  const std::span<const double> w2 = w2_.values();
  const double b2 = b2_.item();
  const double a = a_.item();
  const double b = b_.item();
  double t = t_.item();
  if (std::abs(t) < ad::kMinTemperature) t = t < 0.0 ? -ad::kMinTemperature : ad::kMinTemperature;

  std::vector<double> scores;
  scores.reserve(pairs.size());
  for (const auto& [i, j] : pairs) {
    if (i >= drug_embeddings.rows() || j >= target_embeddings.rows()) {
      throw ContractViolation("MlpHead::score_pairs: pair index out of range");
    }
    double logit = b2;
    for (std::size_t k = 0; k < hidden_; ++k) {
      const double z = pd(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) +
                       pt(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) + b1[k];
      if (z > 0.0) logit += z * w2[k];
    }
    scores.push_back(stable_sigmoid((a * logit + b) / t));
  }
  return scores;
}

}  // namespace gig::nn
