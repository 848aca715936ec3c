// SPDX-License-Identifier: Apache-2.0

#include "gig/model/dti_model.hpp"

#include <algorithm>
#include <cmath>

#include "gig/ad/tape.hpp"
#include "gig/error.hpp"

namespace gig::model {

namespace {

struct MainOutputs {
  ad::Tensor drugs;
  ad::Tensor targets;
};

MainOutputs run_main(ad::Tape& tape, const nn::GnnStack& stack, const nn::PreparedGraph& graph,
                     const ad::Tensor& drugs, const ad::Tensor& targets, bool training,
                     Rng& rng) {
  const ad::Tensor h0 = tape.concat_rows({drugs, targets});
  const ad::Tensor h = stack.forward(tape, graph, h0, training, rng);
  return {tape.slice_rows(h, 0, drugs.rows()), tape.slice_rows(h, drugs.rows(), targets.rows())};
}

ad::Tensor predict(ad::Tape& tape, const nn::MlpHead& head, const MainOutputs& out,
                   std::span<const Pair> pairs, double dropout, bool training, Rng& rng) {
  std::vector<std::size_t> di(pairs.size());
  std::vector<std::size_t> ti(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    di[k] = pairs[k].first;
    ti[k] = pairs[k].second;
  }
  return head.forward(tape, tape.gather_rows(out.drugs, di), tape.gather_rows(out.targets, ti),
                      dropout, training, rng);
}

}  // namespace

MolecularEncoder::MolecularEncoder(ad::ParameterSet& params, const std::string& prefix,
                                   std::span<const nn::LayerKind> kinds, std::size_t hidden_dim,
                                   std::size_t out_dim, std::size_t heads, double dropout,
                                   std::size_t batch_size, std::vector<nn::FeatureGraph> graphs,
                                   Rng& rng)
    : graphs_(std::move(graphs)) {
  if (graphs_.empty()) throw ContractViolation("MolecularEncoder: no graphs");
  const std::size_t in_dim = graphs_.front().features.cols();
  for (const auto& g : graphs_) {
    if (g.features.rows() == 0) throw ContractViolation("MolecularEncoder: empty molecular graph");
    if (g.features.cols() != in_dim) throw ContractViolation("MolecularEncoder: feature width mismatch");
  }
  stack_ = nn::GnnStack(params, prefix, kinds, in_dim, hidden_dim, out_dim, heads, dropout, rng);
  set_batch_size(batch_size);
}

void MolecularEncoder::set_batch_size(std::size_t batch_size) {
  if (batch_size == 0) throw ContractViolation("MolecularEncoder: batch size must be positive");
  batch_size_ = batch_size;
  batches_.clear();
  batch_begin_.clear();
  for (std::size_t begin = 0; begin < graphs_.size(); begin += batch_size) {
    const std::size_t end = std::min(graphs_.size(), begin + batch_size);
    std::vector<const nn::FeatureGraph*> members;
    for (std::size_t i = begin; i < end; ++i) members.push_back(&graphs_[i]);
    batches_.push_back(nn::make_batch(members));
    batch_begin_.push_back(begin);
  }
  pending_ = false;
}

ad::Tensor MolecularEncoder::run_batch(ad::Tape& tape, std::size_t b, bool training,
                                       Rng& rng) const {
  const nn::GraphBatch& batch = batches_[b];
  const ad::Tensor x = ad::Tensor::from(batch.features);
  const ad::Tensor h = stack_.forward(tape, batch.graph, x, training, rng);
  return nn::global_mean_pool(tape, h, batch.graph_ids, batch.num_graphs);
}

Matrix MolecularEncoder::forward(bool training, Rng& rng) {
  Matrix out(graphs_.size(), out_dim());
  replay_.clear();
  for (std::size_t b = 0; b < batches_.size(); ++b) {
    replay_.push_back(rng);
    ad::Tape tape(ad::Tape::Mode::kNoGrad);
    const ad::Tensor pooled = run_batch(tape, b, training, rng);
    std::copy(pooled.values().begin(), pooled.values().end(),
              out.data().begin() + static_cast<std::ptrdiff_t>(batch_begin_[b] * out.cols()));
  }
  replay_training_ = training;
  pending_ = true;
  return out;
}

void MolecularEncoder::backward(const Matrix& grad) {
  if (!pending_) throw ContractViolation("MolecularEncoder::backward without a forward pass");
  if (grad.rows() != graphs_.size() || grad.cols() != out_dim()) {
    throw ContractViolation("MolecularEncoder::backward: gradient shape mismatch");
  }
  for (std::size_t b = 0; b < batches_.size(); ++b) {
    Rng rng = replay_[b];
    ad::Tape tape;
    const ad::Tensor pooled = run_batch(tape, b, replay_training_, rng);
    const auto first = grad.data().begin() + static_cast<std::ptrdiff_t>(batch_begin_[b] * grad.cols());
    const std::vector<double> seed(first, first + static_cast<std::ptrdiff_t>(pooled.size()));
    tape.backward(pooled, seed);
  }
  pending_ = false;
}

FixedFeatureSource::FixedFeatureSource(MainGraphState features) : features_(std::move(features)) {
  if (features_.drugs.cols() != features_.targets.cols() || features_.drugs.cols() == 0) {
    throw ContractViolation("FixedFeatureSource: drug and target features need one shared width");
  }
}

Matrix FixedFeatureSource::forward(Side side, bool, Rng&) {
  return side == Side::kDrug ? features_.drugs : features_.targets;
}

EncoderFeatureSource::EncoderFeatureSource(MolecularEncoder drugs, MolecularEncoder targets)
    : drugs_(std::move(drugs)), targets_(std::move(targets)) {
  if (drugs_.out_dim() != targets_.out_dim()) {
    throw ContractViolation("EncoderFeatureSource: encoder output widths differ");
  }
}

Matrix EncoderFeatureSource::forward(Side side, bool training, Rng& rng) {
  return encoder(side).forward(training, rng);
}

void EncoderFeatureSource::backward(Side side, const Matrix& grad) { encoder(side).backward(grad); }

DtiModel::DtiModel(const GigConfig& config, std::unique_ptr<ad::ParameterSet> params,
                   std::unique_ptr<MetaFeatureSource> source, std::size_t num_drugs,
                   std::size_t num_targets, Rng& rng)
    : config_(config),
      params_(std::move(params)),
      source_(std::move(source)),
      num_drugs_(num_drugs),
      num_targets_(num_targets) {
  const auto kinds = config_.main_kinds();
  main_ = nn::GnnStack(*params_, "main", kinds, source_->dim(), config_.hidden_dim,
                       config_.embedding_dim, config_.heads, config_.dropout, rng);
  head_ = nn::MlpHead(*params_, "head", config_.embedding_dim, config_.hidden_dim, rng);
}

DtiModel DtiModel::hierarchical(const GigConfig& config, std::vector<nn::FeatureGraph> drugs,
                                std::vector<nn::FeatureGraph> targets, Rng& rng) {
  config.validate();
  auto params = std::make_unique<ad::ParameterSet>();
  const std::size_t m = drugs.size();
  const std::size_t n = targets.size();
  const auto drug_kinds = config.drug_kinds();
  const auto target_kinds = config.target_kinds();
  MolecularEncoder drug_encoder(*params, "drug_encoder", drug_kinds, config.hidden_dim,
                                config.embedding_dim, config.heads, config.dropout,
                                config.batch_size, std::move(drugs), rng);
  MolecularEncoder target_encoder(*params, "target_encoder", target_kinds, config.hidden_dim,
                                  config.embedding_dim, config.heads, config.dropout,
                                  config.batch_size, std::move(targets), rng);
  auto source =
      std::make_unique<EncoderFeatureSource>(std::move(drug_encoder), std::move(target_encoder));
  return DtiModel(config, std::move(params), std::move(source), m, n, rng);
}

DtiModel DtiModel::with_features(const GigConfig& config, MainGraphState features, Rng& rng) {
  config.validate();
  const std::size_t m = features.drugs.rows();
  const std::size_t n = features.targets.rows();
  auto source = std::make_unique<FixedFeatureSource>(std::move(features));
  return DtiModel(config, std::make_unique<ad::ParameterSet>(), std::move(source), m, n, rng);
}

void DtiModel::set_interactions(const DtiGraph& graph) {
  if (graph.num_drugs != num_drugs_ || graph.num_targets != num_targets_) {
    throw ContractViolation("interaction graph dimensions do not match the model");
  }
  main_graph_ = std::make_unique<nn::PreparedGraph>(nn::prepare_graph(graph.edge_index()));
}

const nn::PreparedGraph& DtiModel::main_graph() const {
  if (!main_graph_) throw ContractViolation("DtiModel: interactions not set");
  return *main_graph_;
}

MainGraphState DtiModel::initial_state(bool training, Rng& rng) {
  MainGraphState s;
  s.drugs = source_->forward(Side::kDrug, training, rng);
  s.targets = source_->forward(Side::kTarget, training, rng);
  return s;
}

MainGraphState DtiModel::propagate(const MainGraphState& state, bool training, Rng& rng) const {
  ad::Tape tape(ad::Tape::Mode::kNoGrad);
  const MainOutputs out = run_main(tape, main_, main_graph(), ad::Tensor::from(state.drugs),
                                   ad::Tensor::from(state.targets), training, rng);
  return {out.drugs.to_matrix(), out.targets.to_matrix()};
}

MainGraphState DtiModel::embed() {
  Rng unused(0);
  return propagate(initial_state(false, unused), false, unused);
}

std::vector<double> DtiModel::score(std::span<const Pair> pairs) {
  const MainGraphState e = embed();
  return head_.score_pairs(e.drugs, e.targets, pairs);
}

double DtiModel::forward_backward(const PairSelector& select, bool training, Rng& rng) {
  const MainGraphState s0 = initial_state(training, rng);
  ad::Tape tape;
  const ad::Tensor drugs0 = ad::Tensor::from(s0.drugs, true);
  const ad::Tensor targets0 = ad::Tensor::from(s0.targets, true);
  const MainOutputs out = run_main(tape, main_, main_graph(), drugs0, targets0, training, rng);

  const LabeledPairs batch = select({out.drugs.to_matrix(), out.targets.to_matrix()});
  const ad::Tensor preds = predict(tape, head_, out, batch.pairs, config_.dropout, training, rng);
  const ad::Tensor loss = tape.bce_loss(preds, batch.labels);
  const double value = loss.item();
  if (!std::isfinite(value)) {
    throw NumericError("non-finite training loss; parameter norms: " + params_->norm_report());
  }
  tape.backward(loss);
  source_->backward(Side::kDrug, Matrix(num_drugs_, drugs0.cols(), drugs0.grad()));
  source_->backward(Side::kTarget, Matrix(num_targets_, targets0.cols(), targets0.grad()));
  return value;
}

double DtiModel::loss(const LabeledPairs& batch, bool training, Rng& rng) {
  const MainGraphState s0 = initial_state(training, rng);
  ad::Tape tape(ad::Tape::Mode::kNoGrad);
  const MainOutputs out = run_main(tape, main_, main_graph(), ad::Tensor::from(s0.drugs),
                                   ad::Tensor::from(s0.targets), training, rng);
  const ad::Tensor preds = predict(tape, head_, out, batch.pairs, config_.dropout, training, rng);
  return tape.bce_loss(preds, batch.labels).item();
}

}  // namespace gig::model
