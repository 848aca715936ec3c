// SPDX-License-Identifier: Apache-2.0

#include "gig/model/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <string>

#include "gig/error.hpp"

namespace gig::model {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string("undefined"); }

}  // namespace

std::vector<Pair> candidate_negatives(const DtiGraph& train, std::span<const Pair> forbidden) {
  std::vector<Pair> blocked(forbidden.begin(), forbidden.end());
  std::sort(blocked.begin(), blocked.end());
  std::vector<Pair> out;
  out.reserve(train.num_drugs * train.num_targets);
  for (std::size_t i = 0; i < train.num_drugs; ++i) {
    for (std::size_t j = 0; j < train.num_targets; ++j) {
      const Pair p{i, j};
      if (train.contains(p) || std::binary_search(blocked.begin(), blocked.end(), p)) continue;
      out.push_back(p);
    }
  }
  return out;
}

std::vector<std::size_t> select_hard_negatives(std::span<const Pair> candidates,
                                               std::span<const double> scores, std::size_t count) {
  if (scores.size() != candidates.size()) {
    throw ContractViolation("select_hard_negatives: score count does not match candidates");
  }
  if (count > candidates.size()) {
    throw ContractViolation("select_hard_negatives: " + std::to_string(count) +
                            " negatives requested from " + std::to_string(candidates.size()) +
                            " candidates");
  }
  for (double s : scores) {
    if (std::isnan(s)) throw NumericError("select_hard_negatives: NaN score");
  }
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  // Candidate index order is lexicographic pair order, so it breaks ties.
  auto before = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  };
  const auto cut = order.begin() + static_cast<std::ptrdiff_t>(count);
  std::nth_element(order.begin(), cut, order.end(), before);
  order.resize(count);
  std::sort(order.begin(), order.end(), before);
  return order;
}

Trainer::Trainer(DtiModel& model, const TrainingData& data, Rng& rng)
    : model_(model),
      data_(data),
      rng_(rng),
      adam_(model.params().tensors(), ad::AdamOptions{.lr = model.config().lr}) {
  if (data.val.pairs.size() != data.val.labels.size() ||
      data.test.pairs.size() != data.test.labels.size()) {
    throw ContractViolation("evaluation pairs and labels differ in length");
  }
  std::vector<Pair> held_out = data.val.pairs;
  held_out.insert(held_out.end(), data.test.pairs.begin(), data.test.pairs.end());
  for (const Pair& p : held_out) {
    if (data.train.contains(p)) {
      throw ContractViolation("evaluation pair (" + std::to_string(p.first) + ", " +
                              std::to_string(p.second) + ") is a training positive");
    }
  }
  candidates_ = candidate_negatives(data.train, held_out);
  std::sort(held_out.begin(), held_out.end());
  for (const Pair& p : candidates_) {
    if (std::binary_search(held_out.begin(), held_out.end(), p)) {
      throw ContractViolation("evaluation pair leaked into the mining pool");
    }
  }
  model_.set_interactions(data.train);
}

std::vector<Pair> Trainer::epoch_positives() {
  const auto& all = data_.train.positive_edges;
  const double fraction = model_.config().supervision_fraction;
  if (fraction <= 0.0 || all.empty()) return all;
  std::vector<Pair> shuffled = all;
  std::shuffle(shuffled.begin(), shuffled.end(), rng_.engine());
  const auto k = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(fraction * static_cast<double>(all.size()))), 1,
      all.size());
  std::vector<Pair> supervised(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<Pair> message(shuffled.begin() + static_cast<std::ptrdiff_t>(k), shuffled.end());
  std::sort(supervised.begin(), supervised.end());
  model_.set_interactions(
      DtiGraph::make(data_.train.num_drugs, data_.train.num_targets, std::move(message)));
  return supervised;
}

double Trainer::train_epoch() {
  ++epochs_run_;
  const std::vector<Pair> positives = epoch_positives();
  double loss = 0.0;
  if (epochs_run_ <= model_.config().negative_warmup) {
    auto select = [&](const MainGraphState&) { return uniform_batch(positives); };
    adam_.zero_grad();
    loss = model_.forward_backward(select, true, rng_);
  } else {
    loss = hard_step(positives);
  }
  adam_.step();
  if (model_.config().supervision_fraction > 0.0) model_.set_interactions(data_.train);
  return loss;
}

double Trainer::hard_step(const std::vector<Pair>& positives) {
  const std::size_t count = positives.size();
  auto select = [&](const MainGraphState& e) {
    const std::vector<double> scores = model_.head().score_pairs(e.drugs, e.targets, candidates_);
    const std::vector<std::size_t> chosen = select_hard_negatives(candidates_, scores, count);

    std::vector<bool> taken(candidates_.size(), false);
    HardNegativeStats stats;
    stats.min_selected = chosen.empty() ? std::numeric_limits<double>::infinity()
                                        : scores[chosen.back()];
    for (std::size_t k : chosen) taken[k] = true;
    for (std::size_t k = 0; k < scores.size(); ++k) {
      if (!taken[k]) stats.max_unselected = std::max(stats.max_unselected, scores[k]);
    }
    if (stats.min_selected < stats.max_unselected) {
      throw ContractViolation("hard-negative selection is not dominant");
    }
    stats.hard = true;
    last_stats_ = stats;

    LabeledPairs batch;
    batch.pairs = positives;
    batch.labels.assign(count, 1.0);
    last_negatives_.clear();
    for (std::size_t k : chosen) {
      last_negatives_.push_back(candidates_[k]);
      batch.pairs.push_back(candidates_[k]);
      batch.labels.push_back(0.0);
    }
    return batch;
  };
  adam_.zero_grad();
  return model_.forward_backward(select, true, rng_);
}

LabeledPairs Trainer::uniform_batch(const std::vector<Pair>& positives) {
  const std::size_t count = positives.size();
  LabeledPairs batch;
  batch.pairs = positives;
  batch.labels.assign(positives.size(), 1.0);
  // Partial Fisher-Yates over candidate indices.
  std::vector<std::size_t> order(candidates_.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t take = std::min(count, order.size());
  last_negatives_.clear();
  for (std::size_t k = 0; k < take; ++k) {
    std::swap(order[k], order[k + rng_.below(order.size() - k)]);
    last_negatives_.push_back(candidates_[order[k]]);
    batch.pairs.push_back(candidates_[order[k]]);
    batch.labels.push_back(0.0);
  }
  last_stats_ = HardNegativeStats{};
  return batch;
}

metrics::MetricsReport Trainer::evaluate(const LabeledPairs& pairs) {
  const std::vector<double> scores = model_.score(pairs.pairs);
  return metrics::evaluate(scores, pairs.labels, model_.config().threshold);
}

FitResult Trainer::fit(const std::filesystem::path& log_path,
                       const std::function<void(const EpochRecord&)>& on_epoch) {
  std::ofstream log;
  if (!log_path.empty()) {
    log.open(log_path, std::ios::binary | std::ios::trunc);
    if (!log) throw DataError("cannot write training log " + log_path.string());
    log << log_header() << '\n';
  }
  FitResult result;
  auto best = model_.params().snapshot();
  std::size_t since_best = 0;
  const std::size_t patience = model_.config().patience;

  for (std::size_t epoch = 1; epoch <= model_.config().max_epochs; ++epoch) {
    EpochRecord record;
    record.epoch = epoch;
    record.loss = train_epoch();
    record.val = evaluate(data_.val);
    result.log.push_back(record);
    if (log) log << log_row(record) << '\n' << std::flush;
    if (on_epoch) on_epoch(record);

    if (!record.val.roc_auc) {
      // Nothing to select on: keep the latest parameters.
      best = model_.params().snapshot();
      result.best_epoch = epoch;
      continue;
    }
    if (!result.best_val_auc || *record.val.roc_auc > *result.best_val_auc) {
      result.best_val_auc = record.val.roc_auc;
      result.best_epoch = epoch;
      best = model_.params().snapshot();
      since_best = 0;
    } else if (patience > 0 && ++since_best >= patience) {
      result.stopped_early = true;
      break;
    }
  }
  model_.params().restore(best);
  return result;
}

std::string log_header() { return "epoch,loss,val_auc,val_auprc,val_f1,val_mcc"; }

std::string log_row(const EpochRecord& r) {
  return std::to_string(r.epoch) + "," + fmt(r.loss) + "," + fmt(r.val.roc_auc) + "," +
         fmt(r.val.auprc) + "," + fmt(r.val.f1) + "," + fmt(r.val.mcc);
}

}  // namespace gig::model
