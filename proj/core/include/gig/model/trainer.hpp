// SPDX-License-Identifier: Apache-2.0

#ifndef GIG_MODEL_TRAINER_HPP_
#define GIG_MODEL_TRAINER_HPP_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "gig/ad/adam.hpp"
#include "gig/metrics/metrics.hpp"
#include "gig/model/dti_model.hpp"
#include "gig/rng.hpp"

namespace gig::model {

// Training positives plus the frozen evaluation pairs.
struct TrainingData {
  DtiGraph train;
  LabeledPairs val;
  LabeledPairs test;
};

// Every (i, j) that is neither a training positive nor in `forbidden`, in
// lexicographic order.
std::vector<Pair> candidate_negatives(const DtiGraph& train, std::span<const Pair> forbidden);

// Indices of the `count` highest-scoring candidates, ties resolved towards the
// lexicographically smaller pair. Candidates must be in lexicographic order.
std::vector<std::size_t> select_hard_negatives(std::span<const Pair> candidates,
                                               std::span<const double> scores, std::size_t count);

struct HardNegativeStats {
  bool hard = false;  // false during the uniform warm-up
  double min_selected = std::numeric_limits<double>::quiet_NaN();
  double max_unselected = -std::numeric_limits<double>::infinity();
};

struct EpochRecord {
  std::size_t epoch = 0;
  double loss = 0.0;
  metrics::MetricsReport val;
};

struct FitResult {
  std::vector<EpochRecord> log;
  std::size_t best_epoch = 0;  // 0 = initialization
  std::optional<double> best_val_auc;
  bool stopped_early = false;
};

class Trainer {
 public:
  // Asserts that no evaluation pair is a training positive or a mining candidate.
  Trainer(DtiModel& model, const TrainingData& data, Rng& rng);

  // One optimizer step on the epoch's supervised positives and as many
  // negatives: uniformly drawn during the first config.negative_warmup epochs,
  // the highest-scoring candidates afterwards. Supervised positives are all
  // training positives, or with config.supervision_fraction > 0 a fresh random
  // share of them that is hidden from the interaction graph for this epoch.
  double train_epoch();
  const std::vector<Pair>& last_negatives() const noexcept { return last_negatives_; }
  const HardNegativeStats& last_stats() const noexcept { return last_stats_; }
  std::size_t candidate_count() const noexcept { return candidates_.size(); }

  metrics::MetricsReport evaluate(const LabeledPairs& pairs);

  // Runs up to max_epochs with early stopping on validation AUC and restores
  // the best parameters. Writes the CSV log when `log_path` is non-empty.
  FitResult fit(const std::filesystem::path& log_path = {},
                const std::function<void(const EpochRecord&)>& on_epoch = {});

 private:
  DtiModel& model_;
  const TrainingData& data_;
  Rng& rng_;
  ad::Adam adam_;
  std::vector<Pair> candidates_;
  std::vector<Pair> epoch_positives();
  double hard_step(const std::vector<Pair>& positives);
  LabeledPairs uniform_batch(const std::vector<Pair>& positives);

  std::vector<Pair> last_negatives_;
  std::size_t epochs_run_ = 0;
  HardNegativeStats last_stats_;
};

std::string log_header();
std::string log_row(const EpochRecord& record);

}  // namespace gig::model

#endif  // GIG_MODEL_TRAINER_HPP_
