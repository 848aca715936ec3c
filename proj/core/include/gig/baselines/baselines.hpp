// SPDX-License-Identifier: Apache-2.0

#ifndef GIG_BASELINES_BASELINES_HPP_
#define GIG_BASELINES_BASELINES_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "gig/matrix.hpp"
#include "gig/model/dti_model.hpp"
#include "gig/nn/graph.hpp"
#include "gig/rng.hpp"

namespace gig::baselines {

struct RandomFeatureConfig {
  std::size_t dim = 128;
  std::uint64_t seed = 0;
};

// I.i.d. standard-normal meta-node features, drugs first then targets.
model::MainGraphState random_meta_features(std::size_t num_drugs, std::size_t num_targets,
                                           const RandomFeatureConfig& config);

struct Node2VecConfig {
  std::size_t walk_length = 20;
  std::size_t walks_per_node = 10;
  std::size_t window = 10;
  std::size_t negatives = 1;
  double p = 1.0;
  double q = 1.0;
  std::size_t dim = 128;
  std::size_t epochs = 5;
  double lr = 0.01;

  void validate() const;
};

// Sorted neighbour lists of an undirected graph.
struct AdjacencyList {
  std::vector<std::vector<std::size_t>> neighbors;

  std::size_t size() const noexcept { return neighbors.size(); }
  bool adjacent(std::size_t a, std::size_t b) const;
};

AdjacencyList make_adjacency(std::size_t num_nodes,
                             std::span<const std::pair<std::size_t, std::size_t>> edges);

using Walk = std::vector<std::size_t>;

// walks_per_node rounds over all nodes in index order. Second-order weights:
// 1/p to return, 1 to a common neighbour of the previous node, 1/q otherwise.
// Isolated nodes yield a one-node walk.
std::vector<Walk> node2vec_walks(const AdjacencyList& graph, const Node2VecConfig& config,
                                 Rng& rng);

// The next node of a walk currently at `current` having arrived from
// `previous` (equal to `current` on the first step).
std::size_t node2vec_step(const AdjacencyList& graph, std::size_t previous, std::size_t current,
                          double p, double q, Rng& rng);

// (center, context) pairs at distance 1..window within each walk.
std::vector<std::pair<std::size_t, std::size_t>> skipgram_pairs(const Walk& walk,
                                                                 std::size_t window);

struct SkipGramResult {
  Matrix embeddings;                        // num_nodes x dim (input vectors)
  std::vector<double> epoch_loss;           // mean negative log-likelihood per pair
  std::vector<double> moving_average;       // exponential average sampled at epoch end
};

// Negative-sampling skip-gram trained by plain gradient descent, one walk per
// step, negatives drawn from the unigram^0.75 distribution of the corpus.
SkipGramResult skipgram_train(std::span<const Walk> walks, std::size_t num_nodes,
                              const Node2VecConfig& config, Rng& rng);

// Node2Vec on each molecular graph separately, node embeddings mean-pooled to
// one row per molecule. Molecule k draws from derive_seed(seed, k); targets
// continue the stream index after the drugs. When `cache_dir` is non-empty
// per-molecule results are stored there and reused.
model::MainGraphState node2vec_meta_features(std::span<const nn::FeatureGraph> drugs,
                                             std::span<const nn::FeatureGraph> targets,
                                             const Node2VecConfig& config, std::uint64_t seed,
                                             const std::filesystem::path& cache_dir = {});

}  // namespace gig::baselines

#endif  // GIG_BASELINES_BASELINES_HPP_
