// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "gig/ad/container.hpp"
#include "gig/ad/tape.hpp"
#include "gig/baselines/baselines.hpp"
#include "gig/error.hpp"

namespace gig::baselines {

namespace {

constexpr double kMovingAverageRate = 0.01;

std::size_t sample_cumulative(std::span<const double> cumulative, Rng& rng) {
  const double u = rng.uniform() * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

Matrix embed_molecule(const nn::FeatureGraph& graph, const Node2VecConfig& config,
                      std::uint64_t seed) {
  Rng rng(seed);
  const AdjacencyList adj = make_adjacency(graph.features.rows(), graph.edges);
  const auto walks = node2vec_walks(adj, config, rng);
  return skipgram_train(walks, adj.size(), config, rng).embeddings;
}

std::vector<double> mean_rows(const Matrix& m) {
  std::vector<double> out(m.cols(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out[c] += m(r, c);
  }
  for (double& v : out) v /= static_cast<double>(m.rows());
  return out;
}

std::string cache_signature(const Node2VecConfig& c, std::uint64_t seed) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "n2v-l%zu-r%zu-w%zu-k%zu-p%g-q%g-d%zu-e%zu-lr%g-s%llu",
                c.walk_length, c.walks_per_node, c.window, c.negatives, c.p, c.q, c.dim,
                c.epochs, c.lr, static_cast<unsigned long long>(seed));
  return buf;
}

}  // namespace

void Node2VecConfig::validate() const {
  if (walk_length == 0 || walks_per_node == 0 || window == 0 || negatives == 0 || dim == 0) {
    throw ContractViolation("node2vec: counts must be positive");
  }
  if (!(p > 0.0) || !(q > 0.0)) throw ContractViolation("node2vec: p and q must be positive");
  if (!(lr >= 0.0)) throw ContractViolation("node2vec: learning rate must be non-negative");
}

bool AdjacencyList::adjacent(std::size_t a, std::size_t b) const {
  return std::binary_search(neighbors[a].begin(), neighbors[a].end(), b);
}

AdjacencyList make_adjacency(std::size_t num_nodes,
                             std::span<const std::pair<std::size_t, std::size_t>> edges) {
  AdjacencyList adj;
  adj.neighbors.resize(num_nodes);
  for (const auto& [a, b] : edges) {
    if (a >= num_nodes || b >= num_nodes || a == b) {
      throw ContractViolation("node2vec: invalid edge (" + std::to_string(a) + ", " +
                              std::to_string(b) + ")");
    }
    adj.neighbors[a].push_back(b);
    adj.neighbors[b].push_back(a);
  }
  for (auto& n : adj.neighbors) {
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
  }
  return adj;
}

std::size_t node2vec_step(const AdjacencyList& graph, std::size_t previous, std::size_t current,
                          double p, double q, Rng& rng) {
  const auto& next = graph.neighbors[current];
  if (next.empty()) throw ContractViolation("node2vec_step from an isolated node");
  std::vector<double> cumulative(next.size());
  double total = 0.0;
  for (std::size_t k = 0; k < next.size(); ++k) {
    double w = 1.0 / q;
    if (previous == current) {
      w = 1.0;
    } else if (next[k] == previous) {
      w = 1.0 / p;
    } else if (graph.adjacent(previous, next[k])) {
      w = 1.0;
    }
    total += w;
    cumulative[k] = total;
  }
  return next[sample_cumulative(cumulative, rng)];
}

std::vector<Walk> node2vec_walks(const AdjacencyList& graph, const Node2VecConfig& config,
                                 Rng& rng) {
  config.validate();
  std::vector<Walk> walks;
  walks.reserve(graph.size() * config.walks_per_node);
  for (std::size_t round = 0; round < config.walks_per_node; ++round) {
    for (std::size_t start = 0; start < graph.size(); ++start) {
      Walk walk{start};
      if (!graph.neighbors[start].empty()) {
        std::size_t previous = start;
        while (walk.size() < config.walk_length) {
          const std::size_t current = walk.back();
          const std::size_t next = node2vec_step(graph, previous, current, config.p, config.q, rng);
          previous = current;
          walk.push_back(next);
        }
      }
      walks.push_back(std::move(walk));
    }
  }
  return walks;
}

std::vector<std::pair<std::size_t, std::size_t>> skipgram_pairs(const Walk& walk,
                                                                 std::size_t window) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const std::size_t lo = i >= window ? i - window : 0;
    const std::size_t hi = std::min(walk.size() - 1, i + window);
    for (std::size_t j = lo; j <= hi; ++j) {
      if (j != i) pairs.emplace_back(walk[i], walk[j]);
    }
  }
  return pairs;
}

SkipGramResult skipgram_train(std::span<const Walk> walks, std::size_t num_nodes,
                              const Node2VecConfig& config, Rng& rng) {
  config.validate();
  const std::size_t d = config.dim;
  std::vector<double> init(num_nodes * d);
  for (double& v : init) v = rng.uniform(-0.5, 0.5) / static_cast<double>(d);
  ad::Tensor input = ad::Tensor::from(ad::Shape{num_nodes, d}, std::move(init), true);
  ad::Tensor output = ad::Tensor::zeros(ad::Shape{num_nodes, d}, true);

  std::vector<double> cumulative(num_nodes, 0.0);
  {
    std::vector<double> counts(num_nodes, 0.0);
    for (const Walk& w : walks) {
      for (std::size_t v : w) {
        if (v >= num_nodes) throw ContractViolation("skip-gram: walk node out of range");
        counts[v] += 1.0;
      }
    }
    double total = 0.0;
    for (std::size_t v = 0; v < num_nodes; ++v) {
      total += std::pow(counts[v], 0.75);
      cumulative[v] = total;
    }
  }

  SkipGramResult result;
  double average = std::nan("");
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    double epoch_loss = 0.0;
    std::size_t epoch_pairs = 0;
    for (const Walk& walk : walks) {
      const auto pairs = skipgram_pairs(walk, config.window);
      if (pairs.empty()) continue;
      std::vector<std::size_t> centers;
      std::vector<std::size_t> contexts;
      std::vector<std::size_t> neg_centers;
      std::vector<std::size_t> negatives;
      for (const auto& [c, x] : pairs) {
        centers.push_back(c);
        contexts.push_back(x);
        for (std::size_t k = 0; k < config.negatives; ++k) {
          neg_centers.push_back(c);
          negatives.push_back(sample_cumulative(cumulative, rng));
        }
      }
      ad::Tape tape;
      const ad::Tensor pos = tape.row_sum(
          tape.mul(tape.gather_rows(input, centers), tape.gather_rows(output, contexts)));
      const ad::Tensor neg = tape.row_sum(
          tape.mul(tape.gather_rows(input, neg_centers), tape.gather_rows(output, negatives)));
      const ad::Tensor objective =
          tape.add(tape.sum(tape.log_sigmoid(pos)),
                   tape.sum(tape.log_sigmoid(tape.mul_scalar(neg, -1.0))));
      const ad::Tensor loss = tape.mul_scalar(objective, -1.0);
      tape.backward(loss);

      for (ad::Tensor* t : {&input, &output}) {
        if (!t->has_grad()) continue;
        auto values = t->mutable_values();
        const auto grad = t->grad_buffer();
        for (std::size_t i = 0; i < values.size(); ++i) values[i] -= config.lr * grad[i];
        t->zero_grad();
      }
      const double per_pair = loss.item() / static_cast<double>(pairs.size());
      average = std::isnan(average) ? per_pair
                                    : average + kMovingAverageRate * (per_pair - average);
      epoch_loss += loss.item();
      epoch_pairs += pairs.size();
    }
    result.epoch_loss.push_back(epoch_pairs ? epoch_loss / static_cast<double>(epoch_pairs) : 0.0);
    result.moving_average.push_back(average);
  }
  result.embeddings = input.to_matrix();
  return result;
}

model::MainGraphState node2vec_meta_features(std::span<const nn::FeatureGraph> drugs,
                                             std::span<const nn::FeatureGraph> targets,
                                             const Node2VecConfig& config, std::uint64_t seed,
                                             const std::filesystem::path& cache_dir) {
  config.validate();
  std::filesystem::path dir;
  if (!cache_dir.empty()) {
    dir = cache_dir / cache_signature(config, seed);
    std::filesystem::create_directories(dir);
  }
  auto pooled = [&](const nn::FeatureGraph& g, const std::string& name, std::uint64_t stream) {
    const std::vector<double> fingerprint{static_cast<double>(g.features.rows()),
                                          static_cast<double>(g.edges.size())};
    const std::filesystem::path file = dir.empty() ? dir : dir / (name + ".gckpt");
    if (!file.empty() && std::filesystem::exists(file)) {
      try {
        const auto arrays = ad::read_container(file);
        if (arrays.size() == 2 && arrays[1].data == fingerprint &&
            arrays[0].data.size() == config.dim) {
          return arrays[0].data;
        }
      } catch (const std::exception&) {
        // Unreadable cache entries are recomputed.
      }
    }
    std::vector<double> row = mean_rows(embed_molecule(g, config, derive_seed(seed, stream)));
    if (!file.empty()) {
      const std::vector<ad::NamedArray> arrays{{"embedding", {1, config.dim}, row},
                                               {"fingerprint", {1, 2}, fingerprint}};
      ad::write_container(file, arrays);
    }
    return row;
  };

  model::MainGraphState s{Matrix(drugs.size(), config.dim), Matrix(targets.size(), config.dim)};
  for (std::size_t k = 0; k < drugs.size(); ++k) {
    const auto row = pooled(drugs[k], "drug_" + std::to_string(k), k);
    std::copy(row.begin(), row.end(), s.drugs.row(k).begin());
  }
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const auto row = pooled(targets[k], "target_" + std::to_string(k), drugs.size() + k);
    std::copy(row.begin(), row.end(), s.targets.row(k).begin());
  }
  return s;
}

}  // namespace gig::baselines
