// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "gig/error.hpp"
#include "gig/model/architecture.hpp"
#include "gig/model/dti_graph.hpp"
#include "gig/model/dti_model.hpp"
#include "test_support.hpp"

namespace gig::model {
namespace {

using nn::LayerKind;

GigConfig small_config(std::string_view arch = "[GCN-GAT][GAT]") {
  GigConfig c;
  c.arch = parse_architecture(arch);
  c.drug_layers = 2;
  c.target_layers = 2;
  c.hidden_dim = 6;
  c.embedding_dim = 5;
  c.heads = 2;
  c.batch_size = 3;
  return c;
}

std::vector<nn::FeatureGraph> graphs(std::size_t count, std::size_t dim, Rng& rng) {
  std::vector<nn::FeatureGraph> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(test::random_feature_graph(1 + rng.below(7), dim, rng));
  return out;
}

TEST(Architecture, ParsesTableNotation) {
  const auto a = parse_architecture("[GCN-GAT][GCN]");
  EXPECT_EQ(a.drug, LayerKind::kGcn);
  EXPECT_EQ(a.target, LayerKind::kGat);
  EXPECT_EQ(a.main, LayerKind::kGcn);
  EXPECT_EQ(a.str(), "[GCN-GAT][GCN]");
  EXPECT_EQ(parse_architecture(" [ gat - gat ] [ gat ] ").str(), "[GAT-GAT][GAT]");
}

TEST(Architecture, RejectsMalformedWithGrammar) {
  for (const char* bad : {"GCN-GCN-GAT", "[GCN][GAT]", "[GCN-SAGE][GAT]", "[GCN-GCN][GAT", ""}) {
    try {
      parse_architecture(bad);
      ADD_FAILURE() << bad;
    } catch (const FormatError& e) {
      EXPECT_NE(std::string(e.what()).find(kArchitectureGrammar), std::string::npos);
    }
  }
}

TEST(Config, JsonRoundTripAndOverlay) {
  GigConfig c = small_config();
  c.lr = 3e-3;
  c.negative_warmup = 7;
  c.supervision_fraction = 0.25;
  c.seed = 99;
  const GigConfig back = config_from_json(config_to_json(c));
  EXPECT_EQ(config_to_json(back), config_to_json(c));

  const GigConfig overlay = config_from_json(R"({"lr": 0.5, "arch": "[GAT-GAT][GCN]"})", c);
  EXPECT_EQ(overlay.lr, 0.5);
  EXPECT_EQ(overlay.arch.str(), "[GAT-GAT][GCN]");
  EXPECT_EQ(overlay.seed, 99u);
  EXPECT_THROW(config_from_json(R"({"learning_rate": 1})"), FormatError);
  EXPECT_THROW(config_from_json("[1]"), FormatError);
  EXPECT_THROW(config_from_json(R"({"lr": "fast"})"), FormatError);
}

TEST(Config, ValidatesRanges) {
  GigConfig c;
  EXPECT_NO_THROW(c.validate());
  c.main_layers = 1;
  EXPECT_THROW(c.validate(), ContractViolation);
  c = GigConfig{};
  c.dropout = 1.0;
  EXPECT_THROW(c.validate(), ContractViolation);
  c = GigConfig{};
  c.supervision_fraction = 1.5;
  EXPECT_THROW(c.validate(), ContractViolation);
}

TEST(DtiGraph, SortsAndValidates) {
  const auto g = DtiGraph::make(3, 2, {{2, 1}, {0, 0}, {1, 1}});
  EXPECT_EQ(g.positive_edges, (std::vector<Pair>{{0, 0}, {1, 1}, {2, 1}}));
  EXPECT_TRUE(g.contains({1, 1}));
  EXPECT_FALSE(g.contains({1, 0}));
  EXPECT_THROW(DtiGraph::make(3, 2, {{0, 0}, {0, 0}}), ContractViolation);
  EXPECT_THROW(DtiGraph::make(3, 2, {{3, 0}}), ContractViolation);
  EXPECT_THROW(DtiGraph::make(3, 2, {{0, 2}}), ContractViolation);
}

TEST(DtiGraph, EdgeIndexIsBipartite) {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = 1 + rng.below(10), n = 1 + rng.below(10);
    std::vector<Pair> edges;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (rng.uniform() < 0.3) edges.emplace_back(i, j);
    const auto g = DtiGraph::make(m, n, edges);
    const auto e = g.edge_index();
    EXPECT_EQ(e.num_nodes, m + n);
    EXPECT_EQ(e.num_edges(), 2 * edges.size());
    for (std::size_t k = 0; k < e.num_edges(); ++k) {
      EXPECT_NE(e.src[k] < m, e.dst[k] < m);
    }
    EXPECT_NO_THROW(assert_bipartite(e, m));
  }
  const std::vector<std::pair<std::size_t, std::size_t>> same_side{{0, 1}};
  EXPECT_THROW(assert_bipartite(nn::EdgeIndexGraph::from_undirected(4, same_side), 2),
               ContractViolation);
}

// Recomputes encoder + pooling outside the model for comparison.
Matrix pool_outside(const MolecularEncoder& enc) {
  Matrix out(enc.size(), enc.out_dim());
  Rng unused(0);
  for (std::size_t k = 0; k < enc.size(); ++k) {
    const nn::FeatureGraph* one[] = {&enc.graphs()[k]};
    const auto batch = nn::make_batch(one);
    ad::Tape tape(ad::Tape::Mode::kNoGrad);
    const auto h = enc.stack().forward(tape, batch.graph, ad::Tensor::from(batch.features), false, unused);
    const auto pooled = nn::global_mean_pool(tape, h, batch.graph_ids, 1);
    for (std::size_t f = 0; f < enc.out_dim(); ++f) out(k, f) = pooled.at(0, f);
  }
  return out;
}

TEST(DtiModel, MetaNodesStartFromPooledEncodings) {
  Rng rng(10);
  auto model = DtiModel::hierarchical(small_config(), graphs(5, 4, rng), graphs(4, 3, rng), rng);
  auto& source = dynamic_cast<EncoderFeatureSource&>(model.source());
  Rng unused(0);
  const auto state = model.initial_state(false, unused);
  EXPECT_LT(test::max_abs_diff(state.drugs, pool_outside(source.encoder(Side::kDrug))), 1e-12);
  EXPECT_LT(test::max_abs_diff(state.targets, pool_outside(source.encoder(Side::kTarget))), 1e-12);
}

TEST(DtiModel, EveryParameterReceivesGradient) {
  Rng rng(11);
  auto model = DtiModel::hierarchical(small_config(), graphs(4, 4, rng), graphs(4, 3, rng), rng);
  model.set_interactions(DtiGraph::make(4, 4, {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 3}}));
  // Biases start at zero; move them off so no ReLU sits exactly at its kink.
  for (const auto& [name, t] : model.params().entries()) {
    if (name.ends_with("bias") || name.ends_with(".b1")) {
      for (double& v : ad::Tensor(t).mutable_values()) v = rng.uniform(0.05, 0.2);
    }
  }
  model.params().zero_grad();
  const double loss = model.forward_backward(
      [](const MainGraphState&) {
        return LabeledPairs{{{0, 0}, {1, 2}, {3, 3}, {2, 0}}, {1, 0, 1, 0}};
      },
      false, rng);
  EXPECT_GT(loss, 0.0);
  for (const auto& [name, t] : model.params().entries()) {
    double norm = 0;
    for (double g : t.grad()) norm += g * g;
    EXPECT_GT(norm, 0.0) << name;
  }
}

TEST(DtiModel, ScoresAreProbabilitiesAndDeterministic) {
  Rng rng(12);
  auto model = DtiModel::hierarchical(small_config("[GAT-GCN][GCN]"), graphs(3, 4, rng),
                                      graphs(2, 3, rng), rng);
  model.set_interactions(DtiGraph::make(3, 2, {{0, 0}, {2, 1}}));
  const std::vector<Pair> pairs{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}, {2, 1}};
  const auto a = model.score(pairs);
  const auto b = model.score(pairs);
  EXPECT_EQ(a, b);
  for (double s : a) EXPECT_TRUE(s > 0.0 && s < 1.0);
}

TEST(DtiModel, FixedFeaturesModel) {
  Rng rng(13);
  MainGraphState f{test::random_matrix(3, 4, rng), test::random_matrix(5, 4, rng)};
  auto model = DtiModel::with_features(small_config(), f, rng);
  EXPECT_EQ(model.num_drugs(), 3u);
  EXPECT_EQ(model.num_targets(), 5u);
  EXPECT_THROW(model.score(std::vector<Pair>{{0, 0}}), ContractViolation);
  EXPECT_THROW(model.set_interactions(DtiGraph::make(4, 5, {})), ContractViolation);
  model.set_interactions(DtiGraph::make(3, 5, {{0, 4}}));
  Rng unused(0);
  EXPECT_EQ(model.initial_state(false, unused).drugs, f.drugs);
}

}  // namespace
}  // namespace gig::model
