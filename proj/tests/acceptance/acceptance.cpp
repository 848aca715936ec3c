// SPDX-License-Identifier: Apache-2.0
//
// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>

#include "gig/baselines/baselines.hpp"
#include "gig/chem/smiles.hpp"
#include "gig/cli/gradcheck_suite.hpp"
#include "gig/cli/report.hpp"
#include "gig/cli/run.hpp"
#include "gig/data/cache.hpp"
#include "gig/data/dataset.hpp"
#include "gig/data/hash.hpp"
#include "gig/data/synthetic.hpp"
#include "gig/error.hpp"
#include "gig/metrics/metrics.hpp"
#include "gig/model/trainer.hpp"
#include "gig/nn/layers.hpp"
#include "metric_oracles.hpp"
#include "test_support.hpp"

namespace gig {
namespace {

using Clock = std::chrono::steady_clock;
using Edges = std::vector<std::pair<std::size_t, std::size_t>>;
using model::Pair;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << v;
  return s.str();
}

std::string sci(double v) {
  std::ostringstream s;
  s.precision(2);
  s << std::scientific << v;
  return s.str();
}

data::GraphDataset synthetic_dataset(const test::TempDir& dir, const data::SyntheticConfig& config) {
  data::write_synthetic_raw(dir / "raw", config);
  data::prepare_cache(dir / "raw", dir / "cache", 0.5);
  return data::load_cache(dir / "cache");
}

// 1. Gradient correctness.
Outcome gradients() {
  const auto result = cli::run_gradcheck_suite("tiny");
  Outcome o;
  double worst_op = 0.0, model = 0.0;
  for (const auto& line : result.lines) {
    o.pass = o.pass && line.pass;
    if (line.tolerance == cli::kModelTolerance) {
      model = std::max(model, line.max_rel_error);
    } else {
      worst_op = std::max(worst_op, line.max_rel_error);
    }
  }
  o.pass = o.pass && !result.lines.empty() && result.seconds < 60.0;
  o.detail = std::to_string(result.lines.size()) + " checks, worst op " + sci(worst_op) + ", end-to-end " +
             sci(model) + ", " + fmt(result.seconds, 1) + " s";
  return o;
}

// 2. Metric oracles.
Outcome metric_oracles() {
  Rng rng(2024);
  std::size_t mismatches = 0, undefined = 0;
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const auto inst = test::random_instance(rng);
    const auto& s = inst.scores;
    const auto& y = inst.labels;
    const auto auc = metrics::roc_auc(s, y);
    const auto auc_ref = test::brute_force_auc(s, y);
    const auto ap = metrics::auprc(s, y);
    const auto ap_ref = test::prefix_enumeration_ap(s, y);
    if (auc.has_value() != auc_ref.has_value() || ap.has_value() != ap_ref.has_value()) {
      ++mismatches;
      continue;
    }
    if (!auc) ++undefined;
    if (auc) worst = std::max({worst, std::abs(*auc - *auc_ref), std::abs(*ap - *ap_ref)});
    for (const double threshold : {0.5, 0.0, 1.0}) {
      const auto c = metrics::confusion(s, y, threshold);
      const auto h = test::hand_confusion(s, y, threshold);
      if (c.tp != h.tp || c.fp != h.fp || c.tn != h.tn || c.fn != h.fn ||
          std::abs(metrics::f1(c) - test::hand_f1(h)) > 1e-12 ||
          std::abs(metrics::mcc(c) - test::hand_mcc(h)) > 1e-12) {
        ++mismatches;
      }
    }
  }
  // Degenerate confusion matrices.
  const std::vector<metrics::Confusion> corners{
      {0, 0, 0, 0}, {3, 0, 0, 0}, {0, 3, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, 3}, {2, 2, 0, 0}, {0, 0, 2, 2}};
  for (const auto& c : corners) {
    if (metrics::f1(c) != test::hand_f1(c) || metrics::mcc(c) != test::hand_mcc(c)) ++mismatches;
  }
  Outcome o;
  o.pass = mismatches == 0 && worst <= 1e-12;
  o.detail = "1000 instances (" + std::to_string(undefined) + " single-class), max |diff| " + sci(worst) +
             ", mismatches " + std::to_string(mismatches);
  return o;
}

std::vector<std::string> split_tab(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string part; std::getline(ss, part, '\t');) out.push_back(part);
  return out;
}

// 3. Parser corpus against the reference-toolkit golden file.
Outcome parser_corpus() {
  std::ifstream smi(test::data_dir() / "smiles" / "corpus.smi");
  std::ifstream golden(test::data_dir() / "smiles" / "corpus_golden.tsv");
  std::map<std::string, std::string> smiles;
  for (std::string line; std::getline(smi, line);) {
    const auto f = split_tab(line);
    if (f.size() == 2) smiles[f[0]] = f[1];
  }
  std::string header;
  std::getline(golden, header);
  std::size_t checked = 0;
  std::vector<std::string> failures;
  for (std::string line; std::getline(golden, line);) {
    const auto f = split_tab(line);
    if (f.size() != 5) continue;
    ++checked;
    std::string hydrogens, aromatic;
    std::size_t atoms = 0, bonds = 0;
    try {
      const auto g = chem::build_drug_graph(smiles.at(f[0]));
      atoms = g.atoms.size();
      bonds = g.bonds.size();
      for (const auto& a : g.atoms) {
        hydrogens += (hydrogens.empty() ? "" : ",") + std::to_string(a.total_hydrogens());
        aromatic += a.aromatic ? '1' : '0';
      }
    } catch (const std::exception& e) {
      failures.push_back(f[0] + " (" + e.what() + ")");
      continue;
    }
    if (std::to_string(atoms) != f[1] || std::to_string(bonds) != f[2] || hydrogens != f[3] || aromatic != f[4]) {
      failures.push_back(f[0]);
    }
  }
  Outcome o;
  o.pass = checked == 100 && failures.empty();
  o.detail = std::to_string(checked - failures.size()) + "/" + std::to_string(checked) + " molecules match";
  if (!failures.empty()) o.detail += ", first mismatch " + failures.front();
  return o;
}

// 4. Overfit a 10x10 instance with 15 positives.
Outcome overfit() {
  const auto start = Clock::now();
  test::TempDir dir("gig-overfit");
  data::SyntheticConfig sc;
  sc.num_drugs = 10;
  sc.num_targets = 10;
  sc.num_classes = 5;
  const auto ds = synthetic_dataset(dir, sc);

  Rng pick(15);
  std::vector<Pair> all;
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j) all.emplace_back(i, j);
  for (std::size_t k = 0; k < 15; ++k) std::swap(all[k], all[k + pick.below(all.size() - k)]);
  const std::vector<Pair> positives(all.begin(), all.begin() + 15);

  model::GigConfig config;
  config.arch = model::parse_architecture("[GCN-GCN][GCN]");
  config.dropout = 0.0;
  model::TrainingData td{model::DtiGraph::make(10, 10, positives), {}, {}};
  Rng rng(config.seed);
  auto m = model::DtiModel::hierarchical(config, ds.drugs.graphs, ds.targets.graphs, rng);
  model::Trainer trainer(m, td, rng);

  std::vector<Pair> pairs;
  std::vector<double> labels;
  for (std::size_t i = 0; i < 10; ++i) {
    for (std::size_t j = 0; j < 10; ++j) {
      pairs.emplace_back(i, j);
      labels.push_back(td.train.contains({i, j}) ? 1.0 : 0.0);
    }
  }
  double loss = 1.0, auc = 0.0;
  std::size_t epoch = 0;
  while (epoch < 2000) {
    ++epoch;
    loss = trainer.train_epoch();
    if (loss < 0.05) {
      auc = metrics::roc_auc(m.score(pairs), labels).value_or(0.0);
      if (auc == 1.0) break;
    }
  }
  const double secs = seconds_since(start);
  Outcome o;
  o.pass = loss < 0.05 && auc == 1.0 && secs < 300.0;
  o.detail = "BCE " + fmt(loss) + ", train AUC " + fmt(auc) + " after " + std::to_string(epoch) + " epochs, " +
             fmt(secs, 1) + " s";
  return o;
}

// 5a. GiG against random-feature DTI-GCN on the planted-motif benchmark.
Outcome synthetic_ordering() {
  test::TempDir dir("gig-bench");
  const auto ds = synthetic_dataset(dir, data::SyntheticConfig{});
  cli::RunSpec spec;
  spec.cache = dir / "cache";
  spec.split = "7:1:2";
  spec.model.arch = model::parse_architecture("[GCN-GCN][GCN]");
  spec.model.max_epochs = 300;
  spec.model.patience = 0;
  spec.model.lr = 3e-3;
  spec.model.negative_warmup = 100;
  spec.model.supervision_fraction = 0.3;
  spec.model.hidden_dim = 64;
  spec.model.embedding_dim = 64;

  double gig = 0.0, gcn = 0.0;
  std::string per_seed;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    spec.model.seed = seed;
    spec.method = cli::Method::kGig;
    const double a = cli::execute_run(spec, ds, dir / ("gig" + std::to_string(seed))).test.roc_auc.value_or(0.0);
    spec.method = cli::Method::kDtiGcn;
    const double b = cli::execute_run(spec, ds, dir / ("gcn" + std::to_string(seed))).test.roc_auc.value_or(0.0);
    gig += a / 5;
    gcn += b / 5;
    per_seed += (seed ? " " : "") + fmt(a, 3) + "/" + fmt(b, 3);
  }
  Outcome o;
  o.pass = gig >= gcn + 0.05;
  o.detail = "mean test AUC GiG " + fmt(gig) + " vs DTI-GCN " + fmt(gcn) + " (margin " + fmt(gig - gcn) +
             "; per seed " + per_seed + ")";
  return o;
}

// 5b. The harness runs the full split x method matrix and reports every metric.
Outcome table_matrix() {
  test::TempDir dir("gig-matrix");
  data::SyntheticConfig sc;
  sc.num_drugs = 20;
  sc.num_targets = 20;
  sc.num_classes = 10;
  const auto ds = synthetic_dataset(dir, sc);

  struct Row {
    cli::Method method;
    std::size_t n2v_epochs;
    const char* arch;
  };
  const std::vector<Row> rows{
      {cli::Method::kDtiGcn, 0, "[GCN-GCN][GCN]"}, {cli::Method::kDtiGat, 0, "[GCN-GCN][GAT]"},
      {cli::Method::kN2vGcn, 5, "[GCN-GCN][GCN]"}, {cli::Method::kN2vGcn, 10, "[GCN-GCN][GCN]"},
      {cli::Method::kN2vGat, 5, "[GCN-GCN][GAT]"}, {cli::Method::kN2vGat, 10, "[GCN-GCN][GAT]"},
      {cli::Method::kGig, 0, "[GCN-GCN][GCN]"},    {cli::Method::kGig, 0, "[GAT-GAT][GAT]"},
      {cli::Method::kGig, 0, "[GAT-GAT][GCN]"},    {cli::Method::kGig, 0, "[GCN-GCN][GAT]"},
  };
  std::size_t runs = 0;
  for (const char* split : {"7:1:2", "6:1:3", "5:1:4"}) {
    for (const auto& r : rows) {
      cli::RunSpec spec;
      spec.method = r.method;
      spec.n2v_epochs = r.n2v_epochs;
      spec.cache = dir / "cache";
      spec.split = split;
      spec.model.arch = model::parse_architecture(r.arch);
      spec.model.max_epochs = 2;
      spec.model.hidden_dim = 8;
      spec.model.embedding_dim = 8;
      cli::execute_run(spec, ds, dir / "runs" / cli::default_run_id(spec));
      ++runs;
    }
  }
  const auto reports = cli::collect_reports(dir / "runs");
  const auto json = nlohmann::json::parse(cli::report_json(reports));
  std::set<std::string> methods, splits;
  bool complete = true;
  for (const auto& row : json["summary"]) {
    methods.insert(row["method"].get<std::string>());
    splits.insert(row["split"].get<std::string>());
    for (const char* metric : {"roc_auc", "auc_pr", "f1", "mcc"}) complete = complete && !row[metric].is_null();
  }
  Outcome o;
  o.pass = runs == 30 && json["summary"].size() == 30 && methods.size() == 10 && splits.size() == 3 && complete;
  o.detail = std::to_string(json["runs"].size()) + " runs reported, " + std::to_string(methods.size()) +
             " methods x " + std::to_string(splits.size()) + " splits, all four metrics " +
             (complete ? "present" : "MISSING");
  return o;
}

Matrix run_layer(const nn::GraphLayer& layer, const Edges& edges, std::size_t n, const Matrix& x) {
  ad::Tape tape(ad::Tape::Mode::kNoGrad);
  const auto g = nn::prepare_graph(nn::EdgeIndexGraph::from_undirected(n, edges));
  return layer.forward(tape, g, ad::Tensor::from(x)).to_matrix();
}

// 6. Invariant suites.
Outcome invariants() {
  std::vector<std::string> failed;
  double worst_equivariance = 0.0, worst_pool = 0.0, worst_batch = 0.0;

  for (const auto kind : {nn::LayerKind::kGcn, nn::LayerKind::kGat}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng(seed);
      const std::size_t n = 3 + rng.below(12);
      const auto edges = test::random_edges(n, n, rng);
      ad::ParameterSet params;
      const auto layer = nn::make_layer(kind, params, "l", 5, 4, 2, rng);
      for (const auto& [name, t] : params.entries()) {
        if (name.ends_with("bias")) {
          for (double& v : ad::Tensor(t).mutable_values()) v = rng.uniform(-0.5, 0.5);
        }
      }
      const Matrix x = test::random_matrix(n, 5, rng);
      const auto perm = test::random_permutation(n, rng);
      Edges moved;
      for (const auto& [u, v] : edges) moved.emplace_back(perm[u], perm[v]);
      Matrix px(n, 5);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t f = 0; f < 5; ++f) px(perm[i], f) = x(i, f);
      const Matrix y = run_layer(*layer, edges, n, x);
      const Matrix py = run_layer(*layer, moved, n, px);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t f = 0; f < 4; ++f)
          worst_equivariance = std::max(worst_equivariance, std::abs(py(perm[i], f) - y(i, f)));
    }
  }
  if (worst_equivariance > 1e-12) failed.push_back("equivariance");

  {
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 2 + rng.below(20);
      const std::size_t k = 1 + rng.below(std::min<std::size_t>(n, 5));
      std::vector<std::size_t> ids(n);
      for (std::size_t i = 0; i < n; ++i) ids[i] = i < k ? i : rng.below(k);
      const Matrix x = test::random_matrix(n, 3, rng);
      const auto perm = test::random_permutation(n, rng);
      Matrix px(n, 3);
      std::vector<std::size_t> pids(n);
      for (std::size_t i = 0; i < n; ++i) {
        pids[perm[i]] = ids[i];
        for (std::size_t f = 0; f < 3; ++f) px(perm[i], f) = x(i, f);
      }
      ad::Tape tape(ad::Tape::Mode::kNoGrad);
      const Matrix a = nn::global_mean_pool(tape, ad::Tensor::from(x), ids, k).to_matrix();
      const Matrix b = nn::global_mean_pool(tape, ad::Tensor::from(px), pids, k).to_matrix();
      worst_pool = std::max(worst_pool, test::max_abs_diff(a, b));
    }
  }
  if (worst_pool > 1e-12) failed.push_back("pooling");

  for (const auto kind : {nn::LayerKind::kGcn, nn::LayerKind::kGat}) {
    Rng rng(31);
    std::vector<nn::FeatureGraph> graphs;
    for (int k = 0; k < 70; ++k) graphs.push_back(test::random_feature_graph(1 + rng.below(12), 6, rng));
    ad::ParameterSet params;
    model::MolecularEncoder encoder(params, "enc", std::vector<nn::LayerKind>(3, kind), 8, 5, 2, 0.2, 1, graphs,
                                    rng);
    Rng eval(0);
    const Matrix one = encoder.forward(false, eval);
    encoder.set_batch_size(64);
    worst_batch = std::max(worst_batch, test::max_abs_diff(one, encoder.forward(false, eval)));
  }
  if (worst_batch >= 1e-9) failed.push_back("batching");

  {
    Rng rng(4);
    bool ok = true;
    for (int trial = 0; trial < 50 && ok; ++trial) {
      const std::size_t m = 1 + rng.below(12), n = 1 + rng.below(12);
      std::vector<Pair> edges;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (rng.uniform() < 0.3) edges.emplace_back(i, j);
      const auto e = model::DtiGraph::make(m, n, edges).edge_index();
      try {
        model::assert_bipartite(e, m);
      } catch (const std::exception&) {
        ok = false;
      }
      for (std::size_t k = 0; k < e.num_edges(); ++k) ok = ok && ((e.src[k] < m) != (e.dst[k] < m));
    }
    bool rejects = false;
    try {
      model::assert_bipartite(nn::EdgeIndexGraph::from_undirected(4, Edges{{0, 1}}), 2);
    } catch (const ContractViolation&) {
      rejects = true;
    }
    if (!ok || !rejects) failed.push_back("bipartite");
  }

  std::size_t epochs_checked = 0;
  {
    test::TempDir dir("gig-inv");
    data::SyntheticConfig sc;
    sc.num_drugs = 16;
    sc.num_targets = 16;
    sc.num_classes = 8;
    const auto ds = synthetic_dataset(dir, sc);
    const auto td = data::to_training_data(data::make_splits(ds.interactions, {}, 3), 16, 16);
    model::GigConfig config;
    config.hidden_dim = 16;
    config.embedding_dim = 16;
    config.dropout = 0.2;
    Rng rng(3);
    auto m = model::DtiModel::hierarchical(config, ds.drugs.graphs, ds.targets.graphs, rng);
    model::Trainer trainer(m, td, rng);
    bool ok = true;
    for (int epoch = 0; epoch < 20; ++epoch) {
      trainer.train_epoch();
      const auto& s = trainer.last_stats();
      ok = ok && s.hard && s.min_selected >= s.max_unselected;
      ++epochs_checked;
    }
    if (!ok) failed.push_back("hard-negative dominance");
  }

  {
    Rng rng(0);
    std::vector<Pair> edges;
    for (std::size_t i = 0; i < 30; ++i)
      for (std::size_t j = 0; j < 25; ++j)
        if (rng.uniform() < 0.15) edges.emplace_back(i, j);
    const auto all = model::DtiGraph::make(30, 25, edges);
    bool ok = true;
    for (std::uint64_t seed = 0; seed < 100 && ok; ++seed) {
      const auto s = data::make_splits(all, {}, seed);
      std::vector<Pair> merged = s.train;
      merged.insert(merged.end(), s.val.begin(), s.val.end());
      merged.insert(merged.end(), s.test.begin(), s.test.end());
      std::sort(merged.begin(), merged.end());
      ok = merged == all.positive_edges && s.val.size() == edges.size() / 10 &&
           s.test.size() == edges.size() * 2 / 10;
    }
    if (!ok) failed.push_back("split partition");
  }

  Outcome o;
  o.pass = failed.empty();
  o.detail = "equivariance " + sci(worst_equivariance) + ", pooling " + sci(worst_pool) + ", batching " +
             sci(worst_batch) + ", bipartite, dominance over " + std::to_string(epochs_checked) +
             " epochs, partition over 100 seeds";
  if (!failed.empty()) {
    o.detail += "; failed:";
    for (const auto& f : failed) o.detail += " " + f;
  }
  return o;
}

// 7. Determinism.
Outcome determinism() {
  test::TempDir dir("gig-det");
  data::SyntheticConfig sc;
  sc.num_drugs = 16;
  sc.num_targets = 16;
  sc.num_classes = 8;
  const auto ds = synthetic_dataset(dir, sc);
  cli::RunSpec spec;
  spec.cache = dir / "cache";
  spec.model.max_epochs = 10;
  spec.model.hidden_dim = 16;
  spec.model.embedding_dim = 16;
  spec.model.dropout = 0.2;
  spec.model.seed = 11;
  cli::execute_run(spec, ds, dir / "a");
  cli::execute_run(spec, ds, dir / "b");
  Outcome o;
  for (const char* f : {"config.json", "log.csv", "checkpoint.gckpt"}) {
    const bool same = data::sha256_file(dir / "a" / f) == data::sha256_file(dir / "b" / f);
    o.pass = o.pass && same;
    o.detail += std::string(o.detail.empty() ? "" : ", ") + f + (same ? " identical" : " DIFFERS");
  }
  return o;
}

// 8. Node2Vec sanity.
Outcome node2vec() {
  const auto g = baselines::make_adjacency(5, Edges{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}});
  Rng rng(1);
  constexpr int kSteps = 100000;
  std::map<std::size_t, int> first, second;
  for (int s = 0; s < kSteps; ++s) {
    ++first[baselines::node2vec_step(g, 0, 0, 1.0, 1.0, rng)];
    ++second[baselines::node2vec_step(g, 1, 0, 1.0, 1.0, rng)];
  }
  double worst = 0.0;
  for (std::size_t v = 1; v <= 4; ++v) {
    worst = std::max(worst, std::abs(first[v] / double(kSteps) - 0.25) / 0.25);
    worst = std::max(worst, std::abs(second[v] / double(kSteps) - 0.25) / 0.25);
  }

  Rng walk_rng(4);
  const auto graph = baselines::make_adjacency(30, test::random_edges(30, 20, walk_rng));
  baselines::Node2VecConfig c;
  c.dim = 16;
  c.epochs = 10;
  c.walks_per_node = 4;
  const auto walks = baselines::node2vec_walks(graph, c, walk_rng);
  const auto r = baselines::skipgram_train(walks, 30, c, walk_rng);
  bool decreasing = r.moving_average.size() == 10;
  for (std::size_t e = 1; decreasing && e < r.moving_average.size(); ++e) {
    decreasing = r.moving_average[e] < r.moving_average[e - 1];
  }
  Outcome o;
  o.pass = worst <= 0.02 && decreasing;
  o.detail = "max relative deviation " + fmt(100 * worst, 2) + "% over 1e5 steps, moving average " +
             fmt(r.moving_average.front()) + " -> " + fmt(r.moving_average.back()) +
             (decreasing ? " (strictly decreasing)" : " (NOT decreasing)");
  return o;
}

}  // namespace
}  // namespace gig

int main() {
  spdlog::set_level(spdlog::level::warn);
  struct Criterion {
    const char* name;
    std::function<gig::Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {"1 gradient correctness", gig::gradients},
      {"2 metric oracles", gig::metric_oracles},
      {"3 parser corpus", gig::parser_corpus},
      {"4 overfit oracle", gig::overfit},
      {"5 synthetic ordering", gig::synthetic_ordering},
      {"5 table matrix harness", gig::table_matrix},
      {"6 invariant suites", gig::invariants},
      {"7 determinism", gig::determinism},
      {"8 node2vec sanity", gig::node2vec},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = gig::Clock::now();
    gig::Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << "criterion " << c.name << ": " << o.detail << " ["
              << gig::fmt(gig::seconds_since(start), 1) << " s]" << std::endl;
  }
  std::cout << (failures == 0 ? "all acceptance criteria pass" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
