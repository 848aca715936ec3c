// SPDX-License-Identifier: Apache-2.0

#include "gig/cli/app.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "gig/ad/container.hpp"
#include "gig/cli/gradcheck_suite.hpp"
#include "gig/cli/report.hpp"
#include "gig/cli/run.hpp"
#include "gig/data/cache.hpp"
#include "gig/data/fetch.hpp"
#include "gig/data/hash.hpp"
#include "gig/data/synthetic.hpp"
#include "gig/error.hpp"
#include "gig/model/architecture.hpp"

namespace gig::cli {

namespace {

// Flags shared by train and baseline. Unset flags leave the config-file or
// default value in place.
struct ModelFlags {
  std::string cache;
  std::string out = "runs";
  std::optional<std::string> run_id;
  std::optional<std::string> config_file;
  std::optional<std::string> split;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> epochs;
  std::optional<double> lr;
  std::optional<double> dropout;
  std::optional<std::size_t> hidden_dim;
  std::optional<std::size_t> embedding_dim;
  std::optional<std::size_t> heads;
  std::optional<std::size_t> batch_size;
  std::optional<std::size_t> patience;
  std::optional<std::size_t> negative_warmup;
  std::optional<double> supervision_fraction;
  std::optional<std::size_t> drug_layers;
  std::optional<std::size_t> target_layers;
  std::optional<std::size_t> main_layers;
  std::optional<double> threshold;

  void attach(CLI::App& cmd) {
    cmd.add_option("--cache", cache, "graph cache written by 'gig prepare'")->required();
    cmd.add_option("--out", out, "directory receiving runs/<run_id>/")->capture_default_str();
    cmd.add_option("--run-id", run_id, "run directory name (default derived from the config)");
    cmd.add_option("--config", config_file, "JSON config file (flags override its values)");
    cmd.add_option("--split", split, "train:val:test ratio summing to 10, e.g. 7:1:2");
    cmd.add_option("--seed", seed, "seed for the split, initialisation and sampling");
    cmd.add_option("--epochs", epochs, "maximum training epochs");
    cmd.add_option("--lr", lr, "Adam learning rate");
    cmd.add_option("--dropout", dropout, "dropout probability");
    cmd.add_option("--hidden-dim", hidden_dim, "hidden layer width");
    cmd.add_option("--embedding-dim", embedding_dim, "meta-node embedding width");
    cmd.add_option("--heads", heads, "GAT attention heads");
    cmd.add_option("--batch-size", batch_size, "molecules per encoder batch");
    cmd.add_option("--patience", patience, "early-stopping patience in epochs (0 disables)");
    cmd.add_option("--negative-warmup", negative_warmup,
                   "epochs of uniformly sampled negatives before hard-negative mining");
    cmd.add_option("--supervision-fraction", supervision_fraction,
                   "share of training positives hidden from message passing each epoch");
    cmd.add_option("--drug-layers", drug_layers, "drug encoder depth");
    cmd.add_option("--target-layers", target_layers, "target encoder depth");
    cmd.add_option("--main-layers", main_layers, "interaction graph depth (at least 2)");
    cmd.add_option("--threshold", threshold, "decision threshold for F1 and MCC");
  }

  // defaults < GIG_SEED < config file < flags
  RunSpec resolve(RunSpec spec) const {
    if (const char* env = std::getenv("GIG_SEED"); env && *env) {
      try {
        std::size_t used = 0;
        spec.model.seed = std::stoull(env, &used);
        if (used != std::string_view(env).size()) throw std::invalid_argument(env);
      } catch (const std::exception&) {
        throw UsageError(std::string("GIG_SEED must be a non-negative integer, got '") + env + "'");
      }
    }
    if (config_file) {
      try {
        spec = spec_from_json(data::read_file(*config_file), spec);
      } catch (const FormatError& e) {
        throw UsageError(*config_file + ": " + e.what());
      }
    }
    spec.cache = cache;
    if (split) spec.split = *split;
    auto& m = spec.model;
    if (seed) m.seed = *seed;
    if (epochs) m.max_epochs = *epochs;
    if (lr) m.lr = *lr;
    if (dropout) m.dropout = *dropout;
    if (hidden_dim) m.hidden_dim = *hidden_dim;
    if (embedding_dim) m.embedding_dim = *embedding_dim;
    if (heads) m.heads = *heads;
    if (batch_size) m.batch_size = *batch_size;
    if (patience) m.patience = *patience;
    if (negative_warmup) m.negative_warmup = *negative_warmup;
    if (supervision_fraction) m.supervision_fraction = *supervision_fraction;
    if (drug_layers) m.drug_layers = *drug_layers;
    if (target_layers) m.target_layers = *target_layers;
    if (main_layers) m.main_layers = *main_layers;
    if (threshold) m.threshold = *threshold;
    return spec;
  }
};

void check_spec(const RunSpec& spec) {
  try {
    spec.validate();
  } catch (const ContractViolation& e) {
    throw UsageError(e.what());
  } catch (const FormatError& e) {
    throw UsageError(e.what());
  }
}

std::string fixed(const std::optional<double>& v) {
  if (!v) return "undefined";
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << *v;
  return s.str();
}

void launch(const RunSpec& spec, const ModelFlags& flags, std::ostream& out) {
  check_spec(spec);
  const data::GraphDataset data = data::load_cache(spec.cache);
  const std::filesystem::path dir =
      std::filesystem::path(flags.out) / flags.run_id.value_or(default_run_id(spec));
  spdlog::info("run {} ({})", dir.string(), method_label(spec));
  const RunArtifacts a = execute_run(spec, data, dir);
  out << "run " << dir.string() << '\n'
      << "method " << method_label(spec) << '\n'
      << "epochs " << a.fit.log.size() << " best_epoch " << a.fit.best_epoch << '\n'
      << "test roc_auc=" << fixed(a.test.roc_auc) << " auc_pr=" << fixed(a.test.auprc)
      << " f1=" << fixed(a.test.f1) << " mcc=" << fixed(a.test.mcc) << '\n';
}

}  // namespace

int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"gig: hierarchical graph models for drug-target interaction prediction", "gig"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "gig 0.1.0");

  // prepare
  std::string raw_dir;
  std::string cache_dir;
  double tau = 0.5;
  auto* prepare = app.add_subcommand("prepare", "build the drug/target graph cache from raw data");
  prepare->add_option("--raw", raw_dir, "raw data directory")->required();
  prepare->add_option("--cache", cache_dir, "cache directory")->required();
  prepare->add_option("--tau", tau, "contact-probability threshold")->capture_default_str();

  // fetch
  std::string manifest;
  auto* fetch = app.add_subcommand("fetch", "download raw files listed in a manifest");
  fetch->add_option("--manifest", manifest, "JSON manifest of files, URLs and checksums")->required();
  fetch->add_option("--raw", raw_dir, "destination raw directory")->required();

  // synth
  data::SyntheticConfig synth_config;
  auto* synth = app.add_subcommand("synth", "write a synthetic planted-motif dataset in raw layout");
  synth->add_option("--raw", raw_dir, "destination raw directory")->required();
  synth->add_option("--drugs", synth_config.num_drugs, "number of drugs")->capture_default_str();
  synth->add_option("--targets", synth_config.num_targets, "number of targets")->capture_default_str();
  synth->add_option("--classes", synth_config.num_classes, "interaction classes (motif pairs)")->capture_default_str();
  synth->add_option("--seed", synth_config.seed, "generator seed")->capture_default_str();

  // train
  ModelFlags train_flags;
  std::optional<std::string> arch;
  auto* train = app.add_subcommand("train", "train a GiG model");
  train_flags.attach(*train);
  train->add_option("--arch", arch, "architecture: " + std::string(model::kArchitectureGrammar));

  // baseline
  ModelFlags baseline_flags;
  std::string kind;
  std::optional<std::size_t> n2v_epochs;
  auto* baseline = app.add_subcommand("baseline", "train a flat-graph baseline");
  baseline_flags.attach(*baseline);
  baseline->add_option("--kind", kind, "dti-gcn, dti-gat, n2v-gcn or n2v-gat")->required();
  baseline->add_option("--n2v-epochs", n2v_epochs, "Node2Vec training epochs (5 or 10)");

  // report
  std::string runs_dir;
  std::string format = "csv";
  std::optional<std::string> plots;
  auto* report = app.add_subcommand("report", "aggregate run reports");
  report->add_option("--runs", runs_dir, "directory of run directories")->required();
  report->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  report->add_option("--plots", plots, "write ROC and PR curves as SVG into this directory");

  // gradcheck
  std::string scale = "tiny";
  double corrupt = 1.0;
  auto* gradcheck = app.add_subcommand("gradcheck", "finite-difference gradient checks");
  gradcheck->add_option("--scale", scale, "tiny or small")
      ->check(CLI::IsMember({"tiny", "small"}))
      ->capture_default_str();
  gradcheck->add_option("--corrupt-gradient", corrupt,
                        "multiply analytic gradients by this factor (self-test of the checker)");

  // export-embeddings
  std::string run_dir;
  std::string out_file;
  auto* exporter = app.add_subcommand("export-embeddings", "write final meta-node embeddings as CSV");
  exporter->add_option("--run", run_dir, "finished run directory")->required();
  exporter->add_option("--out", out_file, "output CSV path")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*prepare) {
      const auto status = data::prepare_cache(raw_dir, cache_dir, tau);
      out << status.summary.str() << '\n';
      out << "drug graphs " << (status.drugs_rebuilt ? "rebuilt" : "cached") << ", target graphs "
          << (status.targets_rebuilt ? "rebuilt" : "cached") << '\n';
    } else if (*fetch) {
      const auto r = data::fetch(data::load_fetch_manifest(manifest), raw_dir);
      for (const auto& k : r.downloaded) out << "downloaded " << k << '\n';
      for (const auto& k : r.skipped) out << "verified " << k << '\n';
    } else if (*synth) {
      const auto d = data::write_synthetic_raw(raw_dir, synth_config);
      out << "drugs=" << d.drug_ids.size() << " targets=" << d.target_ids.size()
          << " interactions=" << d.interactions << '\n';
    } else if (*train) {
      RunSpec spec = train_flags.resolve({});
      if (arch) {
        try {
          spec.model.arch = model::parse_architecture(*arch);
        } catch (const FormatError& e) {
          throw UsageError(e.what());
        }
      }
      if (spec.method != Method::kGig) throw UsageError("config method must be gig for 'gig train'");
      launch(spec, train_flags, out);
    } else if (*baseline) {
      RunSpec spec;
      try {
        spec.method = parse_method(kind);
      } catch (const FormatError& e) {
        throw UsageError(e.what());
      }
      if (spec.method == Method::kGig) throw UsageError("use 'gig train' for GiG models");
      spec = baseline_flags.resolve(spec);
      spec.method = parse_method(kind);
      if (n2v_epochs) spec.n2v_epochs = *n2v_epochs;
      const bool gcn = spec.method == Method::kDtiGcn || spec.method == Method::kN2vGcn;
      spec.model.arch.main = gcn ? nn::LayerKind::kGcn : nn::LayerKind::kGat;
      launch(spec, baseline_flags, out);
    } else if (*report) {
      if (!std::filesystem::is_directory(runs_dir)) throw UsageError("no such runs directory: " + runs_dir);
      const auto rows = collect_reports(runs_dir);
      if (rows.empty()) throw UsageError("no run reports under " + runs_dir);
      out << (format == "json" ? report_json(rows) : report_csv(rows));
      if (plots) {
        const std::size_t n = write_plots(runs_dir, rows, *plots);
        spdlog::info("wrote {} plots to {}", n, *plots);
      }
    } else if (*gradcheck) {
      ad::GradcheckOptions options;
      options.analytic_scale = corrupt;
      const auto result = run_gradcheck_suite(scale, options);
      for (const auto& l : result.lines) {
        out << std::left << std::setw(34) << l.name << " max_rel_error=" << std::scientific
            << std::setprecision(3) << l.max_rel_error << " tol=" << l.tolerance << " entries="
            << std::defaultfloat << l.entries << ' ' << (l.pass ? "PASS" : "FAIL") << '\n';
      }
      out << (result.passed() ? "gradcheck PASS" : "gradcheck FAIL") << " in " << std::fixed
          << std::setprecision(2) << result.seconds << " s\n";
      if (!result.passed()) return kExitNumeric;
    } else if (*exporter) {
      ad::write_file_atomically(out_file, export_embeddings(run_dir));
      out << "wrote " << out_file << '\n';
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const ContractViolation& e) {
    err << "internal check failed: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace gig::cli
