// Copyright 2026 The SVP Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "svp/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "svp/config.hpp"
#include "svp/export.hpp"
#include "svp/forgetting.hpp"
#include "svp/harness.hpp"
#include "svp/kcenters.hpp"
#include "svp/ranking.hpp"
#include "svp/rng.hpp"
#include "svp/scoring.hpp"
#include "svp/synthetic.hpp"
#include "svp/tensor_io.hpp"

namespace svp {

namespace {

// Raised for argument combinations CLI11 cannot express; maps to exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SVP_SEED")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (*env != '\0' && end != nullptr && *end == '\0') return v;
    throw UsageError("SVP_SEED is not an unsigned integer");
  }
  return 0;
}

bool is_tensor_path(const std::string& p) {
  return std::filesystem::path(p).extension() == ".svpt";
}

struct ScoreArgs {
  std::string method, probs, out;
};

void run_score(const ScoreArgs& a) {
  const auto metric = parse_uncertainty_metric(a.method);
  const auto probs = validate_prob_matrix(read_tensor(a.probs));
  const auto scores = uncertainty(probs, *metric);
  if (is_tensor_path(a.out)) {
    write_tensor(scores_to_tensor(scores), a.out);
  } else {
    write_text_atomic(a.out, scores_to_csv(scores));
  }
}

struct KCentersArgs {
  std::string features, initial, out;
  std::optional<std::size_t> initial_size, budget;
  std::optional<std::uint64_t> seed;
};

void run_kcenters(const KCentersArgs& a) {
  if (a.initial.empty() == !a.initial_size) {
    throw UsageError("kcenters needs exactly one of --initial or --initial-size");
  }
  const auto x = read_tensor(a.features);
  IndexList start;
  if (a.initial_size) {
    if (*a.initial_size == 0 || *a.initial_size > x.rows()) {
      throw std::invalid_argument("--initial-size must lie in [1, " + std::to_string(x.rows()) + "]");
    }
    IndexList all(x.rows());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    start = random_select(all, *a.initial_size, resolve_seed(a.seed));
  } else {
    start = read_index_list(a.initial);
  }
  std::sort(start.begin(), start.end());
  start.erase(std::unique(start.begin(), start.end()), start.end());
  const std::size_t budget = a.budget ? *a.budget : x.rows() - std::min(x.rows(), start.size());
  write_text_atomic(a.out, kcenters_to_csv(greedy_kcenters(x, start, budget)));
}

struct ForgetArgs {
  std::string log, out;
  std::optional<std::size_t> select;
};

void run_forget(const ForgetArgs& a, std::ostream& out) {
  const auto log = std::filesystem::path(a.log).extension() == ".csv" ? read_train_log_csv(a.log)
                                                                      : read_train_log(a.log);
  const auto scores = process_log(log);
  IndexList picked;
  if (a.select) picked = select_most_forgotten(scores, *a.select);
  write_text_atomic(a.out, forgetting_to_csv(scores));
  for (std::size_t i : picked) out << i << '\n';
}

struct CorrelateArgs {
  std::string a, b;
  bool ranks = false;
};

void run_correlate(const CorrelateArgs& args, std::ostream& out) {
  const char* column = args.ranks ? "rank" : "score";
  const auto a = read_keyed_values(args.a, column);
  const auto b = read_keyed_values(args.b, column);
  if (a.size() != b.size()) {
    throw std::invalid_argument("inputs cover different numbers of examples (" +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
  ScoreVector va(a.size()), vb(b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].first != b[k].first) {
      throw std::invalid_argument("inputs cover different example ids");
    }
    // rank 1 is the top pick, so negate to keep "higher = first"
    va[k] = args.ranks ? -a[k].second : a[k].second;
    vb[k] = args.ranks ? -b[k].second : b[k].second;
  }
  const double s = spearman(va, vb);
  const double p = pearson(va, vb);
  char line[128];
  std::snprintf(line, sizeof line, "spearman=%.6f pearson=%.6f n=%zu", s, p, va.size());
  out << line << '\n';
}

void run_harness(const std::string& task, const std::string& config_path, std::ostream& out) {
  const auto cfg = load_run_config(config_path);
  if (cfg.task != task) {
    throw UsageError("config task is \"" + cfg.task + "\" but the subcommand is " + task);
  }
  const auto report = execute(cfg);
  write_run_outputs(report, cfg.output);
  out << "target_test_error=" << format_real(report.target_test_error)
      << " selection_seconds=" << format_real(report.selection_seconds) << '\n';
}

struct SynthArgs {
  SyntheticParams params;
  std::optional<std::uint64_t> seed;
  std::string out_features, out_labels, out_test_features, out_test_labels;
};

void run_synth(SynthArgs a) {
  a.params.seed = resolve_seed(a.seed);
  const auto d = make_synthetic(a.params);
  if (a.out_test_features.empty() != a.out_test_labels.empty()) {
    throw UsageError("--out-test-features and --out-test-labels go together");
  }
  write_tensor(d.train.features, a.out_features);
  write_labels(d.train.labels, a.out_labels);
  if (!a.out_test_features.empty()) {
    write_tensor(d.test.features, a.out_test_features);
    write_labels(d.test.labels, a.out_test_labels);
  }
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Data selection via proxy models", args.empty() ? "svp" : args.front()};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  ScoreArgs score;
  auto* score_cmd = app.add_subcommand("score", "Uncertainty scores from a probability tensor");
  score_cmd->add_option("--method", score.method, "confidence | entropy | margin")
      ->required()
      ->check(CLI::IsMember({"confidence", "entropy", "margin"}));
  score_cmd->add_option("--probs", score.probs, "n x c SVPT of class probabilities")->required();
  score_cmd->add_option("--out", score.out, "Scores (.csv or 1-column .svpt)")->required();

  KCentersArgs kc;
  auto* kc_cmd = app.add_subcommand("kcenters", "Greedy k-centers selection order");
  kc_cmd->add_option("--features", kc.features, "n x d SVPT of embeddings")->required();
  auto* kc_initial = kc_cmd->add_option("--initial", kc.initial, "File of initial example ids");
  auto* kc_size =
      kc_cmd->add_option("--initial-size", kc.initial_size, "Start from K seeded-random examples");
  kc_initial->excludes(kc_size);
  kc_cmd->add_option("--budget", kc.budget, "Points to add (default: all remaining)");
  kc_cmd->add_option("--seed", kc.seed, "Seed for --initial-size (default: $SVP_SEED or 0)");
  kc_cmd->add_option("--out", kc.out, "CSV rank,example_id,min_dist")->required();

  ForgetArgs fg;
  auto* fg_cmd = app.add_subcommand("forget", "Forgetting events from a training log");
  fg_cmd->add_option("--log", fg.log, "SVPL log or CSV example_id,epoch,correct")->required();
  fg_cmd->add_option("--out", fg.out, "CSV example_id,never_learned,count")->required();
  fg_cmd->add_option("--select", fg.select, "Print the M most-forgotten ids to stdout");

  CorrelateArgs corr;
  auto* corr_cmd = app.add_subcommand("correlate", "Spearman and Pearson between two score files");
  corr_cmd->add_option("--a", corr.a, "Scores (CSV example_id,score or 1-column SVPT)")->required();
  corr_cmd->add_option("--b", corr.b, "Scores (CSV example_id,score or 1-column SVPT)")->required();
  corr_cmd->add_flag("--ranks", corr.ranks, "Inputs are selection orders (CSV with rank column)");

  std::string al_config, coreset_config;
  auto* al_cmd = app.add_subcommand("al", "Run batch active learning from a JSON config");
  al_cmd->add_option("--config", al_config, "Run config (JSON)")->required();
  auto* cs_cmd = app.add_subcommand("coreset", "Run core-set selection from a JSON config");
  cs_cmd->add_option("--config", coreset_config, "Run config (JSON)")->required();

  SynthArgs syn;
  auto* syn_cmd = app.add_subcommand("synth", "Generate a Gaussian-blob dataset");
  syn_cmd->add_option("--classes", syn.params.classes, "Number of classes")->capture_default_str();
  syn_cmd->add_option("--dim", syn.params.dim, "Feature dimension")->capture_default_str();
  syn_cmd->add_option("--separation", syn.params.separation, "Closest distance between class means")
      ->capture_default_str();
  syn_cmd->add_option("--noise", syn.params.noise, "Per-coordinate noise std")->capture_default_str();
  syn_cmd->add_option("--train-size", syn.params.train_size, "Training examples")->capture_default_str();
  syn_cmd->add_option("--test-size", syn.params.test_size, "Test examples")->capture_default_str();
  syn_cmd->add_option("--seed", syn.seed, "Seed (default: $SVP_SEED or 0)");
  syn_cmd->add_option("--out-features", syn.out_features, "Training features (SVPT)")->required();
  syn_cmd->add_option("--out-labels", syn.out_labels, "Training labels (n x 1 SVPT)")->required();
  syn_cmd->add_option("--out-test-features", syn.out_test_features, "Test features (SVPT)");
  syn_cmd->add_option("--out-test-labels", syn.out_test_labels, "Test labels (n x 1 SVPT)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("svp");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (score_cmd->parsed()) run_score(score);
    else if (kc_cmd->parsed()) run_kcenters(kc);
    else if (fg_cmd->parsed()) run_forget(fg, out);
    else if (corr_cmd->parsed()) run_correlate(corr, out);
    else if (al_cmd->parsed()) run_harness("al", al_config, out);
    else if (cs_cmd->parsed()) run_harness("coreset", coreset_config, out);
    else if (syn_cmd->parsed()) run_synth(syn);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace svp
