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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Every threshold is pinned here.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numeric>
#include <string>

#include "oracles.hpp"
#include "svp/config.hpp"
#include "svp/forgetting.hpp"
#include "svp/harness.hpp"
#include "svp/kcenters.hpp"
#include "svp/learner.hpp"
#include "svp/ranking.hpp"
#include "svp/scoring.hpp"
#include "svp/synthetic.hpp"
#include "svp/tensor_io.hpp"
#include "test_util.hpp"

using namespace svp;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

FeatureMatrix grid_matrix(SplitMix64& rng, std::size_t n, std::size_t d) {
  std::vector<float> data(n * d);
  for (float& v : data) v = static_cast<float>(static_cast<int>(rng.below(5)) - 2);
  return FeatureMatrix(n, d, std::move(data));
}

IndexList random_subset(SplitMix64& rng, std::size_t n, std::size_t k) {
  IndexList all(n);
  std::iota(all.begin(), all.end(), 0);
  rng.shuffle(std::span<std::size_t>(all));
  all.resize(k);
  return all;
}

// ---------------------------------------------------------------- 1
constexpr int kOracleInstances = 200;
constexpr double kOracleSeconds = 10.0;

Outcome kcenters_oracle() {
  SplitMix64 rng(0xC1);
  int mismatches = 0;
  for (int t = 0; t < kOracleInstances; ++t) {
    const std::size_t n = 2 + rng.below(63), d = 1 + rng.below(8);
    // half the instances on a small integer grid, where distance ties abound
    const auto x = t % 2 == 0 ? grid_matrix(rng, n, d) : test::random_matrix(rng, n, d);
    const std::size_t k0 = 1 + rng.below(std::min<std::size_t>(n - 1, 8));
    const auto init = random_subset(rng, n, k0);
    const std::size_t budget = rng.below(std::min<std::size_t>(16, n - k0) + 1);
    if (greedy_kcenters(x, init, budget).order != oracle::brute_force_kcenters(x, init, budget)) {
      ++mismatches;
    }
  }
  return {mismatches == 0, fmt("%d/%d exact matches", kOracleInstances - mismatches, kOracleInstances)};
}

// ---------------------------------------------------------------- 2
constexpr int kApproxInstances = 100;
constexpr double kApproxSeconds = 30.0;
constexpr double kApproxSlack = 1e-12;  // relative, for sqrt rounding only

Outcome kcenters_two_approx() {
  SplitMix64 rng(0xC2);
  int violations = 0;
  double worst = 0.0;
  for (int t = 0; t < kApproxInstances; ++t) {
    const std::size_t n = 2 + rng.below(11), d = 1 + rng.below(4);
    const auto x = test::random_matrix(rng, n, d);
    const std::size_t budget = rng.below(std::min<std::size_t>(4, n - 1) + 1);
    const IndexList start{rng.below(n)};
    auto centers = greedy_kcenters(x, start, budget).order;
    centers.push_back(start[0]);
    const double greedy = kcenter_radius(x, centers);
    const double opt = oracle::optimal_kcenter_radius(x, centers.size());
    if (opt > 0) worst = std::max(worst, greedy / opt);
    if (greedy > 2.0 * opt * (1.0 + kApproxSlack)) ++violations;
  }
  return {violations == 0, fmt("%d violations, worst ratio %.4f", violations, worst)};
}

// ---------------------------------------------------------------- 3
constexpr std::size_t kMaxSteps = 12;
constexpr double kForgettingSeconds = 5.0;

Outcome forgetting_equivalence() {
  std::size_t rows_checked = 0, bad = 0;
  for (std::size_t e = 1; e <= kMaxSteps; ++e) {
    const std::size_t rows = std::size_t{1} << e;
    std::vector<std::uint8_t> data(rows * e);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t t = 0; t < e; ++t) data[r * e + t] = (r >> t) & 1U;
    }
    const TrainLog log(rows, e, std::move(data));
    const auto batch = process_log(log);
    const auto reference = serial::process_log(log);
    for (std::size_t r = 0; r < rows; ++r) {
      ForgettingState s;
      for (std::uint8_t c : log.row(r)) s = streaming_update(s, c != 0);
      const auto o = oracle::count_transitions(log.row(r));
      const bool all_zero = r == 0;
      const bool ok = batch[r] == s.score() && batch[r] == reference[r] &&
                      batch[r].never_learned == o.never_learned && batch[r].count == o.count &&
                      batch[r].never_learned == all_zero;
      bad += !ok;
      ++rows_checked;
    }
  }
  return {bad == 0, fmt("%zu rows, %zu disagreements", rows_checked, bad)};
}

// ---------------------------------------------------------------- 4
constexpr double kCorrelationTol = 1e-12;
constexpr int kInvarianceVectors = 100;

Outcome correlation_exactness() {
  std::vector<std::string> failed;
  const auto near = [](double a, double b) { return std::abs(a - b) <= kCorrelationTol; };

  const std::vector<double> a{0.3, -1.2, 4.0, 2.5, 0.0};
  const std::vector<double> neg{-0.3, 1.2, -4.0, -2.5, -0.0};
  if (!near(spearman(a, a), 1.0) || !near(pearson(a, a), 1.0)) failed.push_back("+1");
  if (!near(spearman(a, neg), -1.0) || !near(pearson(a, neg), -1.0)) failed.push_back("-1");

  // ranks [3,1,2] vs [3,2,1]: 1 - 6*2/(3*8)
  const std::vector<double> ra{3, 1, 2}, rb{3, 2, 1};
  if (!near(spearman(ra, rb), 1.0 - 6.0 * 2.0 / 24.0)) failed.push_back("0.5");

  // sum dxdy = 3, sum dx^2 = 2, sum dy^2 = 14/3
  const std::vector<double> x{1, 2, 3}, y{1, 2, 4};
  const double closed = 3.0 / std::sqrt(2.0 * 14.0 / 3.0);
  if (!near(pearson(x, y), closed) || std::abs(closed - 0.981981) > 5e-7) failed.push_back("0.981981");

  SplitMix64 rng(0xC4);
  int invariance_failures = 0;
  for (int t = 0; t < kInvarianceVectors; ++t) {
    const std::size_t n = 3 + rng.below(200);
    std::vector<double> u(n), v(n), fu(n), gv(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = rng.uniform(-2, 2);
      v[i] = 0.5 * u[i] + rng.normal();
      fu[i] = std::exp(u[i]);
      gv[i] = std::atan(v[i]) * 3.0 + 1.0;
    }
    const double s = spearman(u, v);
    if (spearman(fu, v) != s || spearman(u, gv) != s || spearman(fu, gv) != s ||
        !near(s, oracle::spearman_closed_form(u, v))) {
      ++invariance_failures;
    }
  }
  if (invariance_failures) failed.push_back(fmt("%d invariance", invariance_failures));

  std::string detail = failed.empty() ? "endpoints, 0.5, 0.981981 exact; " : "failed:";
  for (const auto& f : failed) detail += " " + f;
  if (failed.empty()) detail += fmt("%d monotone-invariance vectors", kInvarianceVectors);
  return {failed.empty(), detail};
}

// ---------------------------------------------------------------- 5
constexpr int kBinaryMatrices = 100;

Outcome binary_metric_agreement() {
  SplitMix64 rng(0xC5);
  double worst = 1.0;
  for (int t = 0; t < kBinaryMatrices; ++t) {
    const std::size_t n = 2 + rng.below(500);
    std::vector<float> data(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      // q in [0.5, 1] as a float makes 1 - q exact, so rows sum to 1 exactly
      float q = static_cast<float>(rng.uniform(0.5, 1.0));
      if (rng.below(10) == 0) q = 0.5F;
      if (rng.below(10) == 0) q = 1.0F;
      const bool swap = rng.below(2) == 1;
      data[2 * i + (swap ? 1 : 0)] = q;
      data[2 * i + (swap ? 0 : 1)] = 1.0F - q;
    }
    const auto p = validate_prob_matrix(FeatureMatrix(n, 2, std::move(data)));
    const auto conf = least_confidence(p), ent = entropy(p), mar = margin(p);
    // constant rows carry no ranking; every row was forced degenerate only by chance
    if (std::all_of(conf.begin(), conf.end(), [&](double c) { return c == conf[0]; })) continue;
    worst = std::min({worst, spearman(conf, ent), spearman(conf, mar)});
  }
  return {worst == 1.0, fmt("min Spearman %.17g over %d matrices", worst, kBinaryMatrices)};
}

// ---------------------------------------------------------------- 6
constexpr int kGradInstances = 20;
constexpr double kGradStep = 1e-4;
constexpr double kGradTol = 1e-4;
// Components whose |analytic| + |numeric| is below this are compared
// absolutely rather than relatively.
constexpr double kGradFloor = 1e-8;

Outcome gradient_checks() {
  SplitMix64 rng(0xC6);
  double worst_lr = 0, worst_mlp = 0;
  for (int t = 0; t < kGradInstances; ++t) {
    const std::size_t n = 2 + rng.below(7), d = 1 + rng.below(5), c = 2 + rng.below(4);
    const auto x = test::random_matrix(rng, n, d, -2, 2);
    std::vector<std::uint32_t> y(n);
    for (auto& v : y) v = static_cast<std::uint32_t>(rng.below(c));
    const LabelVector labels(y, c);
    IndexList batch(n);
    std::iota(batch.begin(), batch.end(), 0);
    for (bool mlp : {false, true}) {
      LearnerSpec s;
      if (mlp) {
        s.kind = LearnerKind::kMlp;
        s.hidden_units = 1 + rng.below(6);
        s.seed = rng.next();
      }
      auto model = init_model(s, d, c);
      for (double& w : model.params) w += rng.uniform(-0.5, 0.5);
      std::vector<double> g;
      loss_and_gradient(model, x, labels, batch, &g);
      const auto num = oracle::numeric_gradient(model, x, labels, batch, kGradStep);
      const double err = oracle::max_relative_error(g, num, kGradFloor);
      (mlp ? worst_mlp : worst_lr) = std::max(mlp ? worst_mlp : worst_lr, err);
    }
  }
  return {worst_lr < kGradTol && worst_mlp < kGradTol,
          fmt("max relative error logistic %.2e, mlp %.2e", worst_lr, worst_mlp)};
}

// ------------------------------------------------------- shared AL setup
constexpr int kSeeds = 10;

SyntheticDataset mixture(std::uint64_t seed) {
  SyntheticParams p;
  p.classes = 4;
  p.dim = 10;
  p.separation = 3.5;  // closest pair of means, in noise SDs
  p.noise = 1.0;
  p.train_size = 2000;
  p.test_size = 5000;
  p.seed = 0xA1000 + seed;
  return make_synthetic(p);
}

LearnerSpec logistic_proxy() {
  LearnerSpec s;
  s.epochs = 20;
  return s;
}

LearnerSpec mlp_target() {
  LearnerSpec s;
  s.kind = LearnerKind::kMlp;
  s.hidden_units = 32;
  s.epochs = 20;
  return s;
}

AlConfig al_config(double budget, std::uint64_t seed) {
  AlConfig c;
  c.proxy = logistic_proxy();
  c.target = mlp_target();
  c.method = AlMethod::kLeastConfidence;
  c.budget_fraction = budget;
  c.seed = seed;
  return c;
}

// ---------------------------------------------------------------- 7
constexpr double kAlBudget = 0.30;
constexpr int kMinWins = 8;
constexpr double kAlSeconds = 120.0;

Outcome al_beats_random() {
  std::vector<double> svp_err, rnd_err;
  int wins = 0;
  for (int s = 0; s < kSeeds; ++s) {
    const auto d = mixture(s);
    auto cfg = al_config(kAlBudget, s);
    const auto a = run_active_learning(cfg, d.train, d.test);
    cfg.method = AlMethod::kRandom;
    const auto b = run_active_learning(cfg, d.train, d.test);
    svp_err.push_back(a.target_test_error);
    rnd_err.push_back(b.target_test_error);
    wins += a.target_test_error < b.target_test_error;
  }
  const bool pass = mean(svp_err) < mean(rnd_err) && wins >= kMinWins;
  return {pass, fmt("mean error SVP %.4f vs random %.4f, SVP better in %d/%d seeds",
                    mean(svp_err), mean(rnd_err), wins, kSeeds)};
}

// ---------------------------------------------------------------- 8
constexpr double kFidelityBudget = 0.50;
constexpr double kMaxErrorGap = 0.010;  // one absolute percentage point
constexpr double kRerunFraction = 0.8;

Outcome proxy_fidelity() {
  std::vector<double> svp_err, base_err, cross, rerun;
  for (int s = 0; s < kSeeds; ++s) {
    const auto d = mixture(s);
    const auto cfg = al_config(kFidelityBudget, s);
    svp_err.push_back(run_active_learning(cfg, d.train, d.test).target_test_error);
    base_err.push_back(run_classical_active_learning(cfg, d.train, d.test).target_test_error);

    // entropy rankings of the whole pool from models fitted on the whole pool
    const auto pool_entropy = [&](LearnerSpec spec, std::uint64_t phase) {
      spec.seed = derive_seed(0xF1DE + s, phase);
      return entropy(predict_proba(fit(spec, d.train.features, d.train.labels), d.train.features));
    };
    const auto proxy = pool_entropy(cfg.proxy, 0);
    const auto target = pool_entropy(cfg.target, 1);
    const auto target_again = pool_entropy(cfg.target, 2);
    cross.push_back(spearman(proxy, target));
    rerun.push_back(spearman(target, target_again));
  }
  const double gap = std::abs(mean(svp_err) - mean(base_err));
  const double bar = kRerunFraction * mean(rerun);
  const double lowest = *std::min_element(cross.begin(), cross.end());
  const bool pass = gap <= kMaxErrorGap && lowest > 0.0 && lowest >= bar;
  return {pass, fmt("(a) |%.4f - %.4f| = %.2f pp; (b) min proxy-target Spearman %.4f vs 0.8 x "
                    "rerun %.4f = %.4f",
                    mean(svp_err), mean(base_err), 100.0 * gap, lowest, mean(rerun), bar)};
}

// ---------------------------------------------------------------- 9
constexpr double kCoresetFraction = 0.5;
constexpr double kMaxFullGap = 0.010;

Outcome coreset_forgetting() {
  std::vector<double> forg, rnd, full;
  for (int s = 0; s < kSeeds; ++s) {
    // two overlapping classes two noise SDs apart, one far easy class
    const auto d = test::three_blobs(20, 2.0, 10.0, 3, 600, 3000, 0xB1000 + s);
    CoresetConfig cfg;
    cfg.proxy = logistic_proxy();
    cfg.proxy.learning_rate = 0.5;
    cfg.proxy.batch_size = 8;
    cfg.target = mlp_target();
    cfg.method = CoresetMethod::kForgetting;
    cfg.subset_fraction = kCoresetFraction;
    cfg.seed = s;
    cfg.evaluate_full_data = true;
    const auto f = run_coreset(cfg, d.train, d.test);
    cfg.method = CoresetMethod::kRandom;
    cfg.evaluate_full_data = false;
    const auto r = run_coreset(cfg, d.train, d.test);
    forg.push_back(f.target_test_error);
    rnd.push_back(r.target_test_error);
    full.push_back(*f.full_data_test_error);
  }
  const bool pass = mean(forg) <= mean(rnd) && mean(forg) <= mean(full) + kMaxFullGap;
  return {pass, fmt("mean error forgetting %.4f, random %.4f, full data %.4f", mean(forg), mean(rnd),
                    mean(full))};
}

// ---------------------------------------------------------------- 10
Outcome baseline_reduction() {
  int identical = 0, runs = 0;
  for (auto method : {AlMethod::kLeastConfidence, AlMethod::kKCenters}) {
    for (int s = 0; s < 3; ++s) {
      const auto d = mixture(s);
      auto cfg = al_config(kAlBudget, s);
      cfg.method = method;
      cfg.proxy = cfg.target;
      const auto a = run_active_learning(cfg, d.train, d.test);
      const auto b = run_classical_active_learning(cfg, d.train, d.test);
      identical += report_to_json(a).dump() == report_to_json(b).dump() &&
                   report_to_csv(a) == report_to_csv(b);
      ++runs;
    }
  }
  return {identical == runs, fmt("%d/%d reports byte-identical", identical, runs)};
}

// ---------------------------------------------------------------- 11
double sum_phases(const RunReport& r) {
  double s = 0;
  for (const auto& rec : r.rounds) s += rec.times.proxy_fit + rec.times.scoring + rec.times.selection;
  return s;
}

Outcome speedup_accounting() {
  const auto d = mixture(0);
  const auto cfg = al_config(kAlBudget, 0);

  const auto scripted = [](double total) {
    return Clock([calls = 0, total]() mutable { return calls++ == 0 ? 0.0 : total; });
  };
  auto one_round = cfg;
  one_round.schedule = {0.02, 0.28, 0.10};
  const auto fake = compare_selection_runtime(one_round, d.train, d.test, scripted(100.0), scripted(25.0));

  const auto real = compare_selection_runtime(cfg, d.train, d.test, steady_clock_seconds(),
                                              steady_clock_seconds());
  const double b = sum_phases(real.baseline), s = sum_phases(real.svp);
  const double tick = std::chrono::duration<double>(std::chrono::steady_clock::duration(1)).count();
  const double laps = 3.0 * static_cast<double>(real.svp.rounds.size() + real.baseline.rounds.size());
  const double recomputed = b / s;
  // one tick of quantisation per lap, propagated through the ratio
  const double tol = recomputed * laps * tick * (1.0 / b + 1.0 / s);
  const bool pass = fake.speedup == 4.0 && std::abs(real.speedup - recomputed) <= tol;
  return {pass, fmt("scripted %.17gx; real %.6fx vs phase ratio %.6fx (baseline %.3f s, SVP %.3f s)",
                    fake.speedup, real.speedup, recomputed, b, s)};
}

// ---------------------------------------------------------------- 12
constexpr int kRoundTrips = 100;

template <typename Decode>
bool rejects(std::vector<std::uint8_t> bytes, FormatErrorKind want, Decode decode) {
  try {
    decode(bytes);
  } catch (const FormatError& e) {
    return e.kind() == want;
  }
  return false;
}

Outcome file_formats() {
  const auto dir = test::temp_dir("acceptance_formats");
  SplitMix64 rng(0xC12);
  int bad_round_trips = 0;
  for (int t = 0; t < kRoundTrips; ++t) {
    const std::size_t n = 1 + rng.below(64), d = 1 + rng.below(16);
    std::vector<float> data(n * d);
    for (float& v : data) {
      // arbitrary finite bit patterns, including subnormals and -0
      do {
        v = std::bit_cast<float>(static_cast<std::uint32_t>(rng.next()));
      } while (!std::isfinite(v));
    }
    const FeatureMatrix m(n, d, data);
    write_tensor(m, dir / "t.svpt");
    const auto back = read_tensor(dir / "t.svpt");
    bad_round_trips += back.rows() != n || back.cols() != d ||
                       std::memcmp(back.data().data(), data.data(), data.size() * sizeof(float)) != 0;

    const std::size_t e = 1 + rng.below(40);
    std::vector<std::uint8_t> bits(n * e);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.below(2));
    const TrainLog log(n, e, bits);
    write_train_log(log, dir / "l.svpl");
    bad_round_trips += !(read_train_log(dir / "l.svpl") == log);
  }

  const auto t = encode_tensor(test::matrix({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}));
  const auto l = encode_train_log(TrainLog(2, 3, {1, 0, 1, 0, 0, 1}));
  const auto dt = [](std::span<const std::uint8_t> b) { decode_tensor(b); };
  const auto dl = [](std::span<const std::uint8_t> b) { decode_train_log(b); };
  const auto edit = [](std::vector<std::uint8_t> b, std::size_t at, std::uint8_t v) {
    b[at] = v;
    return b;
  };
  const auto cut = [](std::vector<std::uint8_t> b, std::size_t size) {
    b.resize(size);
    return b;
  };
  const auto grow = [](std::vector<std::uint8_t> b) {
    b.push_back(0);
    return b;
  };
  using K = FormatErrorKind;
  const std::vector<std::pair<const char*, bool>> cases{
      {"tensor bad magic", rejects(edit(t, 0, 'X'), K::kBadMagic, dt)},
      {"tensor with log magic", rejects(edit(t, 3, 'L'), K::kBadMagic, dt)},
      {"tensor version 2", rejects(edit(t, 4, 2), K::kUnsupportedVersion, dt)},
      {"tensor dtype 1", rejects(edit(t, 6, 1), K::kUnsupportedDtype, dt)},
      {"tensor reserved byte", rejects(edit(t, 7, 1), K::kMalformedHeader, dt)},
      {"tensor short header", rejects(cut(t, 20), K::kTruncated, dt)},
      {"tensor 3x3 with 8 floats", rejects(cut(t, t.size() - 4), K::kTruncated, dt)},
      {"tensor trailing byte", rejects(grow(t), K::kTrailingBytes, dt)},
      {"tensor zero rows", rejects(edit(edit(t, 8, 0), 9, 0), K::kMalformedHeader, dt)},
      {"tensor infinity", rejects(edit(edit(edit(edit(t, 24, 0), 25, 0), 26, 0x80), 27, 0x7F),
                                  K::kInvalidValue, dt)},
      {"log bad magic", rejects(edit(l, 0, 'X'), K::kBadMagic, dl)},
      {"log version 0", rejects(edit(l, 4, 0), K::kUnsupportedVersion, dl)},
      {"log reserved byte", rejects(edit(l, 6, 1), K::kMalformedHeader, dl)},
      {"log truncated", rejects(cut(l, l.size() - 1), K::kTruncated, dl)},
      {"log trailing byte", rejects(grow(l), K::kTrailingBytes, dl)},
      {"log byte 2", rejects(edit(l, 24, 2), K::kInvalidValue, dl)},
  };
  std::string missed;
  for (const auto& [name, ok] : cases) {
    if (!ok) missed += std::string(" ") + name + ";";
  }
  const bool pass = bad_round_trips == 0 && missed.empty();
  return {pass, fmt("%d/%d round trips exact, %zu/%zu malformed cases rejected with their kind%s",
                    2 * kRoundTrips - bad_round_trips, 2 * kRoundTrips,
                    cases.size() - std::count(missed.begin(), missed.end(), ';'), cases.size(),
                    missed.empty() ? "" : (" (missed:" + missed + ")").c_str())};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
  double max_seconds;  // 0 means no limit
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "k-centers matches brute force", kcenters_oracle, kOracleSeconds},
      {2, "k-centers 2-approximation", kcenters_two_approx, kApproxSeconds},
      {3, "forgetting batch/stream/oracle agree", forgetting_equivalence, kForgettingSeconds},
      {4, "correlation exactness", correlation_exactness, 0},
      {5, "binary-class metric agreement", binary_metric_agreement, 0},
      {6, "gradient checks", gradient_checks, 0},
      {7, "active learning beats random", al_beats_random, kAlSeconds},
      {8, "proxy fidelity", proxy_fidelity, 0},
      {9, "forgetting core-set", coreset_forgetting, 0},
      {10, "proxy == target reduces to classical AL", baseline_reduction, 0},
      {11, "speed-up accounting", speedup_accounting, 0},
      {12, "file-format round trips", file_formats, 0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.max_seconds > 0 && secs >= c.max_seconds) {
      o.pass = false;
      o.detail += fmt(" [limit %.0f s exceeded]", c.max_seconds);
    }
    failures += !o.pass;
    std::printf("%s %2d %-42s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
