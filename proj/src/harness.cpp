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

#include "svp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "svp/forgetting.hpp"
#include "svp/kcenters.hpp"
#include "svp/rng.hpp"
#include "svp/scoring.hpp"

namespace svp {

namespace {

constexpr std::uint64_t kInitialPoolTag = 0x5EED0;
constexpr std::uint64_t kRandomRoundTag = 0x7A0D0;
constexpr std::uint64_t kCoresetStartTag = 0xC0DE5;

void check_fraction(double f, const char* what) {
  if (!(f > 0.0 && f <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in (0, 1]");
  }
}

void check_dataset(const Dataset& d, const char* what) {
  if (d.labels.size() != d.features.rows()) {
    throw std::invalid_argument(std::string(what) + ": label count does not match example count");
  }
}

IndexList sorted(IndexList v) {
  std::sort(v.begin(), v.end());
  return v;
}

TrainedModel fit_subset(const LearnerSpec& spec, std::uint64_t seed, const Dataset& data,
                        const IndexList& subset) {
  LearnerSpec s = spec;
  s.seed = seed;
  const auto idx = sorted(subset);
  return fit(s, data.features.gather(idx), data.labels.gather(idx));
}

// Scripted interval measurement: start() then lap() returns the seconds
// since the previous mark.
class Lap {
 public:
  explicit Lap(const Clock& clock) : clock_(clock), last_(clock()) {}
  double lap() {
    const double now = clock_();
    const double dt = now - last_;
    last_ = now;
    return std::max(0.0, dt);
  }

 private:
  const Clock& clock_;
  double last_;
};

RunReport run_pool(const AlConfig& cfg, const LearnerSpec& selector, const Dataset& train,
                   const Dataset& test, const Clock& clock) {
  check_dataset(train, "train");
  check_dataset(test, "test");
  selector.validate();
  cfg.target.validate();
  const std::size_t n = train.features.rows();
  const auto sizes = schedule_sizes(cfg.schedule, cfg.budget_fraction, n);

  IndexList everything(n);
  std::iota(everything.begin(), everything.end(), 0);

  RunReport report;
  report.task = "al";
  report.method = std::string(to_string(cfg.method));
  report.pool_size = n;
  report.selected = random_select(everything, sizes[0], derive_seed(cfg.seed, kInitialPoolTag));

  std::vector<std::uint8_t> labeled(n, 0);
  for (std::size_t i : report.selected) labeled[i] = 1;

  RoundRecord initial;
  initial.labeled_size = sizes[0];
  initial.added = sizes[0];
  report.rounds.push_back(initial);

  for (std::size_t k = 1; k < sizes.size(); ++k) {
    const std::size_t quota = sizes[k] - sizes[k - 1];
    IndexList pool;
    pool.reserve(n - sizes[k - 1]);
    for (std::size_t i = 0; i < n; ++i) {
      if (!labeled[i]) pool.push_back(i);
    }

    RoundRecord rec;
    rec.round = k;
    IndexList picked;
    std::optional<TrainedModel> model;
    Lap lap(clock);
    if (cfg.method == AlMethod::kRandom) {
      rec.times.proxy_fit = lap.lap();
      rec.times.scoring = lap.lap();
      picked = random_select(pool, quota, derive_seed(cfg.seed, kRandomRoundTag + k));
      rec.times.selection = lap.lap();
    } else {
      model = fit_subset(selector, fit_seed(cfg.seed, selector, k), train, report.selected);
      rec.times.proxy_fit = lap.lap();
      if (cfg.method == AlMethod::kLeastConfidence) {
        const auto scores = least_confidence(predict_proba(*model, train.features));
        rec.times.scoring = lap.lap();
        picked = top_m_among(scores, pool, quota);
      } else {
        const auto emb = embed(*model, train.features);
        rec.times.scoring = lap.lap();
        picked = greedy_kcenters(emb, report.selected, quota).order;
      }
      rec.times.selection = lap.lap();
    }

    if (model) rec.proxy_test_error = error_rate(*model, test.features, test.labels);
    for (std::size_t i : picked) {
      if (labeled[i]) throw std::logic_error("example selected twice");
      labeled[i] = 1;
      report.selected.push_back(i);
    }
    rec.labeled_size = report.selected.size();
    rec.added = picked.size();
    if (cfg.evaluate_target_each_round) {
      const auto t = fit_subset(cfg.target, fit_seed(cfg.seed, cfg.target, kTargetPhase), train,
                                report.selected);
      rec.target_test_error = error_rate(t, test.features, test.labels);
    }
    report.selection_seconds += rec.times.total();
    report.rounds.push_back(rec);
  }

  const auto final_model =
      fit_subset(cfg.target, fit_seed(cfg.seed, cfg.target, kTargetPhase), train, report.selected);
  report.target_test_error = error_rate(final_model, test.features, test.labels);
  report.rounds.back().target_test_error = report.target_test_error;
  if (cfg.baseline_selection_seconds) {
    report.speedup = speedup(*cfg.baseline_selection_seconds, report.selection_seconds);
  }
  return report;
}

}  // namespace

std::optional<AlMethod> parse_al_method(std::string_view name) {
  if (name == "least_confidence" || name == "confidence") return AlMethod::kLeastConfidence;
  if (name == "kcenters") return AlMethod::kKCenters;
  if (name == "random") return AlMethod::kRandom;
  return std::nullopt;
}

std::optional<CoresetMethod> parse_coreset_method(std::string_view name) {
  if (name == "entropy") return CoresetMethod::kEntropy;
  if (name == "kcenters") return CoresetMethod::kKCenters;
  if (name == "forgetting") return CoresetMethod::kForgetting;
  if (name == "random") return CoresetMethod::kRandom;
  return std::nullopt;
}

std::string_view to_string(AlMethod m) {
  switch (m) {
    case AlMethod::kLeastConfidence: return "least_confidence";
    case AlMethod::kKCenters: return "kcenters";
    case AlMethod::kRandom: return "random";
  }
  return "unknown";
}

std::string_view to_string(CoresetMethod m) {
  switch (m) {
    case CoresetMethod::kEntropy: return "entropy";
    case CoresetMethod::kKCenters: return "kcenters";
    case CoresetMethod::kForgetting: return "forgetting";
    case CoresetMethod::kRandom: return "random";
  }
  return "unknown";
}

Clock steady_clock_seconds() {
  return [] {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
  };
}

std::size_t fraction_count(double fraction, std::size_t n) {
  const double x = fraction * static_cast<double>(n);
  const double r = std::round(x);
  const double c = std::abs(x - r) <= 1e-9 * std::max(1.0, x) ? r : std::ceil(x);
  return std::max<std::size_t>(1, static_cast<std::size_t>(c));
}

std::vector<std::size_t> schedule_sizes(const Schedule& schedule, double budget_fraction,
                                        std::size_t n) {
  check_fraction(schedule.initial, "schedule.initial");
  check_fraction(schedule.first, "schedule.first");
  check_fraction(schedule.subsequent, "schedule.subsequent");
  check_fraction(budget_fraction, "budget_fraction");
  if (n == 0) throw std::invalid_argument("empty pool");
  const std::size_t budget = std::min(n, fraction_count(budget_fraction, n));
  const std::size_t start = fraction_count(schedule.initial, n);
  if (start > budget) {
    throw std::invalid_argument("initial pool of " + std::to_string(start) +
                                " exceeds the budget of " + std::to_string(budget));
  }
  std::vector<std::size_t> sizes{start};
  std::size_t step = fraction_count(schedule.first, n);
  while (sizes.back() < budget) {
    sizes.push_back(std::min(budget, sizes.back() + step));
    step = fraction_count(schedule.subsequent, n);
  }
  return sizes;
}

IndexList random_select(std::span<const std::size_t> pool, std::size_t m, std::uint64_t seed) {
  if (m > pool.size()) {
    throw std::invalid_argument("cannot draw " + std::to_string(m) + " from a pool of " +
                                std::to_string(pool.size()));
  }
  IndexList v(pool.begin(), pool.end());
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < m; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(v.size() - i));
    std::swap(v[i], v[j]);
  }
  v.resize(m);
  return v;
}

double speedup(double baseline_seconds, double svp_seconds) {
  if (!(baseline_seconds > 0.0) || !(svp_seconds > 0.0)) {
    throw std::invalid_argument("speed-up needs positive times");
  }
  return baseline_seconds / svp_seconds;
}

std::uint64_t fit_seed(std::uint64_t run_seed, const LearnerSpec& spec, std::uint64_t phase) {
  return derive_seed(run_seed ^ derive_seed(spec.seed, 0), phase);
}

RunReport run_active_learning(const AlConfig& cfg, const Dataset& train, const Dataset& test,
                              const Clock& clock) {
  return run_pool(cfg, cfg.proxy, train, test, clock);
}

RunReport run_classical_active_learning(const AlConfig& cfg, const Dataset& train,
                                        const Dataset& test, const Clock& clock) {
  return run_pool(cfg, cfg.target, train, test, clock);
}

SpeedupComparison compare_selection_runtime(const AlConfig& cfg, const Dataset& train,
                                            const Dataset& test, const Clock& baseline_clock,
                                            const Clock& svp_clock) {
  SpeedupComparison out;
  AlConfig base_cfg = cfg;
  base_cfg.baseline_selection_seconds.reset();
  out.baseline = run_classical_active_learning(base_cfg, train, test, baseline_clock);
  AlConfig svp_cfg = cfg;
  svp_cfg.baseline_selection_seconds = out.baseline.selection_seconds;
  out.svp = run_active_learning(svp_cfg, train, test, svp_clock);
  out.speedup = *out.svp.speedup;
  return out;
}

RunReport run_coreset(const CoresetConfig& cfg, const Dataset& train, const Dataset& test,
                      const Clock& clock) {
  check_fraction(cfg.subset_fraction, "subset_fraction");
  check_dataset(train, "train");
  check_dataset(test, "test");
  cfg.proxy.validate();
  cfg.target.validate();
  const std::size_t n = train.features.rows();
  const std::size_t m = std::min(n, fraction_count(cfg.subset_fraction, n));

  RunReport report;
  report.task = "coreset";
  report.method = std::string(to_string(cfg.method));
  report.pool_size = n;

  RoundRecord rec;
  rec.round = 1;
  std::optional<TrainedModel> proxy;
  Lap lap(clock);
  if (cfg.method == CoresetMethod::kRandom) {
    rec.times.proxy_fit = lap.lap();
    rec.times.scoring = lap.lap();
    IndexList all(n);
    std::iota(all.begin(), all.end(), 0);
    report.selected = random_select(all, m, derive_seed(cfg.seed, kCoresetStartTag));
  } else {
    LearnerSpec ps = cfg.proxy;
    ps.seed = fit_seed(cfg.seed, cfg.proxy, 1);
    proxy = fit(ps, train.features, train.labels);
    rec.times.proxy_fit = lap.lap();
    switch (cfg.method) {
      case CoresetMethod::kEntropy: {
        const auto scores = entropy(predict_proba(*proxy, train.features));
        rec.times.scoring = lap.lap();
        report.selected = top_m(scores, m);
        break;
      }
      case CoresetMethod::kForgetting: {
        const auto scores = process_log(proxy->train_log);
        rec.times.scoring = lap.lap();
        report.selected = select_most_forgotten(scores, m);
        break;
      }
      case CoresetMethod::kKCenters: {
        const auto emb = embed(*proxy, train.features);
        rec.times.scoring = lap.lap();
        SplitMix64 rng(derive_seed(cfg.seed, kCoresetStartTag));
        const IndexList start{static_cast<std::size_t>(rng.below(n))};
        report.selected = start;
        const auto picked = greedy_kcenters(emb, start, m - 1).order;
        report.selected.insert(report.selected.end(), picked.begin(), picked.end());
        break;
      }
      case CoresetMethod::kRandom:
        break;
    }
  }
  rec.times.selection = lap.lap();
  if (proxy) rec.proxy_test_error = error_rate(*proxy, test.features, test.labels);

  const auto target_seed = fit_seed(cfg.seed, cfg.target, kTargetPhase);
  const auto target = fit_subset(cfg.target, target_seed, train, report.selected);
  report.target_test_error = error_rate(target, test.features, test.labels);
  if (cfg.evaluate_full_data) {
    IndexList all(n);
    std::iota(all.begin(), all.end(), 0);
    const auto full = fit_subset(cfg.target, target_seed, train, all);
    report.full_data_test_error = error_rate(full, test.features, test.labels);
  }
  rec.labeled_size = report.selected.size();
  rec.added = report.selected.size();
  rec.target_test_error = report.target_test_error;
  report.selection_seconds = rec.times.total();
  report.rounds.push_back(rec);
  if (cfg.baseline_selection_seconds) {
    report.speedup = speedup(*cfg.baseline_selection_seconds, report.selection_seconds);
  }
  return report;
}

}  // namespace svp
