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

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "svp/learner.hpp"
#include "svp/matrix.hpp"
#include "svp/synthetic.hpp"

namespace svp {

enum class AlMethod { kLeastConfidence, kKCenters, kRandom };
enum class CoresetMethod { kEntropy, kKCenters, kForgetting, kRandom };

std::optional<AlMethod> parse_al_method(std::string_view name);
std::optional<CoresetMethod> parse_coreset_method(std::string_view name);
std::string_view to_string(AlMethod m);
std::string_view to_string(CoresetMethod m);

// Label-schedule fractions, all relative to the full pool size n: an initial
// random pool, the first round's addition, then every later round's addition.
// The final round is clipped so the labeled set lands on the budget exactly.
struct Schedule {
  double initial = 0.02;
  double first = 0.08;
  double subsequent = 0.10;
};

struct AlConfig {
  LearnerSpec proxy;
  LearnerSpec target;
  AlMethod method = AlMethod::kLeastConfidence;
  double budget_fraction = 0.5;
  Schedule schedule;
  std::uint64_t seed = 0;
  // Also fit the target after every round (outside the selection timer).
  bool evaluate_target_each_round = false;
  // Selection runtime of a previously recorded baseline, for the speed-up.
  std::optional<double> baseline_selection_seconds;
};

struct CoresetConfig {
  LearnerSpec proxy;
  LearnerSpec target;
  CoresetMethod method = CoresetMethod::kForgetting;
  double subset_fraction = 0.5;
  std::uint64_t seed = 0;
  // Also train the target on the whole pool and report its error.
  bool evaluate_full_data = false;
  std::optional<double> baseline_selection_seconds;
};

// Wall-clock of the selection work in one round, in seconds.
struct PhaseTimes {
  double proxy_fit = 0.0;
  double scoring = 0.0;
  double selection = 0.0;
  double total() const { return proxy_fit + scoring + selection; }
};

struct RoundRecord {
  std::size_t round = 0;
  std::size_t labeled_size = 0;
  std::size_t added = 0;
  std::optional<double> proxy_test_error;
  std::optional<double> target_test_error;
  PhaseTimes times;
};

struct RunReport {
  std::string task;    // "al" or "coreset"
  std::string method;
  std::size_t pool_size = 0;
  std::vector<RoundRecord> rounds;
  // al: labeled ids in labeling order (initial pool first);
  // coreset: selected ids in selection priority order.
  IndexList selected;
  double target_test_error = 0.0;
  std::optional<double> full_data_test_error;
  // Sum of all phase times; excludes every target fit.
  double selection_seconds = 0.0;
  std::optional<double> speedup;
};

// Monotone time source in seconds. Tests inject scripted clocks.
using Clock = std::function<double()>;
Clock steady_clock_seconds();

// Count for a fraction of n: ceil(fraction * n), except that products
// within 1e-9 (relative) of an integer snap to it, so 0.1 * 1000 is 100.
// Never less than 1.
std::size_t fraction_count(double fraction, std::size_t n);

// Cumulative labeled-set sizes: entry 0 is the initial pool, the last entry
// is the budget. Throws std::invalid_argument when a fraction is outside
// (0, 1] or the initial pool exceeds the budget.
std::vector<std::size_t> schedule_sizes(const Schedule& schedule, double budget_fraction,
                                        std::size_t n);

// Seeded uniform sample of m items from pool without replacement, in draw
// order: for i in [0, m) swap pool[i] with pool[i + below(size - i)].
IndexList random_select(std::span<const std::size_t> pool, std::size_t m, std::uint64_t seed);

// baseline / svp; both must be positive.
double speedup(double baseline_seconds, double svp_seconds);

// Batch active learning where cfg.proxy picks every round and cfg.target is
// trained once on the final labeled set.
RunReport run_active_learning(const AlConfig& cfg, const Dataset& train, const Dataset& test,
                              const Clock& clock = steady_clock_seconds());

// Classical batch active learning: cfg.target selects for itself.
RunReport run_classical_active_learning(const AlConfig& cfg, const Dataset& train,
                                        const Dataset& test,
                                        const Clock& clock = steady_clock_seconds());

// Runs the classical baseline and the proxy run on the same data and fills
// the proxy report's speed-up from the two selection runtimes.
struct SpeedupComparison {
  RunReport baseline;
  RunReport svp;
  double speedup = 0.0;
};
SpeedupComparison compare_selection_runtime(const AlConfig& cfg, const Dataset& train,
                                            const Dataset& test, const Clock& baseline_clock,
                                            const Clock& svp_clock);

// Core-set selection: cfg.proxy is trained on the whole pool and scores it,
// the top subset_fraction is kept, and cfg.target is trained on it.
RunReport run_coreset(const CoresetConfig& cfg, const Dataset& train, const Dataset& test,
                      const Clock& clock = steady_clock_seconds());

// Seed used for the learner fit in a given phase; exposed so callers can
// reproduce a run's models. `phase` is the round number for selector fits.
std::uint64_t fit_seed(std::uint64_t run_seed, const LearnerSpec& spec, std::uint64_t phase);
inline constexpr std::uint64_t kTargetPhase = 0xF17A1;

}  // namespace svp
