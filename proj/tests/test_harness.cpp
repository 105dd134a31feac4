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

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "svp/harness.hpp"
#include "svp/synthetic.hpp"
#include "test_util.hpp"

using namespace svp;

namespace {

SyntheticDataset small_task(std::uint64_t seed) {
  SyntheticParams p;
  p.classes = 3;
  p.dim = 4;
  p.separation = 3.0;
  p.train_size = 300;
  p.test_size = 300;
  p.seed = seed;
  return make_synthetic(p);
}

LearnerSpec small_mlp() {
  LearnerSpec s;
  s.kind = LearnerKind::kMlp;
  s.hidden_units = 8;
  s.epochs = 5;
  s.seed = 3;
  return s;
}

AlConfig small_al() {
  AlConfig c;
  c.proxy.epochs = 5;
  c.target = small_mlp();
  c.budget_fraction = 0.3;
  c.seed = 21;
  return c;
}

// Returns 0 on the first call and `step` on every later call.
Clock two_level_clock(double step) {
  return [calls = 0, step]() mutable { return calls++ == 0 ? 0.0 : step; };
}

Clock counting_clock() {
  return [t = 0.0]() mutable { return t += 1.0; };
}

bool same_deterministic_fields(const RunReport& a, const RunReport& b) {
  if (a.rounds.size() != b.rounds.size()) return false;
  for (std::size_t k = 0; k < a.rounds.size(); ++k) {
    const auto &x = a.rounds[k], &y = b.rounds[k];
    if (x.round != y.round || x.labeled_size != y.labeled_size || x.added != y.added ||
        x.proxy_test_error != y.proxy_test_error || x.target_test_error != y.target_test_error) {
      return false;
    }
  }
  return a.task == b.task && a.method == b.method && a.pool_size == b.pool_size &&
         a.selected == b.selected && a.target_test_error == b.target_test_error &&
         a.full_data_test_error == b.full_data_test_error;
}

}  // namespace

TEST_CASE("fraction counts") {
  CHECK(fraction_count(0.1, 1000) == 100);
  CHECK(fraction_count(0.02, 1000) == 20);
  CHECK(fraction_count(0.3, 10) == 3);
  CHECK(fraction_count(0.5, 3) == 2);
  CHECK(fraction_count(0.001, 10) == 1);
  CHECK(fraction_count(1.0, 7) == 7);
}

TEST_CASE("schedule sizes") {
  const Schedule s;
  CHECK(schedule_sizes(s, 0.5, 1000) == std::vector<std::size_t>{20, 100, 200, 300, 400, 500});
  CHECK(schedule_sizes(s, 0.3, 2000) == std::vector<std::size_t>{40, 200, 400, 600});
  CHECK(schedule_sizes(s, 0.02, 1000) == std::vector<std::size_t>{20});
  // the last round is clipped to the budget
  CHECK(schedule_sizes(s, 0.15, 1000) == std::vector<std::size_t>{20, 100, 150});
  CHECK_THROWS_AS(schedule_sizes(s, 0.01, 1000), std::invalid_argument);
  CHECK_THROWS_AS(schedule_sizes(Schedule{0.0, 0.1, 0.1}, 0.5, 100), std::invalid_argument);
  CHECK_THROWS_AS(schedule_sizes(s, 1.5, 100), std::invalid_argument);

  SplitMix64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(5000);
    const Schedule r{rng.uniform(0.001, 0.1), rng.uniform(0.001, 0.3), rng.uniform(0.001, 0.3)};
    const double b = rng.uniform(0.1, 1.0);
    if (fraction_count(r.initial, n) > std::min(n, fraction_count(b, n))) continue;
    const auto sizes = schedule_sizes(r, b, n);
    CHECK(sizes.back() == std::min(n, fraction_count(b, n)));
    for (std::size_t k = 1; k < sizes.size(); ++k) CHECK(sizes[k] > sizes[k - 1]);
  }
}

TEST_CASE("random selection") {
  IndexList pool(10);
  std::iota(pool.begin(), pool.end(), 100);
  auto all = random_select(pool, 10, 5);
  std::sort(all.begin(), all.end());
  CHECK(all == pool);
  CHECK(random_select(pool, 4, 9) == random_select(pool, 4, 9));
  CHECK(random_select(pool, 0, 9).empty());
  CHECK_THROWS_AS(random_select(pool, 11, 9), std::invalid_argument);

  // binomial(10000, 0.1): sd 30, so 5 sd is 150
  std::vector<int> freq(10, 0);
  for (std::uint64_t s = 0; s < 10000; ++s) ++freq[random_select(pool, 1, s)[0] - 100];
  for (int f : freq) CHECK(std::abs(f - 1000) <= 150);
}

TEST_CASE("speed-up arithmetic") {
  CHECK(speedup(240.0, 34.3) == doctest::Approx(7.0).epsilon(1e-3));
  CHECK(speedup(5.0, 5.0) == 1.0);
  CHECK(speedup(100.0, 25.0) == 4.0);
  CHECK_THROWS_AS(speedup(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(speedup(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("active learning keeps the schedule and the pool partition") {
  const auto d = small_task(1);
  for (auto method : {AlMethod::kLeastConfidence, AlMethod::kKCenters, AlMethod::kRandom}) {
    auto cfg = small_al();
    cfg.method = method;
    cfg.evaluate_target_each_round = true;
    const auto r = run_active_learning(cfg, d.train, d.test, counting_clock());
    const auto sizes = schedule_sizes(cfg.schedule, cfg.budget_fraction, 300);
    REQUIRE(r.rounds.size() == sizes.size());
    for (std::size_t k = 0; k < sizes.size(); ++k) CHECK(r.rounds[k].labeled_size == sizes[k]);
    CHECK(r.selected.size() == sizes.back());
    auto ids = r.selected;
    std::sort(ids.begin(), ids.end());
    CHECK(std::adjacent_find(ids.begin(), ids.end()) == ids.end());
    CHECK(ids.back() < 300);
    for (std::size_t k = 1; k < r.rounds.size(); ++k) {
      CHECK(r.rounds[k].target_test_error.has_value());
      CHECK(r.rounds[k].proxy_test_error.has_value() == (method != AlMethod::kRandom));
      CHECK(r.rounds[k].times.total() >= 0.0);
    }
    CHECK(r.rounds.back().target_test_error == r.target_test_error);
  }
}

TEST_CASE("a budget equal to the initial pool trains the target on a random subset") {
  const auto d = small_task(2);
  auto cfg = small_al();
  cfg.budget_fraction = cfg.schedule.initial;
  const auto r = run_active_learning(cfg, d.train, d.test);
  CHECK(r.rounds.size() == 1);
  CHECK(r.selection_seconds == 0.0);

  auto ids = r.selected;
  std::sort(ids.begin(), ids.end());
  LearnerSpec t = cfg.target;
  t.seed = fit_seed(cfg.seed, cfg.target, kTargetPhase);
  const auto m = fit(t, d.train.features.gather(ids), d.train.labels.gather(ids));
  CHECK(r.target_test_error == error_rate(m, d.test.features, d.test.labels));

  cfg.method = AlMethod::kRandom;
  const auto rnd = run_active_learning(cfg, d.train, d.test);
  CHECK(rnd.selected == r.selected);
  CHECK(rnd.target_test_error == r.target_test_error);
}

TEST_CASE("a proxy identical to the target reproduces the classical run") {
  const auto d = small_task(3);
  for (auto method : {AlMethod::kLeastConfidence, AlMethod::kKCenters}) {
    auto cfg = small_al();
    cfg.method = method;
    cfg.proxy = cfg.target;
    const auto svp = run_active_learning(cfg, d.train, d.test, counting_clock());
    const auto classical = run_classical_active_learning(cfg, d.train, d.test, counting_clock());
    CHECK(same_deterministic_fields(svp, classical));
  }
}

TEST_CASE("reports are deterministic apart from wall-clock") {
  const auto d = small_task(4);
  const auto cfg = small_al();
  CHECK(same_deterministic_fields(run_active_learning(cfg, d.train, d.test),
                                  run_active_learning(cfg, d.train, d.test)));
  auto other = cfg;
  other.seed = 22;
  CHECK(run_active_learning(other, d.train, d.test).selected !=
        run_active_learning(cfg, d.train, d.test).selected);
}

TEST_CASE("scripted clocks give exact speed-ups") {
  const auto d = small_task(5);
  auto cfg = small_al();
  cfg.schedule = {0.02, 0.28, 0.1};  // one selection round
  const auto cmp = compare_selection_runtime(cfg, d.train, d.test, two_level_clock(100.0),
                                             two_level_clock(25.0));
  CHECK(cmp.baseline.selection_seconds == 100.0);
  CHECK(cmp.svp.selection_seconds == 25.0);
  CHECK(cmp.speedup == 4.0);
  CHECK(cmp.svp.speedup == 4.0);
}

TEST_CASE("phase times add up to the reported selection time") {
  const auto d = small_task(6);
  const auto r = run_active_learning(small_al(), d.train, d.test, counting_clock());
  double sum = 0;
  for (const auto& rec : r.rounds) sum += rec.times.total();
  CHECK(r.selection_seconds == sum);
  // three laps per selection round, one tick each
  CHECK(sum == 3.0 * static_cast<double>(r.rounds.size() - 1));
}

TEST_CASE("core-set selection") {
  const auto d = small_task(7);
  CoresetConfig cfg;
  cfg.proxy.epochs = 5;
  cfg.target = small_mlp();
  cfg.seed = 8;

  SUBCASE("the whole pool reproduces full-data training for every method") {
    for (auto method : {CoresetMethod::kEntropy, CoresetMethod::kKCenters, CoresetMethod::kForgetting,
                        CoresetMethod::kRandom}) {
      cfg.method = method;
      cfg.subset_fraction = 1.0;
      cfg.evaluate_full_data = true;
      const auto r = run_coreset(cfg, d.train, d.test);
      CHECK(r.selected.size() == 300);
      CHECK(r.target_test_error == *r.full_data_test_error);
    }
  }
  SUBCASE("subset size and uniqueness") {
    for (auto method : {CoresetMethod::kEntropy, CoresetMethod::kKCenters, CoresetMethod::kForgetting,
                        CoresetMethod::kRandom}) {
      cfg.method = method;
      cfg.subset_fraction = 0.35;
      const auto r = run_coreset(cfg, d.train, d.test);
      CHECK(r.selected.size() == 105);
      auto ids = r.selected;
      std::sort(ids.begin(), ids.end());
      CHECK(std::adjacent_find(ids.begin(), ids.end()) == ids.end());
    }
  }
  SUBCASE("random subsets depend only on the seed") {
    cfg.method = CoresetMethod::kRandom;
    const auto a = run_coreset(cfg, d.train, d.test);
    CHECK(a.selected == run_coreset(cfg, d.train, d.test).selected);
    cfg.seed = 9;
    CHECK(a.selected != run_coreset(cfg, d.train, d.test).selected);
  }
  SUBCASE("invalid fractions") {
    cfg.subset_fraction = 0.0;
    CHECK_THROWS_AS(run_coreset(cfg, d.train, d.test), std::invalid_argument);
    cfg.subset_fraction = 1.01;
    CHECK_THROWS_AS(run_coreset(cfg, d.train, d.test), std::invalid_argument);
  }
}

TEST_CASE("forgetting-based pruning removes mostly the easy blob") {
  CoresetConfig cfg;
  cfg.method = CoresetMethod::kForgetting;
  cfg.proxy.learning_rate = 0.5;
  cfg.proxy.batch_size = 8;
  cfg.target = small_mlp();
  double removed_easy = 0, removed = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto d = test::three_blobs(20, 2.0, 10.0, 3, 600, 10, 1000 + seed);
    cfg.seed = seed;
    const auto r = run_coreset(cfg, d.train, d.test);
    std::vector<bool> kept(600, false);
    for (std::size_t i : r.selected) kept[i] = true;
    for (std::size_t i = 0; i < 600; ++i) {
      if (kept[i]) continue;
      removed += 1;
      removed_easy += d.train.labels[i] == 2;
    }
  }
  CHECK(removed_easy / removed >= 0.70);
}

TEST_CASE("method names") {
  CHECK(parse_al_method("least_confidence") == AlMethod::kLeastConfidence);
  CHECK(parse_al_method("kcenters") == AlMethod::kKCenters);
  CHECK_FALSE(parse_al_method("entropy").has_value());
  CHECK(parse_coreset_method("forgetting") == CoresetMethod::kForgetting);
  CHECK_FALSE(parse_coreset_method("least_confidence").has_value());
  CHECK(to_string(CoresetMethod::kEntropy) == "entropy");
}
