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

// Serial reference vs OpenMP kernels. The thread count is the second
// benchmark argument; the serial variants ignore it.
//
//   ./build/bench/svp_bench --benchmark_filter=kcenters

#include <benchmark/benchmark.h>
#include <omp.h>

#include <numeric>
#include <vector>

#include "svp/forgetting.hpp"
#include "svp/kcenters.hpp"
#include "svp/rng.hpp"
#include "svp/scoring.hpp"
#include "svp/tensor_io.hpp"

using namespace svp;

namespace {

FeatureMatrix features(std::size_t n, std::size_t d) {
  SplitMix64 rng(n * 31 + d);
  std::vector<float> v(n * d);
  for (auto& x : v) x = static_cast<float>(rng.normal());
  return FeatureMatrix(n, d, std::move(v));
}

ProbMatrix probs(std::size_t n, std::size_t c) {
  SplitMix64 rng(n + c);
  std::vector<float> v(n * c);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < c; ++j) s += v[i * c + j] = static_cast<float>(rng.uniform(0.01, 1));
    for (std::size_t j = 0; j < c; ++j) v[i * c + j] = static_cast<float>(v[i * c + j] / s);
  }
  return validate_prob_matrix(FeatureMatrix(n, c, std::move(v)));
}

TrainLog train_log(std::size_t n, std::size_t steps) {
  SplitMix64 rng(n ^ steps);
  std::vector<std::uint8_t> v(n * steps);
  for (auto& b : v) b = rng.uniform() < 0.7 ? 1 : 0;
  return TrainLog(n, steps, std::move(v));
}

void threads(benchmark::State& state) { omp_set_num_threads(static_cast<int>(state.range(1))); }

template <bool Parallel>
void BM_kcenters(benchmark::State& state) {
  threads(state);
  const auto x = features(static_cast<std::size_t>(state.range(0)), 64);
  const std::vector<std::size_t> initial{0};
  for (auto _ : state) {
    auto r = Parallel ? greedy_kcenters(x, initial, 100) : serial::greedy_kcenters(x, initial, 100);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 100);
}

template <bool Parallel>
void BM_entropy(benchmark::State& state) {
  threads(state);
  const auto p = probs(static_cast<std::size_t>(state.range(0)), 100);
  for (auto _ : state) {
    auto s = Parallel ? entropy(p) : serial::entropy(p);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_margin(benchmark::State& state) {
  threads(state);
  const auto p = probs(static_cast<std::size_t>(state.range(0)), 100);
  for (auto _ : state) {
    auto s = Parallel ? margin(p) : serial::margin(p);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_forgetting(benchmark::State& state) {
  threads(state);
  const auto log = train_log(static_cast<std::size_t>(state.range(0)), 200);
  for (auto _ : state) {
    auto s = Parallel ? process_log(log) : serial::process_log(log);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void sizes(benchmark::internal::Benchmark* b, std::vector<std::int64_t> ns) {
  const int max_threads = omp_get_max_threads();
  for (auto n : ns) {
    for (int t = 1; t <= max_threads; t *= 2) b->Args({n, t});
    if ((max_threads & (max_threads - 1)) != 0) b->Args({n, max_threads});
  }
  b->ArgNames({"n", "threads"})->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(BM_kcenters<false>)->Apply([](auto* b) { sizes(b, {10000, 50000}); });
BENCHMARK(BM_kcenters<true>)->Apply([](auto* b) { sizes(b, {10000, 50000}); });
BENCHMARK(BM_entropy<false>)->Apply([](auto* b) { sizes(b, {50000}); });
BENCHMARK(BM_entropy<true>)->Apply([](auto* b) { sizes(b, {50000}); });
BENCHMARK(BM_margin<false>)->Apply([](auto* b) { sizes(b, {50000}); });
BENCHMARK(BM_margin<true>)->Apply([](auto* b) { sizes(b, {50000}); });
BENCHMARK(BM_forgetting<false>)->Apply([](auto* b) { sizes(b, {50000}); });
BENCHMARK(BM_forgetting<true>)->Apply([](auto* b) { sizes(b, {50000}); });

BENCHMARK_MAIN();
