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

#include "svp/kcenters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace svp {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Farthest {
  double sq = -1.0;
  std::size_t index = kNone;
};

bool farther(const Farthest& a, const Farthest& b) {
  if (a.sq != b.sq) return a.sq > b.sq;
  return a.index < b.index;
}

struct CenterCache {
  std::vector<double> min_sq;
  std::vector<std::uint8_t> taken;
};

// Folds `center` into the cache and returns the farthest remaining example.
Farthest refresh_parallel(const FeatureMatrix& x, std::size_t center, CenterCache& cache) {
  cache.taken[center] = 1;
  cache.min_sq[center] = 0.0;
  const auto c = x.row(center);
  const auto n = static_cast<std::ptrdiff_t>(x.rows());
  Farthest best;
#pragma omp parallel
  {
    Farthest local;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t s = 0; s < n; ++s) {
      const auto i = static_cast<std::size_t>(s);
      if (cache.taken[i]) continue;
      const double d = squared_distance(x.row(i), c);
      if (d < cache.min_sq[i]) cache.min_sq[i] = d;
      const Farthest cand{cache.min_sq[i], i};
      if (farther(cand, local)) local = cand;
    }
#pragma omp critical(svp_kcenters_reduce)
    {
      if (farther(local, best)) best = local;
    }
  }
  return best;
}

Farthest refresh_serial(const FeatureMatrix& x, std::size_t center, CenterCache& cache) {
  cache.taken[center] = 1;
  cache.min_sq[center] = 0.0;
  const auto c = x.row(center);
  Farthest best;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    if (cache.taken[i]) continue;
    const double d = squared_distance(x.row(i), c);
    if (d < cache.min_sq[i]) cache.min_sq[i] = d;
    const Farthest cand{cache.min_sq[i], i};
    if (farther(cand, best)) best = cand;
  }
  return best;
}

IndexList unique_initial(const FeatureMatrix& x, std::span<const std::size_t> initial) {
  if (initial.empty()) throw std::invalid_argument("k-centers needs a nonempty initial set");
  IndexList seen;
  std::vector<std::uint8_t> mark(x.rows(), 0);
  for (std::size_t i : initial) {
    if (i >= x.rows()) {
      throw std::invalid_argument("initial index " + std::to_string(i) + " out of range for " +
                                  std::to_string(x.rows()) + " examples");
    }
    if (!mark[i]) {
      mark[i] = 1;
      seen.push_back(i);
    }
  }
  return seen;
}

template <typename Refresh>
KCentersResult run_greedy(const FeatureMatrix& x, std::span<const std::size_t> initial,
                          std::size_t budget, Refresh refresh) {
  const IndexList start = unique_initial(x, initial);
  if (budget > x.rows() - start.size()) {
    throw std::invalid_argument("budget " + std::to_string(budget) + " exceeds the " +
                                std::to_string(x.rows() - start.size()) +
                                " examples outside the initial set");
  }
  CenterCache cache{std::vector<double>(x.rows(), std::numeric_limits<double>::infinity()),
                    std::vector<std::uint8_t>(x.rows(), 0)};
  Farthest next;
  for (std::size_t c : start) next = refresh(x, c, cache);

  KCentersResult out;
  out.order.reserve(budget);
  out.selected_dists.reserve(budget);
  for (std::size_t k = 0; k < budget; ++k) {
    out.order.push_back(next.index);
    out.selected_dists.push_back(std::sqrt(next.sq));
    next = refresh(x, next.index, cache);
  }
  out.min_dists.resize(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) out.min_dists[i] = std::sqrt(cache.min_sq[i]);
  return out;
}

}  // namespace

double squared_distance(std::span<const float> a, std::span<const float> b) {
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = static_cast<double>(a[j]) - static_cast<double>(b[j]);
    acc += diff * diff;
  }
  return acc;
}

KCentersResult greedy_kcenters(const FeatureMatrix& features, std::span<const std::size_t> initial,
                               std::size_t budget) {
  return run_greedy(features, initial, budget, refresh_parallel);
}

namespace serial {
KCentersResult greedy_kcenters(const FeatureMatrix& features, std::span<const std::size_t> initial,
                               std::size_t budget) {
  return run_greedy(features, initial, budget, refresh_serial);
}
}  // namespace serial

double kcenter_radius(const FeatureMatrix& features, std::span<const std::size_t> centers) {
  if (centers.empty()) throw std::invalid_argument("radius needs at least one center");
  for (std::size_t c : centers) {
    if (c >= features.rows()) throw std::invalid_argument("center index out of range");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < features.rows(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t c : centers) {
      nearest = std::min(nearest, squared_distance(features.row(i), features.row(c)));
    }
    worst = std::max(worst, nearest);
  }
  return std::sqrt(worst);
}

IndexList kcenters_full_ranking(const FeatureMatrix& features, std::span<const std::size_t> initial) {
  const auto start = unique_initial(features, initial);
  return greedy_kcenters(features, start, features.rows() - start.size()).order;
}

ScoreVector order_to_scores(std::span<const std::size_t> order, std::size_t n) {
  ScoreVector scores(n, 0.0);
  const auto k = order.size();
  for (std::size_t pos = 0; pos < k; ++pos) {
    if (order[pos] >= n) throw std::out_of_range("order index out of range");
    scores[order[pos]] = static_cast<double>(k - pos);
  }
  return scores;
}

}  // namespace svp
