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

#include "svp/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace svp {

namespace {

double row_least_confidence(std::span<const float> r) {
  return 1.0 - static_cast<double>(*std::max_element(r.begin(), r.end()));
}

double row_entropy(std::span<const float> r) {
  double acc = 0.0;
  for (float pf : r) {
    const double p = pf;
    if (p > 0.0) acc += p * std::log(p);
  }
  return std::max(0.0, -acc);
}

double row_margin(std::span<const float> r) {
  double first = -1.0, second = -1.0;
  for (float pf : r) {
    const double p = pf;
    if (p > first) {
      second = first;
      first = p;
    } else if (p > second) {
      second = p;
    }
  }
  return 1.0 - (first - second);
}

template <typename RowFn>
ScoreVector score_parallel(const ProbMatrix& p, RowFn fn) {
  ScoreVector out(p.rows());
  const auto n = static_cast<std::ptrdiff_t>(p.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = fn(p.row(static_cast<std::size_t>(i)));
  }
  return out;
}

template <typename RowFn>
ScoreVector score_serial(const ProbMatrix& p, RowFn fn) {
  ScoreVector out(p.rows());
  for (std::size_t i = 0; i < p.rows(); ++i) out[i] = fn(p.row(i));
  return out;
}

bool ranks_before(std::span<const double> scores, std::size_t a, std::size_t b) {
  if (scores[a] != scores[b]) return scores[a] > scores[b];
  return a < b;
}

}  // namespace

std::optional<UncertaintyMetric> parse_uncertainty_metric(std::string_view name) {
  if (name == "confidence" || name == "least_confidence") return UncertaintyMetric::kLeastConfidence;
  if (name == "entropy") return UncertaintyMetric::kEntropy;
  if (name == "margin") return UncertaintyMetric::kMargin;
  return std::nullopt;
}

std::string_view to_string(UncertaintyMetric metric) {
  switch (metric) {
    case UncertaintyMetric::kLeastConfidence: return "confidence";
    case UncertaintyMetric::kEntropy: return "entropy";
    case UncertaintyMetric::kMargin: return "margin";
  }
  return "unknown";
}

ScoreVector least_confidence(const ProbMatrix& p) { return score_parallel(p, row_least_confidence); }
ScoreVector entropy(const ProbMatrix& p) { return score_parallel(p, row_entropy); }
ScoreVector margin(const ProbMatrix& p) { return score_parallel(p, row_margin); }

ScoreVector uncertainty(const ProbMatrix& p, UncertaintyMetric metric) {
  switch (metric) {
    case UncertaintyMetric::kLeastConfidence: return least_confidence(p);
    case UncertaintyMetric::kEntropy: return entropy(p);
    case UncertaintyMetric::kMargin: return margin(p);
  }
  throw std::invalid_argument("unknown uncertainty metric");
}

namespace serial {
ScoreVector least_confidence(const ProbMatrix& p) { return score_serial(p, row_least_confidence); }
ScoreVector entropy(const ProbMatrix& p) { return score_serial(p, row_entropy); }
ScoreVector margin(const ProbMatrix& p) { return score_serial(p, row_margin); }
}  // namespace serial

IndexList top_m_among(std::span<const double> scores, std::span<const std::size_t> candidates,
                      std::size_t m) {
  if (m > candidates.size()) {
    throw std::invalid_argument("cannot select " + std::to_string(m) + " of " +
                                std::to_string(candidates.size()) + " candidates");
  }
  for (std::size_t i : candidates) {
    if (i >= scores.size()) throw std::out_of_range("candidate index out of range");
    if (!std::isfinite(scores[i])) {
      throw std::invalid_argument("non-finite score at index " + std::to_string(i));
    }
  }
  IndexList idx(candidates.begin(), candidates.end());
  const auto cmp = [&](std::size_t a, std::size_t b) { return ranks_before(scores, a, b); };
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(m), idx.end(), cmp);
  idx.resize(m);
  return idx;
}

IndexList top_m(std::span<const double> scores, std::size_t m) {
  IndexList all(scores.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return top_m_among(scores, all, m);
}

}  // namespace svp
