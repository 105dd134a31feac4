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

#include <optional>
#include <span>
#include <string_view>

#include "svp/matrix.hpp"

namespace svp {

// Every score is oriented "higher = select first".
enum class UncertaintyMetric { kLeastConfidence, kEntropy, kMargin };

std::optional<UncertaintyMetric> parse_uncertainty_metric(std::string_view name);
std::string_view to_string(UncertaintyMetric metric);

// 1 - max_j p[i,j]
ScoreVector least_confidence(const ProbMatrix& p);
// -sum_j p[i,j] ln p[i,j], with 0 ln 0 = 0
ScoreVector entropy(const ProbMatrix& p);
// 1 - (largest - second largest)
ScoreVector margin(const ProbMatrix& p);
ScoreVector uncertainty(const ProbMatrix& p, UncertaintyMetric metric);

// The m highest-scoring indices, best first; equal scores go to the lower
// index. Throws std::invalid_argument if m > scores.size() or a score is
// not finite.
IndexList top_m(std::span<const double> scores, std::size_t m);

// Same ordering, restricted to the given candidate indices.
IndexList top_m_among(std::span<const double> scores, std::span<const std::size_t> candidates,
                      std::size_t m);

// Single-threaded versions of the row kernels, kept as the reference the
// OpenMP paths are tested against.
namespace serial {
ScoreVector least_confidence(const ProbMatrix& p);
ScoreVector entropy(const ProbMatrix& p);
ScoreVector margin(const ProbMatrix& p);
}  // namespace serial

}  // namespace svp
