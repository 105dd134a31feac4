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

#include <span>
#include <stdexcept>

#include "svp/matrix.hpp"

namespace svp {

// Raised for constant inputs, where a correlation is undefined.
class DegenerateInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Ranks in [1, n]; tied scores share the mean of the ranks they span. With
// descending = true the highest score gets rank 1.
std::vector<double> scores_to_ranks(std::span<const double> scores, bool descending = true);

// Product-moment correlation, clamped to [-1, 1]. Requires equal lengths
// >= 2 and nonzero variance in both arguments.
double pearson(std::span<const double> x, std::span<const double> y);

// Pearson correlation of the average-tie ranks.
double spearman(std::span<const double> a, std::span<const double> b);

}  // namespace svp
