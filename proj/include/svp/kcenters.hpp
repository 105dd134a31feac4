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

#include "svp/matrix.hpp"

namespace svp {

struct KCentersResult {
  // Selected indices in addition order; disjoint from the initial set.
  IndexList order;
  // Distance from each selected point to the nearest center at the moment it
  // was picked (the max-min value). Nonincreasing.
  std::vector<double> selected_dists;
  // Final distance from every example to its nearest initial/selected
  // center; zero for centers.
  std::vector<double> min_dists;
};

// Greedy k-centers (farthest-point traversal). Starting from `initial`,
// repeatedly adds argmax_{i not in s} min_{j in s} ||x_i - x_j||_2 until
// `budget` points were added. Equal distances resolve to the lowest index.
//
// A per-example cache of the squared distance to the nearest center is
// refreshed with one O(n d) pass per new center, so the total cost is
// O((|initial| + budget) n d). The refresh and the argmax are fused and
// parallelised over examples with OpenMP; the reduction compares
// (distance, index) so the result does not depend on thread scheduling.
//
// Throws std::invalid_argument on an empty initial set, an out-of-range
// initial index, or budget > n - |initial|. Duplicate initial indices are
// treated as one.
KCentersResult greedy_kcenters(const FeatureMatrix& features, std::span<const std::size_t> initial,
                               std::size_t budget);

// max_i min_{c in centers} ||x_i - x_c||_2
double kcenter_radius(const FeatureMatrix& features, std::span<const std::size_t> centers);

// Every non-initial index in the order greedy k-centers would add it.
IndexList kcenters_full_ranking(const FeatureMatrix& features, std::span<const std::size_t> initial);

// Converts an addition order over n examples into scores where earlier
// entries score higher (first of k gets k, last gets 1). Examples missing
// from the order score 0.
ScoreVector order_to_scores(std::span<const std::size_t> order, std::size_t n);

double squared_distance(std::span<const float> a, std::span<const float> b);

namespace serial {
KCentersResult greedy_kcenters(const FeatureMatrix& features, std::span<const std::size_t> initial,
                               std::size_t budget);
}  // namespace serial

}  // namespace svp
