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
#include <span>
#include <vector>

#include "svp/matrix.hpp"

namespace svp {

struct Dataset {
  FeatureMatrix features;
  LabelVector labels;
};

struct SyntheticParams {
  std::size_t classes = 4;
  std::size_t dim = 10;
  // Smallest distance between two class means.
  double separation = 3.0;
  // Per-coordinate standard deviation around the mean.
  double noise = 1.0;
  std::size_t train_size = 2000;
  std::size_t test_size = 2000;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SyntheticDataset {
  SyntheticParams params;
  // classes x dim
  std::vector<std::vector<double>> means;
  Dataset train;
  Dataset test;
};

// Gaussian blobs. One SplitMix64(seed) stream draws, in order: the
// classes x dim mean matrix (standard normals, then rescaled so the closest
// pair of means is exactly `separation` apart), the training examples, then
// the test examples. Example i has label i % classes; its coordinates are
// mean + noise * normal().
SyntheticDataset make_synthetic(const SyntheticParams& params);

// Blobs around caller-supplied means (one per class), same sampling rules.
// The generator for the samples is SplitMix64(seed).
SyntheticDataset make_blobs(std::vector<std::vector<double>> means, double noise,
                            std::size_t train_size, std::size_t test_size, std::uint64_t seed);

}  // namespace svp
