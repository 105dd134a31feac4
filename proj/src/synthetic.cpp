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

#include "svp/synthetic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "svp/rng.hpp"

namespace svp {

namespace {

Dataset sample(const std::vector<std::vector<double>>& means, double noise, std::size_t n,
               SplitMix64& rng) {
  const std::size_t c = means.size();
  const std::size_t d = means.front().size();
  std::vector<float> x(n * d);
  std::vector<std::uint32_t> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto label = static_cast<std::uint32_t>(i % c);
    y[i] = label;
    for (std::size_t j = 0; j < d; ++j) {
      x[i * d + j] = static_cast<float>(means[label][j] + noise * rng.normal());
    }
  }
  return Dataset{FeatureMatrix(n, d, std::move(x)), LabelVector(std::move(y), c)};
}

SyntheticDataset build(std::vector<std::vector<double>> means, double noise, std::size_t train,
                       std::size_t test, SplitMix64& rng) {
  Dataset tr = sample(means, noise, train, rng);
  Dataset te = sample(means, noise, test, rng);
  SyntheticParams p;
  p.classes = means.size();
  p.dim = means.front().size();
  p.noise = noise;
  p.train_size = train;
  p.test_size = test;
  return SyntheticDataset{p, std::move(means), std::move(tr), std::move(te)};
}

void check_blob_args(const std::vector<std::vector<double>>& means, double noise,
                     std::size_t train, std::size_t test) {
  if (means.size() < 2) throw std::invalid_argument("need at least two classes");
  if (means.front().empty()) throw std::invalid_argument("dimension must be positive");
  for (const auto& m : means) {
    if (m.size() != means.front().size()) throw std::invalid_argument("ragged mean matrix");
  }
  if (!(noise >= 0.0) || !std::isfinite(noise)) throw std::invalid_argument("noise must be >= 0");
  if (train == 0 || test == 0) throw std::invalid_argument("split sizes must be positive");
}

}  // namespace

void SyntheticParams::validate() const {
  if (classes < 2) throw std::invalid_argument("need at least two classes");
  if (dim == 0) throw std::invalid_argument("dimension must be positive");
  if (!(separation > 0.0) || !std::isfinite(separation)) {
    throw std::invalid_argument("separation must be positive");
  }
  if (!(noise >= 0.0) || !std::isfinite(noise)) throw std::invalid_argument("noise must be >= 0");
  if (train_size == 0 || test_size == 0) throw std::invalid_argument("split sizes must be positive");
}

SyntheticDataset make_synthetic(const SyntheticParams& params) {
  params.validate();
  SplitMix64 rng(params.seed);
  std::vector<std::vector<double>> means(params.classes, std::vector<double>(params.dim));
  for (auto& m : means) {
    for (double& v : m) v = rng.normal();
  }
  double closest = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < params.classes; ++a) {
    for (std::size_t b = a + 1; b < params.classes; ++b) {
      double s = 0.0;
      for (std::size_t j = 0; j < params.dim; ++j) {
        const double diff = means[a][j] - means[b][j];
        s += diff * diff;
      }
      closest = std::min(closest, std::sqrt(s));
    }
  }
  if (!(closest > 0.0)) throw std::runtime_error("degenerate class means");
  const double scale = params.separation / closest;
  for (auto& m : means) {
    for (double& v : m) v *= scale;
  }
  auto out = build(std::move(means), params.noise, params.train_size, params.test_size, rng);
  out.params = params;
  return out;
}

SyntheticDataset make_blobs(std::vector<std::vector<double>> means, double noise,
                            std::size_t train_size, std::size_t test_size, std::uint64_t seed) {
  check_blob_args(means, noise, train_size, test_size);
  SplitMix64 rng(seed);
  auto out = build(std::move(means), noise, train_size, test_size, rng);
  out.params.seed = seed;
  out.params.separation = 0.0;
  return out;
}

}  // namespace svp
