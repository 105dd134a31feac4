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

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace svp {

using ScoreVector = std::vector<double>;
using IndexList = std::vector<std::size_t>;

// Dense row-major f32 matrix; rows are examples. Always n >= 1, d >= 1 and
// every entry finite.
class FeatureMatrix {
 public:
  FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<float> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<const float> data() const { return data_; }
  std::span<const float> row(std::size_t i) const {
    return std::span<const float>(data_).subspan(i * cols_, cols_);
  }
  float operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  // Rows in the given order.
  FeatureMatrix gather(std::span<const std::size_t> indices) const;

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<float> data_;
};

// Row-stochastic matrix; only obtainable through validate_prob_matrix or a
// learner's predict_proba.
class ProbMatrix {
 public:
  std::size_t rows() const { return m_.rows(); }
  std::size_t classes() const { return m_.cols(); }
  std::span<const float> row(std::size_t i) const { return m_.row(i); }
  const FeatureMatrix& matrix() const { return m_; }

 private:
  explicit ProbMatrix(FeatureMatrix m) : m_(std::move(m)) {}
  friend ProbMatrix validate_prob_matrix(FeatureMatrix m);

  FeatureMatrix m_;
};

// Class indices in [0, classes).
struct LabelVector {
  LabelVector(std::vector<std::uint32_t> values, std::size_t classes);

  std::size_t size() const { return values.size(); }
  std::uint32_t operator[](std::size_t i) const { return values[i]; }
  LabelVector gather(std::span<const std::size_t> indices) const;

  friend bool operator==(const LabelVector&, const LabelVector&) = default;

  std::vector<std::uint32_t> values;
  std::size_t classes;
};

// Per-example, per-observation correctness record, example-major.
class TrainLog {
 public:
  TrainLog(std::size_t examples, std::size_t steps);
  TrainLog(std::size_t examples, std::size_t steps, std::vector<std::uint8_t> correct);

  std::size_t examples() const { return examples_; }
  std::size_t steps() const { return steps_; }
  std::span<const std::uint8_t> row(std::size_t i) const {
    return std::span<const std::uint8_t>(correct_).subspan(i * steps_, steps_);
  }
  std::span<const std::uint8_t> data() const { return correct_; }
  void set(std::size_t i, std::size_t step, bool correct) {
    correct_[i * steps_ + step] = correct ? 1 : 0;
  }

  friend bool operator==(const TrainLog&, const TrainLog&) = default;

 private:
  std::size_t examples_;
  std::size_t steps_;
  std::vector<std::uint8_t> correct_;
};

}  // namespace svp
