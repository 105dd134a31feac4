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

#include "svp/matrix.hpp"

#include <cmath>
#include <string>

namespace svp {

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<float> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows_ == 0 || cols_ == 0) {
    throw std::invalid_argument("matrix must have at least one row and one column");
  }
  if (data_.size() / cols_ != rows_ || data_.size() % cols_ != 0) {
    throw std::invalid_argument("matrix data length does not match " + std::to_string(rows_) +
                                "x" + std::to_string(cols_));
  }
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (!std::isfinite(data_[k])) {
      throw std::invalid_argument("non-finite matrix entry at row " + std::to_string(k / cols_));
    }
  }
}

FeatureMatrix FeatureMatrix::gather(std::span<const std::size_t> indices) const {
  std::vector<float> out;
  out.reserve(indices.size() * cols_);
  for (std::size_t i : indices) {
    if (i >= rows_) throw std::out_of_range("row index out of range");
    const auto r = row(i);
    out.insert(out.end(), r.begin(), r.end());
  }
  return FeatureMatrix(indices.size(), cols_, std::move(out));
}

LabelVector::LabelVector(std::vector<std::uint32_t> v, std::size_t c)
    : values(std::move(v)), classes(c) {
  if (classes < 2) throw std::invalid_argument("label vector needs at least two classes");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= classes) {
      throw std::invalid_argument("label " + std::to_string(values[i]) + " at index " +
                                  std::to_string(i) + " is not below class count " +
                                  std::to_string(classes));
    }
  }
}

LabelVector LabelVector::gather(std::span<const std::size_t> indices) const {
  std::vector<std::uint32_t> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(values.at(i));
  return LabelVector(std::move(out), classes);
}

TrainLog::TrainLog(std::size_t examples, std::size_t steps)
    : TrainLog(examples, steps, std::vector<std::uint8_t>(examples * steps, 0)) {}

TrainLog::TrainLog(std::size_t examples, std::size_t steps, std::vector<std::uint8_t> correct)
    : examples_(examples), steps_(steps), correct_(std::move(correct)) {
  if (correct_.size() != examples_ * steps_) {
    throw std::invalid_argument("train log length does not match dimensions");
  }
  for (auto b : correct_) {
    if (b > 1) throw std::invalid_argument("train log values must be 0 or 1");
  }
}

}  // namespace svp
