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
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "svp/matrix.hpp"

namespace svp {

// SVPT tensor file (all integers little-endian):
//   0..3   magic "SVPT"
//   4..5   version u16 = 1
//   6      dtype u8 = 0 (f32)
//   7      reserved = 0
//   8..15  rows u64
//   16..23 cols u64
//   24..   rows*cols f32, row-major
//
// SVPL train-log file:
//   0..3   magic "SVPL"
//   4..5   version u16 = 1
//   6..7   reserved = 0
//   8..15  examples u64
//   16..23 steps u64
//   24..   examples*steps bytes in {0,1}, example-major
inline constexpr std::size_t kHeaderBytes = 24;
inline constexpr std::uint16_t kFormatVersion = 1;

enum class FormatErrorKind {
  kIo,
  kBadMagic,
  kUnsupportedVersion,
  kUnsupportedDtype,
  kMalformedHeader,   // nonzero reserved byte or zero dimension
  kTruncated,
  kTrailingBytes,
  kInvalidValue,      // non-finite float, non-boolean log byte, bad CSV cell
};

std::string_view to_string(FormatErrorKind kind);

class FormatError : public std::runtime_error {
 public:
  FormatError(FormatErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  FormatErrorKind kind() const { return kind_; }

 private:
  FormatErrorKind kind_;
};

// Raised by validate_prob_matrix; row() is the first offending row and
// row_sum() its sum (computed in double).
class ProbValidationError : public std::invalid_argument {
 public:
  ProbValidationError(std::size_t row, double row_sum, const std::string& what)
      : std::invalid_argument(what), row_(row), row_sum_(row_sum) {}
  std::size_t row() const { return row_; }
  double row_sum() const { return row_sum_; }

 private:
  std::size_t row_;
  double row_sum_;
};

inline constexpr double kProbRowSumTolerance = 1e-5;

ProbMatrix validate_prob_matrix(FeatureMatrix m);

std::vector<std::uint8_t> encode_tensor(const FeatureMatrix& m);
FeatureMatrix decode_tensor(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_train_log(const TrainLog& log);
TrainLog decode_train_log(std::span<const std::uint8_t> bytes);

void write_tensor(const FeatureMatrix& m, const std::filesystem::path& path);
FeatureMatrix read_tensor(const std::filesystem::path& path);
void write_train_log(const TrainLog& log, const std::filesystem::path& path);
TrainLog read_train_log(const std::filesystem::path& path);

// CSV with header `example_id,epoch,correct`. Every (id, epoch) cell of the
// implied max_id+1 by max_epoch+1 grid must appear exactly once.
TrainLog parse_train_log_csv(std::string_view text);
TrainLog read_train_log_csv(const std::filesystem::path& path);

// Labels stored as an n x 1 SVPT of integral values.
void write_labels(const LabelVector& labels, const std::filesystem::path& path);
LabelVector read_labels(const std::filesystem::path& path, std::size_t classes = 0);

// Whole-file helpers. write_file_atomic writes to a sibling temp file and
// renames it over the target, so a failed write leaves no partial output.
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text_atomic(const std::filesystem::path& path, std::string_view text);

}  // namespace svp
