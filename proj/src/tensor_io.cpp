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

#include "svp/tensor_io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>

namespace svp {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int k = 0; k < 8; ++k) out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}

std::uint16_t get_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  std::uint32_t v = 0;
  for (int k = 3; k >= 0; --k) v = (v << 8) | b[at + k];
  return v;
}

std::uint64_t get_u64(std::span<const std::uint8_t> b, std::size_t at) {
  std::uint64_t v = 0;
  for (int k = 7; k >= 0; --k) v = (v << 8) | b[at + k];
  return v;
}

struct Header {
  std::uint64_t rows;
  std::uint64_t cols;
};

// Shared header checks. Byte 6 is the dtype for SVPT and reserved for SVPL.
Header parse_header(std::span<const std::uint8_t> bytes, std::string_view magic, bool has_dtype) {
  if (bytes.size() < 4 || !std::equal(magic.begin(), magic.end(), bytes.begin())) {
    throw FormatError(FormatErrorKind::kBadMagic,
                      "bad magic: expected \"" + std::string(magic) + "\"");
  }
  if (bytes.size() < kHeaderBytes) {
    throw FormatError(FormatErrorKind::kTruncated, "truncated header: " +
                                                       std::to_string(bytes.size()) + " bytes");
  }
  const auto version = get_u16(bytes, 4);
  if (version != kFormatVersion) {
    throw FormatError(FormatErrorKind::kUnsupportedVersion,
                      "unsupported version " + std::to_string(version));
  }
  if (has_dtype && bytes[6] != 0) {
    throw FormatError(FormatErrorKind::kUnsupportedDtype,
                      "unsupported dtype " + std::to_string(bytes[6]));
  }
  if ((!has_dtype && bytes[6] != 0) || bytes[7] != 0) {
    throw FormatError(FormatErrorKind::kMalformedHeader, "reserved header byte is nonzero");
  }
  Header h{get_u64(bytes, 8), get_u64(bytes, 16)};
  if (h.rows == 0 || h.cols == 0) {
    throw FormatError(FormatErrorKind::kMalformedHeader, "zero dimension in header");
  }
  return h;
}

void check_payload(std::span<const std::uint8_t> bytes, const Header& h, std::size_t elem) {
  const auto limit = std::numeric_limits<std::uint64_t>::max() / elem;
  if (h.rows > limit / h.cols) {
    throw FormatError(FormatErrorKind::kMalformedHeader, "header dimensions overflow");
  }
  const std::uint64_t need = h.rows * h.cols * elem;
  const std::uint64_t have = bytes.size() - kHeaderBytes;
  if (have < need) {
    throw FormatError(FormatErrorKind::kTruncated,
                      "truncated payload: header declares " + std::to_string(h.rows) + "x" +
                          std::to_string(h.cols) + " (" + std::to_string(need) +
                          " bytes), found " + std::to_string(have));
  }
  if (have > need) {
    throw FormatError(FormatErrorKind::kTrailingBytes,
                      std::to_string(have - need) + " bytes after payload");
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::uint64_t parse_cell(std::string_view cell, std::size_t line) {
  cell = trim(cell);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
    throw FormatError(FormatErrorKind::kInvalidValue,
                      "line " + std::to_string(line) + ": not a nonnegative integer: \"" +
                          std::string(cell) + "\"");
  }
  return v;
}

}  // namespace

std::string_view to_string(FormatErrorKind kind) {
  switch (kind) {
    case FormatErrorKind::kIo: return "io";
    case FormatErrorKind::kBadMagic: return "bad_magic";
    case FormatErrorKind::kUnsupportedVersion: return "unsupported_version";
    case FormatErrorKind::kUnsupportedDtype: return "unsupported_dtype";
    case FormatErrorKind::kMalformedHeader: return "malformed_header";
    case FormatErrorKind::kTruncated: return "truncated";
    case FormatErrorKind::kTrailingBytes: return "trailing_bytes";
    case FormatErrorKind::kInvalidValue: return "invalid_value";
  }
  return "unknown";
}

ProbMatrix validate_prob_matrix(FeatureMatrix m) {
  if (m.cols() < 2) {
    throw ProbValidationError(0, 0.0, "probability matrix needs at least two classes");
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    double sum = 0.0;
    bool in_range = true;
    for (float p : r) {
      sum += p;
      if (!(p >= 0.0F && p <= 1.0F)) in_range = false;
    }
    if (!in_range) {
      throw ProbValidationError(i, sum,
                                "row " + std::to_string(i) + " has an entry outside [0, 1] (sum " +
                                    std::to_string(sum) + ")");
    }
    if (std::abs(sum - 1.0) > kProbRowSumTolerance) {
      throw ProbValidationError(i, sum,
                                "row " + std::to_string(i) + " sums to " + std::to_string(sum));
    }
  }
  return ProbMatrix(std::move(m));
}

std::vector<std::uint8_t> encode_tensor(const FeatureMatrix& m) {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderBytes + 4 * m.data().size());
  out.insert(out.end(), {'S', 'V', 'P', 'T'});
  put_u16(out, kFormatVersion);
  out.push_back(0);  // f32
  out.push_back(0);
  put_u64(out, m.rows());
  put_u64(out, m.cols());
  for (float v : m.data()) put_u32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

FeatureMatrix decode_tensor(std::span<const std::uint8_t> bytes) {
  const Header h = parse_header(bytes, "SVPT", true);
  check_payload(bytes, h, 4);
  std::vector<float> data(h.rows * h.cols);
  for (std::size_t k = 0; k < data.size(); ++k) {
    data[k] = std::bit_cast<float>(get_u32(bytes, kHeaderBytes + 4 * k));
    if (!std::isfinite(data[k])) {
      throw FormatError(FormatErrorKind::kInvalidValue,
                        "non-finite value at row " + std::to_string(k / h.cols));
    }
  }
  return FeatureMatrix(h.rows, h.cols, std::move(data));
}

std::vector<std::uint8_t> encode_train_log(const TrainLog& log) {
  if (log.examples() == 0 || log.steps() == 0) {
    throw std::invalid_argument("train log dimensions must be positive");
  }
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderBytes + log.data().size());
  out.insert(out.end(), {'S', 'V', 'P', 'L'});
  put_u16(out, kFormatVersion);
  out.push_back(0);
  out.push_back(0);
  put_u64(out, log.examples());
  put_u64(out, log.steps());
  out.insert(out.end(), log.data().begin(), log.data().end());
  return out;
}

TrainLog decode_train_log(std::span<const std::uint8_t> bytes) {
  const Header h = parse_header(bytes, "SVPL", false);
  check_payload(bytes, h, 1);
  std::vector<std::uint8_t> data(bytes.begin() + kHeaderBytes, bytes.end());
  for (std::size_t k = 0; k < data.size(); ++k) {
    if (data[k] > 1) {
      throw FormatError(FormatErrorKind::kInvalidValue,
                        "non-boolean byte " + std::to_string(data[k]) + " for example " +
                            std::to_string(k / h.cols) + ", step " + std::to_string(k % h.cols));
    }
  }
  return TrainLog(h.rows, h.cols, std::move(data));
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(FormatErrorKind::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw FormatError(FormatErrorKind::kIo, "read failed: " + path.string());
  return bytes;
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError(FormatErrorKind::kIo, "cannot open " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw FormatError(FormatErrorKind::kIo, "write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw FormatError(FormatErrorKind::kIo, "cannot rename onto " + path.string());
  }
}

void write_text_atomic(const std::filesystem::path& path, std::string_view text) {
  write_file_atomic(path, std::span<const std::uint8_t>(
                              reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

void write_tensor(const FeatureMatrix& m, const std::filesystem::path& path) {
  write_file_atomic(path, encode_tensor(m));
}

FeatureMatrix read_tensor(const std::filesystem::path& path) {
  return decode_tensor(read_file(path));
}

void write_train_log(const TrainLog& log, const std::filesystem::path& path) {
  write_file_atomic(path, encode_train_log(log));
}

TrainLog read_train_log(const std::filesystem::path& path) {
  return decode_train_log(read_file(path));
}

TrainLog parse_train_log_csv(std::string_view text) {
  struct Cell {
    std::uint64_t id, epoch, correct;
  };
  std::vector<Cell> cells;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "example_id,epoch,correct") {
        throw FormatError(FormatErrorKind::kMalformedHeader,
                          "expected CSV header example_id,epoch,correct");
      }
      header_seen = true;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
      throw FormatError(FormatErrorKind::kInvalidValue,
                        "line " + std::to_string(line_no) + ": expected three fields");
    }
    Cell c{parse_cell(line.substr(0, c1), line_no), parse_cell(line.substr(c1 + 1, c2 - c1 - 1), line_no),
           parse_cell(line.substr(c2 + 1), line_no)};
    if (c.correct > 1) {
      throw FormatError(FormatErrorKind::kInvalidValue,
                        "line " + std::to_string(line_no) + ": correct must be 0 or 1");
    }
    cells.push_back(c);
  }
  if (!header_seen) throw FormatError(FormatErrorKind::kMalformedHeader, "empty CSV");
  if (cells.empty()) throw FormatError(FormatErrorKind::kTruncated, "CSV has no rows");

  std::uint64_t n = 0, e = 0;
  for (const auto& c : cells) {
    n = std::max(n, c.id + 1);
    e = std::max(e, c.epoch + 1);
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    return a.id != b.id ? a.id < b.id : a.epoch < b.epoch;
  });
  std::vector<std::uint8_t> data;
  data.reserve(cells.size());
  std::uint64_t expect = 0;  // flat (id, epoch) position of the next cell
  for (const auto& c : cells) {
    const auto k = c.id * e + c.epoch;
    if (k < expect) {
      throw FormatError(FormatErrorKind::kInvalidValue,
                        "duplicate cell for example " + std::to_string(c.id) + ", epoch " +
                            std::to_string(c.epoch));
    }
    if (k > expect) {
      throw FormatError(FormatErrorKind::kTruncated,
                        "missing cell for example " + std::to_string(expect / e) + ", epoch " +
                            std::to_string(expect % e));
    }
    data.push_back(static_cast<std::uint8_t>(c.correct));
    ++expect;
  }
  if (expect != n * e) {
    throw FormatError(FormatErrorKind::kTruncated,
                      "missing cell for example " + std::to_string(expect / e) + ", epoch " +
                          std::to_string(expect % e));
  }
  return TrainLog(n, e, std::move(data));
}

TrainLog read_train_log_csv(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return parse_train_log_csv(
      std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

void write_labels(const LabelVector& labels, const std::filesystem::path& path) {
  std::vector<float> data(labels.values.begin(), labels.values.end());
  write_tensor(FeatureMatrix(labels.size(), 1, std::move(data)), path);
}

LabelVector read_labels(const std::filesystem::path& path, std::size_t classes) {
  const auto m = read_tensor(path);
  if (m.cols() != 1) {
    throw FormatError(FormatErrorKind::kInvalidValue, "label tensor must have one column");
  }
  std::vector<std::uint32_t> values;
  values.reserve(m.rows());
  std::uint32_t max_label = 0;
  for (float v : m.data()) {
    if (v < 0.0F || v != std::floor(v) || v > 16777216.0F) {
      throw FormatError(FormatErrorKind::kInvalidValue, "label is not a class index");
    }
    values.push_back(static_cast<std::uint32_t>(v));
    max_label = std::max(max_label, values.back());
  }
  if (classes == 0) classes = std::max<std::size_t>(2, max_label + 1);
  return LabelVector(std::move(values), classes);
}

}  // namespace svp
