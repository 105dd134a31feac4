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

#include "svp/export.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "svp/tensor_io.hpp"

namespace svp {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto c = line.find(',');
    out.push_back(trim(line.substr(0, c)));
    if (c == std::string_view::npos) break;
    line.remove_prefix(c + 1);
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = trim(text.substr(0, nl));
    if (!line.empty()) out.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

std::size_t parse_index(std::string_view s, std::size_t line) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError(FormatErrorKind::kInvalidValue,
                      "line " + std::to_string(line) + ": bad example id \"" + std::string(s) + "\"");
  }
  return v;
}

double parse_double(std::string_view s, std::size_t line) {
  // strtod needs a terminated string; from_chars<double> is missing on older libstdc++
  const std::string buf(s);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size() || errno == ERANGE || !std::isfinite(v)) {
    throw FormatError(FormatErrorKind::kInvalidValue,
                      "line " + std::to_string(line) + ": bad number \"" + buf + "\"");
  }
  return v;
}

KeyedValues finish(KeyedValues v) {
  std::sort(v.begin(), v.end());
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k].first == v[k - 1].first) {
      throw FormatError(FormatErrorKind::kInvalidValue,
                        "duplicate example id " + std::to_string(v[k].first));
    }
  }
  return v;
}

std::string text_of(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return std::string(bytes.begin(), bytes.end());
}

}  // namespace

std::string format_real(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string scores_to_csv(std::span<const double> scores) {
  std::ostringstream out;
  out << "example_id,score\n";
  for (std::size_t i = 0; i < scores.size(); ++i) out << i << ',' << format_real(scores[i]) << '\n';
  return out.str();
}

std::string kcenters_to_csv(const KCentersResult& result) {
  std::ostringstream out;
  out << "rank,example_id,min_dist\n";
  for (std::size_t k = 0; k < result.order.size(); ++k) {
    out << k + 1 << ',' << result.order[k] << ',' << format_real(result.selected_dists[k]) << '\n';
  }
  return out.str();
}

std::string forgetting_to_csv(std::span<const ForgettingScore> scores) {
  std::ostringstream out;
  out << "example_id,never_learned,count\n";
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out << i << ',' << (scores[i].never_learned ? 1 : 0) << ',' << scores[i].count << '\n';
  }
  return out.str();
}

FeatureMatrix scores_to_tensor(std::span<const double> scores) {
  std::vector<float> data(scores.begin(), scores.end());
  return FeatureMatrix(scores.size(), 1, std::move(data));
}

KeyedValues parse_keyed_csv(std::string_view text, std::string_view column) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw FormatError(FormatErrorKind::kMalformedHeader, "empty CSV");
  const auto header = split(lines.front());
  const auto find = [&](std::string_view name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw FormatError(FormatErrorKind::kMalformedHeader,
                        "CSV header lacks column \"" + std::string(name) + "\"");
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto id_col = find("example_id");
  const auto val_col = find(column);
  KeyedValues out;
  out.reserve(lines.size() - 1);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto cells = split(lines[k]);
    if (cells.size() != header.size()) {
      throw FormatError(FormatErrorKind::kInvalidValue,
                        "line " + std::to_string(k + 1) + ": expected " +
                            std::to_string(header.size()) + " fields");
    }
    out.emplace_back(parse_index(cells[id_col], k + 1), parse_double(cells[val_col], k + 1));
  }
  return finish(std::move(out));
}

KeyedValues read_keyed_values(const std::filesystem::path& path, std::string_view column) {
  if (path.extension() == ".svpt") {
    const auto m = read_tensor(path);
    if (m.cols() != 1) {
      throw FormatError(FormatErrorKind::kInvalidValue, "score tensor must have one column");
    }
    KeyedValues out;
    for (std::size_t i = 0; i < m.rows(); ++i) out.emplace_back(i, m(i, 0));
    return out;
  }
  return parse_keyed_csv(text_of(path), column);
}

IndexList parse_index_list(std::string_view text) {
  IndexList out;
  const auto lines = lines_of(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const auto first = split(lines[k]).front();
    if (k == 0 && first == "example_id") continue;
    out.push_back(parse_index(first, k + 1));
  }
  return out;
}

IndexList read_index_list(const std::filesystem::path& path) {
  return parse_index_list(text_of(path));
}

}  // namespace svp
