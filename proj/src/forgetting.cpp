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

#include "svp/forgetting.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace svp {

namespace {

ForgettingScore fold_row(std::span<const std::uint8_t> row) {
  ForgettingState s;
  for (auto acc : row) s = streaming_update(s, acc != 0);
  return s.score();
}

}  // namespace

ForgettingState streaming_update(ForgettingState prev, bool correct) {
  ForgettingState next = prev;
  if (prev.prev_correct && !correct) ++next.count;
  next.prev_correct = correct;
  next.ever_correct = prev.ever_correct || correct;
  return next;
}

std::vector<ForgettingScore> process_log(const TrainLog& log) {
  std::vector<ForgettingScore> out(log.examples());
  const auto n = static_cast<std::ptrdiff_t>(log.examples());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = fold_row(log.row(static_cast<std::size_t>(i)));
  }
  return out;
}

namespace serial {
std::vector<ForgettingScore> process_log(const TrainLog& log) {
  std::vector<ForgettingScore> out(log.examples());
  for (std::size_t i = 0; i < log.examples(); ++i) out[i] = fold_row(log.row(i));
  return out;
}
}  // namespace serial

bool forgets_more(const ForgettingScore& a, std::size_t ia, const ForgettingScore& b,
                  std::size_t ib) {
  if (a.never_learned != b.never_learned) return a.never_learned;
  if (a.count != b.count) return a.count > b.count;
  return ia < ib;
}

IndexList select_most_forgotten(std::span<const ForgettingScore> scores, std::size_t m) {
  if (m > scores.size()) {
    throw std::invalid_argument("cannot select " + std::to_string(m) + " of " +
                                std::to_string(scores.size()) + " examples");
  }
  IndexList idx(scores.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(m), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      return forgets_more(scores[a], a, scores[b], b);
                    });
  idx.resize(m);
  return idx;
}

ScoreVector forgetting_rank_scores(std::span<const ForgettingScore> scores) {
  std::uint32_t top = 0;
  for (const auto& s : scores) {
    if (!s.never_learned) top = std::max(top, s.count);
  }
  ScoreVector out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out[i] = scores[i].never_learned ? static_cast<double>(top) + 1.0 : scores[i].count;
  }
  return out;
}

}  // namespace svp
