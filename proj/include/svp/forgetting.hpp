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

#include "svp/matrix.hpp"

namespace svp {

// Forgetting events for one example. Examples never classified correctly
// are flagged rather than given a sentinel count; they outrank every finite
// count.
struct ForgettingScore {
  bool never_learned = false;
  std::uint32_t count = 0;

  friend bool operator==(const ForgettingScore&, const ForgettingScore&) = default;
};

// Per-example running state, updated once per observation of the example.
struct ForgettingState {
  bool prev_correct = false;
  bool ever_correct = false;
  std::uint32_t count = 0;

  ForgettingScore score() const { return {!ever_correct, ever_correct ? count : 0}; }

  friend bool operator==(const ForgettingState&, const ForgettingState&) = default;
};

// One observation: a correct -> incorrect transition counts as a forgetting
// event. The accuracy is the one seen before the gradient step.
ForgettingState streaming_update(ForgettingState prev, bool correct);

std::vector<ForgettingScore> process_log(const TrainLog& log);

// True when a should be selected before b (a at index ia, b at index ib):
// never_learned first, then higher count, then lower index.
bool forgets_more(const ForgettingScore& a, std::size_t ia, const ForgettingScore& b,
                  std::size_t ib);

// The m most-forgotten examples, in priority order.
IndexList select_most_forgotten(std::span<const ForgettingScore> scores, std::size_t m);

// Real-valued scores for rank correlation: count, with never-learned
// examples mapped to (largest finite count + 1) so they share the top rank.
ScoreVector forgetting_rank_scores(std::span<const ForgettingScore> scores);

namespace serial {
std::vector<ForgettingScore> process_log(const TrainLog& log);
}  // namespace serial

}  // namespace svp
