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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <utility>

namespace svp {

// SplitMix64. Every random decision in the engine (dataset generation,
// parameter init, per-epoch shuffles, random subsets) draws from this stream,
// so a port that reproduces the four primitives below reproduces the runs:
//
//   next():        state += 0x9E3779B97F4A7C15; z = state;
//                  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
//                  z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
//                  return z ^ (z >> 31)
//   uniform():     (next() >> 11) * 2^-53                      in [0, 1)
//   below(k):      rejection sample next() until r >= (2^64 - k) % k,
//                  return r % k                                in [0, k)
//   normal():      Box-Muller on u1 = 1 - uniform(), u2 = uniform(),
//                  returns sqrt(-2 ln u1) * cos(2 pi u2); the sine half is
//                  discarded
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t below(std::uint64_t k) {
    const std::uint64_t threshold = (0 - k) % k;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % k;
    }
  }

  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Fisher-Yates from the back: for i = n-1 .. 1 swap(v[i], v[below(i+1)]).
  template <typename T>
  void shuffle(std::span<T> v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// Derives an independent stream seed from a base seed and a tag
// (round number, phase id). One SplitMix64 step over base ^ golden * (tag+1).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
  SplitMix64 g(base ^ (0xD1B54A32D192ED03ULL * (tag + 1)));
  return g.next();
}

}  // namespace svp
