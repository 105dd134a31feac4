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

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "svp/forgetting.hpp"
#include "svp/kcenters.hpp"
#include "svp/matrix.hpp"

namespace svp {

// Shortest decimal that reads back to the same double.
std::string format_real(double v);

// example_id,score
std::string scores_to_csv(std::span<const double> scores);
// rank,example_id,min_dist (rank starts at 1; min_dist is the max-min
// distance at the moment the example was picked)
std::string kcenters_to_csv(const KCentersResult& result);
// example_id,never_learned,count
std::string forgetting_to_csv(std::span<const ForgettingScore> scores);

// n x 1 tensor of scores (f32).
FeatureMatrix scores_to_tensor(std::span<const double> scores);

// (example_id, value) pairs sorted by example_id, read from either a CSV
// with a header naming `example_id` and `column`, or a single-column SVPT
// file (row index as id). Duplicate ids are an error.
using KeyedValues = std::vector<std::pair<std::size_t, double>>;
KeyedValues parse_keyed_csv(std::string_view text, std::string_view column);
KeyedValues read_keyed_values(const std::filesystem::path& path, std::string_view column);

// Reads a list of example ids: one per line, optional `example_id` header.
IndexList parse_index_list(std::string_view text);
IndexList read_index_list(const std::filesystem::path& path);

}  // namespace svp
