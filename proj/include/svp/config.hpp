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
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "svp/harness.hpp"
#include "svp/learner.hpp"
#include "svp/synthetic.hpp"

namespace svp {

// Where a run's data comes from: generated blobs, or SVPT feature files
// with n x 1 SVPT label files.
struct DataSource {
  std::optional<SyntheticParams> synthetic;
  std::filesystem::path train_features, train_labels, test_features, test_labels;
};

// A harness run described by a JSON file:
//
//   {
//     "task": "al" | "coreset",
//     "proxy":  {"kind": "logistic", "epochs": 20, "learning_rate": 0.1,
//                "batch_size": 32, "seed": 1},
//     "target": {"kind": "mlp", "hidden_units": 64, ...},
//     "method": "least_confidence" | "kcenters" | "random"            (al)
//               "entropy" | "kcenters" | "forgetting" | "random"      (coreset)
//     "budget_fraction": 0.3,                                         (al)
//     "schedule": {"initial": 0.02, "first": 0.08, "subsequent": 0.1} (al)
//     "subset_fraction": 0.5,                                         (coreset)
//     "data": {"synthetic": {"classes": 4, "dim": 10, "separation": 3,
//                            "noise": 1, "train_size": 2000,
//                            "test_size": 2000, "seed": 0}}
//          or {"train_features": "x.svpt", "train_labels": "y.svpt",
//              "test_features": ..., "test_labels": ...},
//     "seed": 7,
//     "output": "report.json"
//   }
//
// Optional keys: "evaluate_target_each_round" (al), "evaluate_full_data"
// (coreset), "baseline_selection_seconds". Relative paths are resolved
// against the directory holding the config file.
struct RunConfig {
  std::string task;
  AlConfig al;
  CoresetConfig coreset;
  DataSource data;
  std::filesystem::path output;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

LearnerSpec learner_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const LearnerSpec& spec);
SyntheticParams synthetic_params_from_json(const nlohmann::json& j);

RunConfig parse_run_config(const nlohmann::json& j, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

std::pair<Dataset, Dataset> load_datasets(const DataSource& source);

// Deterministic part of a report (no wall-clock values).
nlohmann::json report_to_json(const RunReport& report);
// Wall-clock values only.
nlohmann::json timing_to_json(const RunReport& report);
// One row per round: round,labeled_size,added,proxy_test_error,target_test_error
std::string report_to_csv(const RunReport& report);

// Writes <output> (report JSON), <output stem>.csv and <output>.timing.json.
void write_run_outputs(const RunReport& report, const std::filesystem::path& output);

RunReport execute(const RunConfig& cfg);

}  // namespace svp
