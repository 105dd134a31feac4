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

#include "svp/config.hpp"

#include <fstream>
#include <sstream>

#include "svp/export.hpp"
#include "svp/tensor_io.hpp"

namespace svp {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string("missing required key \"") + key + "\"");
  }
  return j.at(key);
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for \"") + key + "\": " + e.what());
  }
}

std::size_t get_count(const json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ConfigError(std::string("\"") + key + "\" must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string csv_number(const std::optional<double>& v) { return v ? format_real(*v) : ""; }

}  // namespace

LearnerSpec learner_spec_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("learner spec must be an object");
  LearnerSpec s;
  const auto kind = get_or<std::string>(j, "kind", "logistic");
  const auto parsed = parse_learner_kind(kind);
  if (!parsed) throw ConfigError("unknown learner kind \"" + kind + "\"");
  s.kind = *parsed;
  s.hidden_units = get_count(j, "hidden_units", s.kind == LearnerKind::kMlp ? 64 : 0);
  s.epochs = get_count(j, "epochs", s.epochs);
  s.learning_rate = get_or<double>(j, "learning_rate", s.learning_rate);
  s.batch_size = get_count(j, "batch_size", s.batch_size);
  s.seed = get_or<std::uint64_t>(j, "seed", 0);
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return s;
}

json to_json(const LearnerSpec& s) {
  json j{{"kind", std::string(to_string(s.kind))},
         {"epochs", s.epochs},
         {"learning_rate", s.learning_rate},
         {"batch_size", s.batch_size},
         {"seed", s.seed}};
  if (s.kind == LearnerKind::kMlp) j["hidden_units"] = s.hidden_units;
  return j;
}

SyntheticParams synthetic_params_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("synthetic params must be an object");
  SyntheticParams p;
  p.classes = get_count(j, "classes", p.classes);
  p.dim = get_count(j, "dim", p.dim);
  p.separation = get_or<double>(j, "separation", p.separation);
  p.noise = get_or<double>(j, "noise", p.noise);
  p.train_size = get_count(j, "train_size", p.train_size);
  p.test_size = get_count(j, "test_size", p.test_size);
  p.seed = get_or<std::uint64_t>(j, "seed", p.seed);
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

RunConfig parse_run_config(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig cfg;
  cfg.task = require(j, "task").get<std::string>();
  if (cfg.task != "al" && cfg.task != "coreset") {
    throw ConfigError("task must be \"al\" or \"coreset\"");
  }
  const auto proxy = learner_spec_from_json(require(j, "proxy"));
  const auto target = learner_spec_from_json(require(j, "target"));
  const auto method = require(j, "method").get<std::string>();
  const auto seed = get_or<std::uint64_t>(j, "seed", 0);
  std::optional<double> baseline;
  if (j.contains("baseline_selection_seconds")) {
    baseline = get_or<double>(j, "baseline_selection_seconds", 0.0);
  }

  if (cfg.task == "al") {
    const auto m = parse_al_method(method);
    if (!m) throw ConfigError("unknown active-learning method \"" + method + "\"");
    cfg.al.proxy = proxy;
    cfg.al.target = target;
    cfg.al.method = *m;
    cfg.al.budget_fraction = require(j, "budget_fraction").get<double>();
    if (j.contains("schedule")) {
      const auto& s = j.at("schedule");
      cfg.al.schedule.initial = get_or<double>(s, "initial", cfg.al.schedule.initial);
      cfg.al.schedule.first = get_or<double>(s, "first", cfg.al.schedule.first);
      cfg.al.schedule.subsequent = get_or<double>(s, "subsequent", cfg.al.schedule.subsequent);
    }
    cfg.al.seed = seed;
    cfg.al.evaluate_target_each_round = get_or<bool>(j, "evaluate_target_each_round", false);
    cfg.al.baseline_selection_seconds = baseline;
    try {
      schedule_sizes(cfg.al.schedule, cfg.al.budget_fraction, 1000);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } else {
    const auto m = parse_coreset_method(method);
    if (!m) throw ConfigError("unknown core-set method \"" + method + "\"");
    cfg.coreset.proxy = proxy;
    cfg.coreset.target = target;
    cfg.coreset.method = *m;
    cfg.coreset.subset_fraction = require(j, "subset_fraction").get<double>();
    if (!(cfg.coreset.subset_fraction > 0.0 && cfg.coreset.subset_fraction <= 1.0)) {
      throw ConfigError("subset_fraction must lie in (0, 1]");
    }
    cfg.coreset.seed = seed;
    cfg.coreset.evaluate_full_data = get_or<bool>(j, "evaluate_full_data", false);
    cfg.coreset.baseline_selection_seconds = baseline;
  }

  const auto& data = require(j, "data");
  if (data.contains("synthetic")) {
    cfg.data.synthetic = synthetic_params_from_json(data.at("synthetic"));
  } else {
    cfg.data.train_features = resolve(base_dir, require(data, "train_features").get<std::string>());
    cfg.data.train_labels = resolve(base_dir, require(data, "train_labels").get<std::string>());
    cfg.data.test_features = resolve(base_dir, require(data, "test_features").get<std::string>());
    cfg.data.test_labels = resolve(base_dir, require(data, "test_labels").get<std::string>());
  }
  cfg.output = resolve(base_dir, require(j, "output").get<std::string>());
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(FormatErrorKind::kIo, "cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON in ") + path.string() + ": " + e.what());
  }
  try {
    return parse_run_config(j, path.parent_path());
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  }
}

std::pair<Dataset, Dataset> load_datasets(const DataSource& source) {
  if (source.synthetic) {
    auto d = make_synthetic(*source.synthetic);
    return {std::move(d.train), std::move(d.test)};
  }
  auto train_x = read_tensor(source.train_features);
  auto train_y = read_labels(source.train_labels);
  auto test_x = read_tensor(source.test_features);
  auto test_y = read_labels(source.test_labels);
  const auto classes = std::max(train_y.classes, test_y.classes);
  train_y.classes = classes;
  test_y.classes = classes;
  return {Dataset{std::move(train_x), std::move(train_y)},
          Dataset{std::move(test_x), std::move(test_y)}};
}

json report_to_json(const RunReport& r) {
  json rounds = json::array();
  for (const auto& rec : r.rounds) {
    rounds.push_back({{"round", rec.round},
                      {"labeled_size", rec.labeled_size},
                      {"added", rec.added},
                      {"proxy_test_error", optional_number(rec.proxy_test_error)},
                      {"target_test_error", optional_number(rec.target_test_error)}});
  }
  return json{{"task", r.task},
              {"method", r.method},
              {"pool_size", r.pool_size},
              {"rounds", rounds},
              {"selected", r.selected},
              {"target_test_error", r.target_test_error},
              {"full_data_test_error", optional_number(r.full_data_test_error)}};
}

json timing_to_json(const RunReport& r) {
  json rounds = json::array();
  for (const auto& rec : r.rounds) {
    rounds.push_back({{"round", rec.round},
                      {"proxy_fit_seconds", rec.times.proxy_fit},
                      {"scoring_seconds", rec.times.scoring},
                      {"selection_seconds", rec.times.selection}});
  }
  return json{{"selection_seconds", r.selection_seconds},
              {"speedup", optional_number(r.speedup)},
              {"rounds", rounds}};
}

std::string report_to_csv(const RunReport& r) {
  std::ostringstream out;
  out << "round,labeled_size,added,proxy_test_error,target_test_error\n";
  for (const auto& rec : r.rounds) {
    out << rec.round << ',' << rec.labeled_size << ',' << rec.added << ','
        << csv_number(rec.proxy_test_error) << ',' << csv_number(rec.target_test_error) << '\n';
  }
  return out.str();
}

void write_run_outputs(const RunReport& report, const std::filesystem::path& output) {
  auto csv = output;
  csv.replace_extension(".csv");
  auto timing = output;
  timing += ".timing.json";
  write_text_atomic(output, report_to_json(report).dump(2) + "\n");
  write_text_atomic(csv, report_to_csv(report));
  write_text_atomic(timing, timing_to_json(report).dump(2) + "\n");
}

RunReport execute(const RunConfig& cfg) {
  const auto [train, test] = load_datasets(cfg.data);
  if (cfg.task == "al") return run_active_learning(cfg.al, train, test);
  return run_coreset(cfg.coreset, train, test);
}

}  // namespace svp
