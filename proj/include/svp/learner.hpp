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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "svp/forgetting.hpp"
#include "svp/matrix.hpp"

namespace svp {

enum class LearnerKind { kLogistic, kMlp };

std::optional<LearnerKind> parse_learner_kind(std::string_view name);
std::string_view to_string(LearnerKind kind);

// Hyperparameters of a desk-scale learner. A proxy is obtained by shrinking
// capacity (logistic instead of mlp, fewer hidden units) or the epoch budget.
struct LearnerSpec {
  LearnerKind kind = LearnerKind::kLogistic;
  std::size_t hidden_units = 0;  // mlp only
  std::size_t epochs = 20;
  double learning_rate = 0.1;
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument when an invariant is broken.
  void validate() const;

  friend bool operator==(const LearnerSpec&, const LearnerSpec&) = default;
};

// Parameters live in one flat vector:
//   logistic: W[c x d], b[c]
//   mlp:      W1[h x d], b1[h], W2[c x h], b2[c]   (ReLU hidden layer)
struct TrainedModel {
  LearnerSpec spec;
  std::size_t input_dim = 0;
  std::size_t classes = 0;
  std::vector<double> params;
  // Correctness of every example at every epoch, observed on the forward
  // pass right before the mini-batch gradient step.
  TrainLog train_log{0, 0};
  // Forgetting state accumulated online from the same observations.
  std::vector<ForgettingState> forgetting;
  // Mean pre-update cross-entropy per epoch.
  std::vector<double> epoch_loss;

  std::size_t embedding_dim() const {
    return spec.kind == LearnerKind::kMlp ? spec.hidden_units : input_dim;
  }
};

// Freshly initialised model: zeros for logistic, U(-1/sqrt(fan_in),
// 1/sqrt(fan_in)) weights and zero biases for mlp, drawn from SplitMix64(seed).
TrainedModel init_model(const LearnerSpec& spec, std::size_t input_dim, std::size_t classes);

// Mini-batch cross-entropy SGD from scratch. Deterministic in (spec, data):
// each epoch shuffles the example order with the generator that produced
// the initial weights.
TrainedModel fit(const LearnerSpec& spec, const FeatureMatrix& features, const LabelVector& labels);

ProbMatrix predict_proba(const TrainedModel& model, const FeatureMatrix& features);

// Final hidden layer (post-ReLU) for mlp; the input itself for logistic.
FeatureMatrix embed(const TrainedModel& model, const FeatureMatrix& features);

// argmax of the logits; ties go to the lower class index.
std::vector<std::uint32_t> predict(const TrainedModel& model, const FeatureMatrix& features);

double error_rate(const TrainedModel& model, const FeatureMatrix& features,
                  const LabelVector& labels);

// Mean cross-entropy over `batch`; when grad is non-null it receives the
// gradient with respect to model.params (same layout).
double loss_and_gradient(const TrainedModel& model, const FeatureMatrix& features,
                         const LabelVector& labels, std::span<const std::size_t> batch,
                         std::vector<double>* grad);

double dataset_loss(const TrainedModel& model, const FeatureMatrix& features,
                    const LabelVector& labels);

// Weight matrices for inspection, biases as the last column:
// logistic -> {"weights": c x (d+1)}; mlp -> {"hidden": h x (d+1), "output": c x (h+1)}.
std::vector<std::pair<std::string, FeatureMatrix>> parameter_tensors(const TrainedModel& model);

}  // namespace svp
