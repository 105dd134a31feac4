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

#include "svp/learner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "svp/rng.hpp"
#include "svp/tensor_io.hpp"

namespace svp {

namespace {

// Offsets into the flat parameter vector.
struct Layout {
  std::size_t d, h, c;
  bool mlp;

  std::size_t w1() const { return 0; }
  std::size_t b1() const { return h * d; }
  std::size_t w2() const { return b1() + h; }
  std::size_t b2() const { return w2() + c * h; }
  std::size_t total() const { return mlp ? b2() + c : c * d + c; }
  // logistic aliases
  std::size_t w() const { return 0; }
  std::size_t b() const { return c * d; }
};

Layout layout_of(const TrainedModel& m) {
  const bool mlp = m.spec.kind == LearnerKind::kMlp;
  return {m.input_dim, mlp ? m.spec.hidden_units : 0, m.classes, mlp};
}

// Scratch buffers for one example's forward/backward pass.
struct Workspace {
  std::vector<double> x, pre, hidden, logits, probs, dhidden;

  explicit Workspace(const Layout& l)
      : x(l.d), pre(l.h), hidden(l.h), logits(l.c), probs(l.c), dhidden(l.h) {}
};

void softmax(std::span<const double> z, std::span<double> p) {
  const double top = *std::max_element(z.begin(), z.end());
  double denom = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    p[k] = std::exp(z[k] - top);
    denom += p[k];
  }
  for (double& v : p) v /= denom;
}

void forward(const Layout& l, std::span<const double> w, std::span<const float> row, Workspace& ws) {
  for (std::size_t j = 0; j < l.d; ++j) ws.x[j] = row[j];
  std::span<const double> in = ws.x;
  std::size_t in_dim = l.d, wo = l.w(), bo = l.b();
  if (l.mlp) {
    for (std::size_t u = 0; u < l.h; ++u) {
      const double* wr = &w[l.w1() + u * l.d];
      double s = w[l.b1() + u];
      for (std::size_t j = 0; j < l.d; ++j) s += wr[j] * ws.x[j];
      ws.pre[u] = s;
      ws.hidden[u] = s > 0.0 ? s : 0.0;
    }
    in = ws.hidden;
    in_dim = l.h;
    wo = l.w2();
    bo = l.b2();
  }
  for (std::size_t k = 0; k < l.c; ++k) {
    const double* wr = &w[wo + k * in_dim];
    double s = w[bo + k];
    for (std::size_t j = 0; j < in_dim; ++j) s += wr[j] * in[j];
    ws.logits[k] = s;
  }
  softmax(ws.logits, ws.probs);
}

std::uint32_t argmax(std::span<const double> z) {
  return static_cast<std::uint32_t>(std::max_element(z.begin(), z.end()) - z.begin());
}

double cross_entropy(const Workspace& ws, std::uint32_t label) {
  // log-sum-exp form stays finite when the softmax underflows
  const double top = *std::max_element(ws.logits.begin(), ws.logits.end());
  double denom = 0.0;
  for (double z : ws.logits) denom += std::exp(z - top);
  return top + std::log(denom) - ws.logits[label];
}

// Adds the per-example gradient (scaled by `scale`) into g.
void backward(const Layout& l, std::span<const double> w, Workspace& ws, std::uint32_t label,
              double scale, std::span<double> g) {
  std::span<const double> in = ws.x;
  std::size_t in_dim = l.d, wo = l.w(), bo = l.b();
  if (l.mlp) {
    in = ws.hidden;
    in_dim = l.h;
    wo = l.w2();
    bo = l.b2();
    std::fill(ws.dhidden.begin(), ws.dhidden.end(), 0.0);
  }
  for (std::size_t k = 0; k < l.c; ++k) {
    const double dz = scale * (ws.probs[k] - (k == label ? 1.0 : 0.0));
    g[bo + k] += dz;
    double* gr = &g[wo + k * in_dim];
    for (std::size_t j = 0; j < in_dim; ++j) gr[j] += dz * in[j];
    if (l.mlp) {
      const double* wr = &w[wo + k * in_dim];
      for (std::size_t u = 0; u < l.h; ++u) ws.dhidden[u] += dz * wr[u];
    }
  }
  if (!l.mlp) return;
  for (std::size_t u = 0; u < l.h; ++u) {
    if (ws.pre[u] <= 0.0) continue;
    const double dh = ws.dhidden[u];
    g[l.b1() + u] += dh;
    double* gr = &g[l.w1() + u * l.d];
    for (std::size_t j = 0; j < l.d; ++j) gr[j] += dh * ws.x[j];
  }
}

void check_features(const TrainedModel& m, const FeatureMatrix& x) {
  if (x.cols() != m.input_dim) {
    throw std::invalid_argument("feature dimension " + std::to_string(x.cols()) +
                                " does not match model input dimension " +
                                std::to_string(m.input_dim));
  }
}

void check_labels(const TrainedModel& m, const FeatureMatrix& x, const LabelVector& y) {
  check_features(m, x);
  if (y.size() != x.rows()) {
    throw std::invalid_argument("label count " + std::to_string(y.size()) +
                                " does not match example count " + std::to_string(x.rows()));
  }
  if (y.classes != m.classes) {
    throw std::invalid_argument("label class count does not match model");
  }
}

}  // namespace

std::optional<LearnerKind> parse_learner_kind(std::string_view name) {
  if (name == "logistic") return LearnerKind::kLogistic;
  if (name == "mlp") return LearnerKind::kMlp;
  return std::nullopt;
}

std::string_view to_string(LearnerKind kind) {
  return kind == LearnerKind::kMlp ? "mlp" : "logistic";
}

void LearnerSpec::validate() const {
  if (batch_size < 1) throw std::invalid_argument("batch_size must be at least 1");
  if (kind == LearnerKind::kMlp && hidden_units < 1) {
    throw std::invalid_argument("mlp needs at least one hidden unit");
  }
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("learning_rate must be positive and finite");
  }
}

TrainedModel init_model(const LearnerSpec& spec, std::size_t input_dim, std::size_t classes) {
  spec.validate();
  if (input_dim == 0) throw std::invalid_argument("input dimension must be positive");
  if (classes < 2) throw std::invalid_argument("need at least two classes");
  TrainedModel m;
  m.spec = spec;
  m.input_dim = input_dim;
  m.classes = classes;
  const Layout l = layout_of(m);
  m.params.assign(l.total(), 0.0);
  if (l.mlp) {
    SplitMix64 rng(spec.seed);
    const double a1 = 1.0 / std::sqrt(static_cast<double>(l.d));
    for (std::size_t k = 0; k < l.h * l.d; ++k) m.params[l.w1() + k] = rng.uniform(-a1, a1);
    const double a2 = 1.0 / std::sqrt(static_cast<double>(l.h));
    for (std::size_t k = 0; k < l.c * l.h; ++k) m.params[l.w2() + k] = rng.uniform(-a2, a2);
  }
  return m;
}

TrainedModel fit(const LearnerSpec& spec, const FeatureMatrix& features, const LabelVector& labels) {
  if (labels.size() != features.rows()) {
    throw std::invalid_argument("label count " + std::to_string(labels.size()) +
                                " does not match example count " +
                                std::to_string(features.rows()));
  }
  if (labels.size() == 0) throw std::invalid_argument("cannot fit on an empty dataset");
  TrainedModel m = init_model(spec, features.cols(), labels.classes);
  const Layout l = layout_of(m);
  const std::size_t n = features.rows();

  // The shuffle stream continues where weight init left off.
  SplitMix64 rng(spec.seed);
  if (l.mlp) {
    for (std::size_t k = 0; k < l.h * l.d + l.c * l.h; ++k) rng.next();
  }

  m.train_log = TrainLog(n, spec.epochs);
  m.forgetting.assign(n, ForgettingState{});
  m.epoch_loss.assign(spec.epochs, 0.0);

  IndexList order(n);
  std::iota(order.begin(), order.end(), 0);
  Workspace ws(l);
  std::vector<double> grad(l.total());
  for (std::size_t epoch = 0; epoch < spec.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < n; start += spec.batch_size) {
      const std::size_t stop = std::min(n, start + spec.batch_size);
      const double scale = 1.0 / static_cast<double>(stop - start);
      std::fill(grad.begin(), grad.end(), 0.0);
      for (std::size_t k = start; k < stop; ++k) {
        const std::size_t i = order[k];
        forward(l, m.params, features.row(i), ws);
        const bool correct = argmax(ws.logits) == labels[i];
        m.train_log.set(i, epoch, correct);
        m.forgetting[i] = streaming_update(m.forgetting[i], correct);
        loss_sum += cross_entropy(ws, labels[i]);
        backward(l, m.params, ws, labels[i], scale, grad);
      }
      for (std::size_t p = 0; p < grad.size(); ++p) m.params[p] -= spec.learning_rate * grad[p];
    }
    m.epoch_loss[epoch] = loss_sum / static_cast<double>(n);
  }
  return m;
}

ProbMatrix predict_proba(const TrainedModel& model, const FeatureMatrix& features) {
  check_features(model, features);
  const Layout l = layout_of(model);
  std::vector<float> out(features.rows() * l.c);
  const auto n = static_cast<std::ptrdiff_t>(features.rows());
#pragma omp parallel
  {
    Workspace ws(l);
#pragma omp for schedule(static)
    for (std::ptrdiff_t s = 0; s < n; ++s) {
      const auto i = static_cast<std::size_t>(s);
      forward(l, model.params, features.row(i), ws);
      for (std::size_t k = 0; k < l.c; ++k) out[i * l.c + k] = static_cast<float>(ws.probs[k]);
    }
  }
  return validate_prob_matrix(FeatureMatrix(features.rows(), l.c, std::move(out)));
}

FeatureMatrix embed(const TrainedModel& model, const FeatureMatrix& features) {
  check_features(model, features);
  const Layout l = layout_of(model);
  if (!l.mlp) return features;
  std::vector<float> out(features.rows() * l.h);
  const auto n = static_cast<std::ptrdiff_t>(features.rows());
#pragma omp parallel
  {
    Workspace ws(l);
#pragma omp for schedule(static)
    for (std::ptrdiff_t s = 0; s < n; ++s) {
      const auto i = static_cast<std::size_t>(s);
      forward(l, model.params, features.row(i), ws);
      for (std::size_t u = 0; u < l.h; ++u) out[i * l.h + u] = static_cast<float>(ws.hidden[u]);
    }
  }
  return FeatureMatrix(features.rows(), l.h, std::move(out));
}

std::vector<std::uint32_t> predict(const TrainedModel& model, const FeatureMatrix& features) {
  check_features(model, features);
  const Layout l = layout_of(model);
  std::vector<std::uint32_t> out(features.rows());
  Workspace ws(l);
  for (std::size_t i = 0; i < features.rows(); ++i) {
    forward(l, model.params, features.row(i), ws);
    out[i] = argmax(ws.logits);
  }
  return out;
}

double error_rate(const TrainedModel& model, const FeatureMatrix& features,
                  const LabelVector& labels) {
  check_labels(model, features, labels);
  const auto pred = predict(model, features);
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) wrong += pred[i] != labels[i];
  return static_cast<double>(wrong) / static_cast<double>(pred.size());
}

double loss_and_gradient(const TrainedModel& model, const FeatureMatrix& features,
                         const LabelVector& labels, std::span<const std::size_t> batch,
                         std::vector<double>* grad) {
  check_labels(model, features, labels);
  if (batch.empty()) throw std::invalid_argument("empty batch");
  const Layout l = layout_of(model);
  Workspace ws(l);
  const double scale = 1.0 / static_cast<double>(batch.size());
  if (grad) grad->assign(l.total(), 0.0);
  double loss = 0.0;
  for (std::size_t i : batch) {
    forward(l, model.params, features.row(i), ws);
    loss += cross_entropy(ws, labels[i]);
    if (grad) backward(l, model.params, ws, labels[i], scale, *grad);
  }
  return loss * scale;
}

double dataset_loss(const TrainedModel& model, const FeatureMatrix& features,
                    const LabelVector& labels) {
  IndexList all(features.rows());
  std::iota(all.begin(), all.end(), 0);
  return loss_and_gradient(model, features, labels, all, nullptr);
}

std::vector<std::pair<std::string, FeatureMatrix>> parameter_tensors(const TrainedModel& model) {
  const Layout l = layout_of(model);
  const auto pack = [&](std::size_t rows, std::size_t cols, std::size_t wo, std::size_t bo) {
    std::vector<float> out;
    out.reserve(rows * (cols + 1));
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t j = 0; j < cols; ++j) out.push_back(static_cast<float>(model.params[wo + r * cols + j]));
      out.push_back(static_cast<float>(model.params[bo + r]));
    }
    return FeatureMatrix(rows, cols + 1, std::move(out));
  };
  if (!l.mlp) return {{"weights", pack(l.c, l.d, l.w(), l.b())}};
  return {{"hidden", pack(l.h, l.d, l.w1(), l.b1())}, {"output", pack(l.c, l.h, l.w2(), l.b2())}};
}

}  // namespace svp
