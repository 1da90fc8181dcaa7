// Copyright 2026 The speechner Authors.
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

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "speechner/crf.hpp"
#include "speechner/rng.hpp"

namespace speechner::crf {

namespace {

// Adds the gradient of log p(y | x) to grad and returns log p(y | x).
// grad is laid out as [emissions..., transitions...].
double accumulate_example(const CrfModel& model, const CompiledExample& ex,
                          std::vector<double>& grad) {
  const int k = model.num_labels();
  const Potentials p = potentials(model, ex.x);
  const ForwardBackward fb = forward_backward(p);
  const int n = p.length;
  const std::size_t trans_base = model.emission_weights().size();

  std::vector<double> post(k);
  for (int t = 0; t < n; ++t) {
    for (int j = 0; j < k; ++j) {
      const std::size_t idx = static_cast<std::size_t>(t) * k + j;
      post[j] = std::exp(fb.alpha[idx] + fb.beta[idx] - fb.log_z);
    }
    for (std::int32_t f : ex.x[t]) {
      double* g = &grad[static_cast<std::size_t>(f) * k];
      g[ex.y[t]] += 1.0;
      for (int j = 0; j < k; ++j) g[j] -= post[j];
    }
    if (t == 0) continue;
    grad[trans_base + ex.y[t - 1] * k + ex.y[t]] += 1.0;
    const double* a_prev = &fb.alpha[static_cast<std::size_t>(t - 1) * k];
    const double* b_cur = &fb.beta[static_cast<std::size_t>(t) * k];
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        grad[trans_base + i * k + j] -= std::exp(
            a_prev[i] + p.a(i, j) + p.e(t, j) + b_cur[j] - fb.log_z);
      }
    }
  }
  return score_sequence(p, ex.y) - fb.log_z;
}

void validate_config(const TrainConfig& c) {
  if (c.epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (!(c.learning_rate > 0.0)) {
    throw std::invalid_argument("learning rate must be > 0");
  }
  if (c.l2 < 0.0) throw std::invalid_argument("l2 must be >= 0");
  if (c.mode == TrainMode::kMiniBatch && c.batch_size < 1) {
    throw std::invalid_argument("batch size must be >= 1");
  }
}

// Parameters as one flat vector: [emissions..., transitions...].
std::vector<double> flatten(const CrfModel& m) {
  std::vector<double> w = m.emission_weights();
  w.insert(w.end(), m.transition_weights().begin(),
           m.transition_weights().end());
  return w;
}

void unflatten(const std::vector<double>& w, CrfModel& m) {
  auto& e = m.emission_weights();
  auto& a = m.transition_weights();
  std::copy(w.begin(), w.begin() + e.size(), e.begin());
  std::copy(w.begin() + e.size(), w.end(), a.begin());
}

double epoch_rate(const TrainConfig& c, int epoch) {
  return c.learning_rate / (1.0 + c.decay * epoch);
}

TrainResult train_full_batch(CrfModel model,
                             const std::vector<CompiledExample>& data,
                             const TrainConfig& c) {
  TrainResult result;
  const double inv_n = 1.0 / static_cast<double>(data.size());
  std::vector<double> grad;
  double obj = objective(model, data, c.l2, &grad);
  std::vector<double> w = flatten(model);
  std::vector<double> trial(w.size());
  CrfModel candidate = model;

  for (int epoch = 0; epoch < c.epochs; ++epoch) {
    double rate = epoch_rate(c, epoch);
    bool improved = false;
    double trial_obj = obj;
    for (int halvings = 0; halvings < 40; ++halvings, rate *= 0.5) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        trial[i] = w[i] + rate * inv_n * grad[i];
      }
      unflatten(trial, candidate);
      trial_obj = objective(candidate, data, c.l2, nullptr);
      if (trial_obj >= obj) {
        improved = true;
        break;
      }
    }
    if (!improved) {
      result.objective_trace.push_back(obj);
      break;
    }
    w.swap(trial);
    unflatten(w, model);
    obj = objective(model, data, c.l2, &grad);
    result.objective_trace.push_back(obj);
  }
  result.model = std::move(model);
  return result;
}

TrainResult train_mini_batch(CrfModel model,
                             const std::vector<CompiledExample>& data,
                             const TrainConfig& c) {
  TrainResult result;
  const std::size_t n = data.size();
  const int k = model.num_labels();
  auto& e = model.emission_weights();
  auto& a = model.transition_weights();
  std::vector<double> grad(e.size() + a.size(), 0.0);
  std::vector<char> touched_mark(model.num_features(), 0);
  std::vector<std::int32_t> touched;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(c.seed);

  for (int epoch = 0; epoch < c.epochs; ++epoch) {
    for (std::size_t i = n; i > 1; --i) {
      const auto j = static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(order[i - 1], order[j]);
    }
    const double rate = epoch_rate(c, epoch);
    const double shrink = 1.0 - rate * c.l2 / static_cast<double>(n);
    for (std::size_t start = 0; start < n; start += c.batch_size) {
      const std::size_t end = std::min(n, start + c.batch_size);
      const double step = rate / static_cast<double>(end - start);
      for (std::size_t b = start; b < end; ++b) {
        const auto& ex = data[order[b]];
        accumulate_example(model, ex, grad);
        for (const auto& pos : ex.x) {
          for (std::int32_t f : pos) {
            if (!touched_mark[f]) {
              touched_mark[f] = 1;
              touched.push_back(f);
            }
          }
        }
      }
      if (shrink != 1.0) {
        for (double& w : e) w *= shrink;
        for (double& w : a) w *= shrink;
      }
      for (std::int32_t f : touched) {
        const std::size_t base = static_cast<std::size_t>(f) * k;
        for (int j = 0; j < k; ++j) {
          e[base + j] += step * grad[base + j];
          grad[base + j] = 0.0;
        }
        touched_mark[f] = 0;
      }
      touched.clear();
      const std::size_t tb = e.size();
      for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] += step * grad[tb + i];
        grad[tb + i] = 0.0;
      }
    }
    result.objective_trace.push_back(objective(model, data, c.l2, nullptr));
  }
  result.model = std::move(model);
  return result;
}

}  // namespace

CompiledDataset compile_dataset(const LabelSet& labels,
                                const FeatureTemplate& templates,
                                std::span<const TrainingExample> data) {
  if (data.empty()) throw std::invalid_argument("empty training data");
  CompiledDataset ds{CrfModel(labels, templates), {}};
  ds.examples.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& ex = data[i];
    if (ex.x.size() != ex.y.size() || ex.x.empty()) {
      throw std::invalid_argument("training example " + std::to_string(i) +
                                  ": empty or length mismatch");
    }
    CompiledExample c;
    c.y = ex.y;
    for (int y : ex.y) {
      if (y < 0 || y >= labels.size()) {
        throw std::invalid_argument("training example " + std::to_string(i) +
                                    ": label outside label set");
      }
    }
    c.x.resize(ex.x.size());
    for (std::size_t t = 0; t < ex.x.size(); ++t) {
      c.x[t].reserve(ex.x[t].size());
      for (const auto& f : ex.x[t]) c.x[t].push_back(ds.model.add_feature(f));
    }
    ds.examples.push_back(std::move(c));
  }
  return ds;
}

double objective(const CrfModel& model,
                 std::span<const CompiledExample> data, double l2,
                 std::vector<double>* grad) {
  std::vector<double> scratch;
  std::vector<double>& g = grad ? *grad : scratch;
  const std::size_t ne = model.emission_weights().size();
  const std::size_t na = model.transition_weights().size();
  g.assign(ne + na, 0.0);

  double ll = 0.0;
  for (const auto& ex : data) ll += accumulate_example(model, ex, g);

  ll -= 0.5 * l2 * model.squared_norm();
  if (grad && l2 != 0.0) {
    const auto& e = model.emission_weights();
    const auto& a = model.transition_weights();
    for (std::size_t i = 0; i < ne; ++i) g[i] -= l2 * e[i];
    for (std::size_t i = 0; i < na; ++i) g[ne + i] -= l2 * a[i];
  }
  return ll;
}

TrainResult train(CompiledDataset dataset, const TrainConfig& config) {
  validate_config(config);
  if (dataset.examples.empty()) {
    throw std::invalid_argument("empty training data");
  }
  if (config.mode == TrainMode::kFullBatch) {
    return train_full_batch(std::move(dataset.model), dataset.examples,
                            config);
  }
  return train_mini_batch(std::move(dataset.model), dataset.examples, config);
}

TrainResult train(const LabelSet& labels, const FeatureTemplate& templates,
                  std::span<const TrainingExample> data,
                  const TrainConfig& config) {
  validate_config(config);
  return train(compile_dataset(labels, templates, data), config);
}

}  // namespace speechner::crf
