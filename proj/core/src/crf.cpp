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

#include "speechner/crf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "speechner/unicode.hpp"

namespace speechner::crf {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(const double* v, int n) {
  double m = kNegInf;
  for (int i = 0; i < n; ++i) m = std::max(m, v[i]);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += std::exp(v[i] - m);
  return m + std::log(s);
}

void require_nonempty(int length) {
  if (length < 1) throw std::invalid_argument("empty input sequence");
}

}  // namespace

LabelSet::LabelSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw std::invalid_argument("label set is empty");
  for (int i = 0; i < size(); ++i) {
    if (!index_.emplace(names_[i], i).second) {
      throw std::invalid_argument("duplicate label: " + names_[i]);
    }
  }
}

std::optional<int> LabelSet::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string word_shape(std::string_view surface) {
  std::string shape;
  char last = 0;
  for (char32_t c : unicode::decode(surface)) {
    char m;
    if (unicode::is_letter(c)) {
      m = unicode::is_upper(c) ? 'X' : 'x';
    } else if (unicode::is_digit(c)) {
      m = 'd';
    } else if (c < 0x80) {
      m = static_cast<char>(c);
    } else {
      m = '*';
    }
    if (m != last) shape += m;
    last = m;
  }
  return shape;
}

std::vector<std::string> extract_features(
    std::span<const std::string> lower_tokens, std::size_t position,
    const FeatureTemplate& templates) {
  const auto n = static_cast<std::ptrdiff_t>(lower_tokens.size());
  const auto pos = static_cast<std::ptrdiff_t>(position);
  auto word_at = [&](std::ptrdiff_t i) -> std::string_view {
    if (i < 0) return kBos;
    if (i >= n) return kEos;
    return lower_tokens[i];
  };

  std::vector<std::string> f;
  f.reserve(16 + 2 * templates.window + 2 * templates.affix_len);
  f.emplace_back("bias");
  for (int o = -templates.window; o <= templates.window; ++o) {
    std::string s = "w";
    if (o > 0) s += '+';
    s += std::to_string(o);
    s += '=';
    s += word_at(pos + o);
    f.push_back(std::move(s));
  }

  const std::string& w = lower_tokens[position];
  const auto cps = unicode::decode(w);
  const int len = static_cast<int>(cps.size());
  for (int k = 1; k <= templates.affix_len && k <= len; ++k) {
    std::vector<char32_t> pre(cps.begin(), cps.begin() + k);
    std::vector<char32_t> suf(cps.end() - k, cps.end());
    f.push_back("p" + std::to_string(k) + "=" + unicode::encode(pre));
    f.push_back("s" + std::to_string(k) + "=" + unicode::encode(suf));
  }
  f.push_back("sh=" + word_shape(w));
  if (pos == 0) f.emplace_back("first");
  if (pos == n - 1) f.emplace_back("last");
  if (templates.conjunctions) {
    f.push_back("w-1|w0=" + std::string(word_at(pos - 1)) + "|" + w);
    f.push_back("w0|w+1=" + w + "|" + std::string(word_at(pos + 1)));
  }
  return f;
}

CrfModel::CrfModel(LabelSet labels, FeatureTemplate templates)
    : labels_(std::move(labels)),
      templates_(templates),
      transitions_(static_cast<std::size_t>(labels_.size()) * labels_.size(),
                   0.0) {
  if (templates_.window < 0) throw std::invalid_argument("negative window");
}

std::int32_t CrfModel::add_feature(std::string_view feature) {
  auto [it, inserted] = feature_index_.try_emplace(
      std::string(feature), static_cast<std::int32_t>(feature_names_.size()));
  if (inserted) {
    feature_names_.emplace_back(feature);
    emissions_.resize(emissions_.size() + num_labels(), 0.0);
  }
  return it->second;
}

std::optional<std::int32_t> CrfModel::feature_id(
    std::string_view feature) const {
  auto it = feature_index_.find(std::string(feature));
  if (it == feature_index_.end()) return std::nullopt;
  return it->second;
}

CompiledSequence CrfModel::compile(const FeatureSequence& x) const {
  CompiledSequence out(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) {
    out[t].reserve(x[t].size());
    for (const auto& f : x[t]) {
      auto it = feature_index_.find(f);
      if (it != feature_index_.end()) out[t].push_back(it->second);
    }
  }
  return out;
}

double CrfModel::emission(std::string_view feature, int label) const {
  auto id = feature_id(feature);
  if (!id) return 0.0;
  return emissions_[static_cast<std::size_t>(*id) * num_labels() + label];
}

void CrfModel::set_emission(std::string_view feature, int label, double w) {
  const auto id = add_feature(feature);
  emissions_[static_cast<std::size_t>(id) * num_labels() + label] = w;
}

double CrfModel::squared_norm() const {
  double s = 0.0;
  for (double w : emissions_) s += w * w;
  for (double w : transitions_) s += w * w;
  return s;
}

Potentials potentials(const CrfModel& model, const CompiledSequence& x) {
  Potentials p;
  p.length = static_cast<int>(x.size());
  p.num_labels = model.num_labels();
  const int k = p.num_labels;
  p.emit.assign(static_cast<std::size_t>(p.length) * k, 0.0);
  const auto& e = model.emission_weights();
  for (int t = 0; t < p.length; ++t) {
    double* row = &p.emit[static_cast<std::size_t>(t) * k];
    for (std::int32_t f : x[t]) {
      const double* w = &e[static_cast<std::size_t>(f) * k];
      for (int j = 0; j < k; ++j) row[j] += w[j];
    }
  }
  p.trans = model.transition_weights();
  return p;
}

double score_sequence(const Potentials& p, std::span<const int> y) {
  if (static_cast<int>(y.size()) != p.length) {
    throw std::invalid_argument("label sequence length does not match input");
  }
  double s = 0.0;
  for (int t = 0; t < p.length; ++t) {
    if (y[t] < 0 || y[t] >= p.num_labels) {
      throw std::invalid_argument("label index out of range");
    }
    s += p.e(t, y[t]);
    if (t > 0) s += p.a(y[t - 1], y[t]);
  }
  return s;
}

double score_sequence(const CrfModel& model, const FeatureSequence& x,
                      std::span<const int> y) {
  return score_sequence(potentials(model, model.compile(x)), y);
}

ForwardBackward forward_backward(const Potentials& p) {
  require_nonempty(p.length);
  const int n = p.length;
  const int k = p.num_labels;
  ForwardBackward fb;
  fb.alpha.assign(static_cast<std::size_t>(n) * k, 0.0);
  fb.beta.assign(static_cast<std::size_t>(n) * k, 0.0);
  std::vector<double> buf(k);

  for (int j = 0; j < k; ++j) fb.alpha[j] = p.e(0, j);
  for (int t = 1; t < n; ++t) {
    const double* prev = &fb.alpha[static_cast<std::size_t>(t - 1) * k];
    double* cur = &fb.alpha[static_cast<std::size_t>(t) * k];
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < k; ++i) buf[i] = prev[i] + p.a(i, j);
      cur[j] = log_sum_exp(buf.data(), k) + p.e(t, j);
    }
  }
  for (int t = n - 2; t >= 0; --t) {
    const double* next = &fb.beta[static_cast<std::size_t>(t + 1) * k];
    double* cur = &fb.beta[static_cast<std::size_t>(t) * k];
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) buf[j] = p.a(i, j) + p.e(t + 1, j) + next[j];
      cur[i] = log_sum_exp(buf.data(), k);
    }
  }
  fb.log_z = log_sum_exp(&fb.alpha[static_cast<std::size_t>(n - 1) * k], k);
  return fb;
}

double log_partition(const Potentials& p) { return forward_backward(p).log_z; }

double log_partition(const CrfModel& model, const FeatureSequence& x) {
  require_nonempty(static_cast<int>(x.size()));
  return log_partition(potentials(model, model.compile(x)));
}

std::vector<std::vector<double>> marginals(const Potentials& p) {
  const auto fb = forward_backward(p);
  const int k = p.num_labels;
  std::vector<std::vector<double>> out(p.length, std::vector<double>(k));
  for (int t = 0; t < p.length; ++t) {
    for (int j = 0; j < k; ++j) {
      const std::size_t idx = static_cast<std::size_t>(t) * k + j;
      out[t][j] = std::exp(fb.alpha[idx] + fb.beta[idx] - fb.log_z);
    }
  }
  return out;
}

std::vector<std::vector<double>> marginals(const CrfModel& model,
                                           const FeatureSequence& x) {
  require_nonempty(static_cast<int>(x.size()));
  return marginals(potentials(model, model.compile(x)));
}

Decoded viterbi_decode(const Potentials& p, const Constraints* constraints) {
  require_nonempty(p.length);
  const int n = p.length;
  const int k = p.num_labels;
  auto trans_ok = [&](int i, int j) {
    return !constraints || constraints->allowed_transition.empty() ||
           constraints->allowed_transition[i * k + j];
  };
  auto start_ok = [&](int j) {
    return !constraints || constraints->allowed_start.empty() ||
           constraints->allowed_start[j];
  };

  std::vector<double> delta(static_cast<std::size_t>(n) * k, kNegInf);
  std::vector<int> back(static_cast<std::size_t>(n) * k, 0);
  for (int j = 0; j < k; ++j) {
    if (start_ok(j)) delta[j] = p.e(0, j);
  }
  for (int t = 1; t < n; ++t) {
    const double* prev = &delta[static_cast<std::size_t>(t - 1) * k];
    double* cur = &delta[static_cast<std::size_t>(t) * k];
    int* bp = &back[static_cast<std::size_t>(t) * k];
    for (int j = 0; j < k; ++j) {
      double best = kNegInf;
      int arg = 0;
      for (int i = 0; i < k; ++i) {
        if (!trans_ok(i, j) || prev[i] == kNegInf) continue;
        const double s = prev[i] + p.a(i, j);
        if (s > best) {
          best = s;
          arg = i;
        }
      }
      cur[j] = best == kNegInf ? kNegInf : best + p.e(t, j);
      bp[j] = arg;
    }
  }

  Decoded d;
  d.labels.assign(n, 0);
  const double* last = &delta[static_cast<std::size_t>(n - 1) * k];
  int arg = 0;
  double best = kNegInf;
  for (int j = 0; j < k; ++j) {
    if (last[j] > best) {
      best = last[j];
      arg = j;
    }
  }
  d.score = best;
  d.labels[n - 1] = arg;
  for (int t = n - 1; t > 0; --t) {
    d.labels[t - 1] = back[static_cast<std::size_t>(t) * k + d.labels[t]];
  }
  return d;
}

Decoded viterbi_decode(const CrfModel& model, const FeatureSequence& x,
                       const Constraints* constraints) {
  require_nonempty(static_cast<int>(x.size()));
  return viterbi_decode(potentials(model, model.compile(x)), constraints);
}

}  // namespace speechner::crf
