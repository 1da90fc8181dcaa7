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

#ifndef SPEECHNER_TESTS_ORACLES_HPP_
#define SPEECHNER_TESTS_ORACLES_HPP_

// Brute-force reference implementations and random generators shared by the
// unit tests and the acceptance binary. Everything here is written for
// clarity, not speed, and shares no code with the library under test.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "speechner/chunk.hpp"
#include "speechner/crf.hpp"
#include "speechner/rng.hpp"
#include "speechner/token.hpp"

namespace oracle {

using speechner::Rng;

/// Every label sequence of length t over k labels, in lexicographic order.
inline std::vector<std::vector<int>> all_sequences(int t, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> y(t, 0);
  while (true) {
    out.push_back(y);
    int i = t - 1;
    while (i >= 0 && y[i] == k - 1) y[i--] = 0;
    if (i < 0) break;
    ++y[i];
  }
  return out;
}

/// Naive sum over the raw weight tables.
inline double naive_score(const speechner::crf::CrfModel& m,
                          const speechner::crf::FeatureSequence& x,
                          const std::vector<int>& y) {
  double s = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    for (const auto& f : x[t]) s += m.emission(f, y[t]);
    if (t > 0) s += m.transition(y[t - 1], y[t]);
  }
  return s;
}

struct Enumeration {
  double log_z = 0.0;
  std::vector<int> argmax;  ///< lexicographically first maximizer
  double max_score = 0.0;
  std::vector<std::vector<double>> marginals;
};

inline Enumeration enumerate(const speechner::crf::CrfModel& m,
                             const speechner::crf::FeatureSequence& x) {
  const int t = static_cast<int>(x.size());
  const int k = m.num_labels();
  const auto seqs = all_sequences(t, k);
  std::vector<double> scores;
  double best = -std::numeric_limits<double>::infinity();
  Enumeration e;
  for (const auto& y : seqs) {
    scores.push_back(naive_score(m, x, y));
    if (scores.back() > best) {
      best = scores.back();
      e.argmax = y;
    }
  }
  double z = 0.0;
  for (double s : scores) z += std::exp(s - best);
  e.log_z = best + std::log(z);
  e.max_score = best;
  e.marginals.assign(t, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    const double p = std::exp(scores[i] - e.log_z);
    for (int j = 0; j < t; ++j) e.marginals[j][seqs[i][j]] += p;
  }
  return e;
}

/// Random model with features "f0".."f{nf-1}" and weights in [-scale, scale].
inline speechner::crf::CrfModel random_model(Rng& rng, int k, int nf,
                                             double scale) {
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i) names.push_back("L" + std::to_string(i));
  speechner::crf::CrfModel m(speechner::crf::LabelSet(names), {});
  for (int f = 0; f < nf; ++f) {
    for (int y = 0; y < k; ++y) {
      m.set_emission("f" + std::to_string(f), y,
                     scale * (2.0 * rng.uniform01() - 1.0));
    }
  }
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      m.set_transition(a, b, scale * (2.0 * rng.uniform01() - 1.0));
    }
  }
  return m;
}

/// Random observation: each position activates 1..3 of the nf features, and
/// occasionally a feature the model has never seen.
inline speechner::crf::FeatureSequence random_observation(Rng& rng, int t,
                                                          int nf) {
  speechner::crf::FeatureSequence x(t);
  for (auto& pos : x) {
    const int n = static_cast<int>(rng.uniform_int(1, 3));
    for (int i = 0; i < n; ++i) {
      pos.push_back("f" + std::to_string(rng.uniform_int(0, nf - 1)));
    }
    if (rng.uniform01() < 0.2) pos.push_back("unseen");
  }
  return x;
}

/// Full-matrix Levenshtein distance.
inline std::size_t edit_distance(const std::vector<std::string>& a,
                                 const std::vector<std::string>& b) {
  std::vector<std::vector<std::size_t>> d(
      a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

inline std::vector<std::string> random_words(Rng& rng, std::size_t max_len,
                                             const std::vector<std::string>&
                                                 alphabet) {
  std::vector<std::string> out(
      static_cast<std::size_t>(rng.uniform_int(0, max_len)));
  for (auto& w : out) {
    w = alphabet[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(alphabet.size()) - 1))];
  }
  return out;
}

/// Chunk whose window keeps position p farthest from an edge, by direct
/// scan over every chunk containing p (earliest wins ties).
inline std::size_t best_chunk(std::size_t p,
                              const std::vector<speechner::chunk::ChunkSpan>&
                                  spans) {
  std::size_t best = spans.size();
  long best_c = -1;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const auto& s = spans[i];
    if (p < s.start || p >= s.start + s.length) continue;
    const long left = static_cast<long>(p - s.start);
    const long right = static_cast<long>(s.start + s.length - 1 - p);
    const long c = std::min(left, right);
    if (c > best_c) {
      best_c = c;
      best = i;
    }
  }
  return best;
}

}  // namespace oracle

#endif  // SPEECHNER_TESTS_ORACLES_HPP_
