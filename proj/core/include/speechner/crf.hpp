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

#ifndef SPEECHNER_CRF_HPP_
#define SPEECHNER_CRF_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

// Linear-chain conditional random field shared by the CaPu and NER taggers.
//
// The model scores a label sequence y over an observation x as
//
//   score(x, y) = sum_t sum_{f in x_t} E[f][y_t] + sum_{t>0} A[y_{t-1}][y_t]
//
// where x_t is the list of feature strings active at position t, E the
// sparse emission table and A the dense transition matrix. Inference is in
// log space throughout.
namespace speechner::crf {

class LabelSet {
 public:
  LabelSet() = default;
  /// Throws std::invalid_argument on duplicates or an empty list.
  explicit LabelSet(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> index_of(std::string_view name) const;

  friend bool operator==(const LabelSet& a, const LabelSet& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

/// Feature-template parameters. The base templates are always on; the
/// task-specific groups are toggled by the owning tagger.
struct FeatureTemplate {
  int window = 2;       ///< half-width of the word-identity context
  int affix_len = 3;    ///< prefixes/suffixes of length 1..affix_len
  bool conjunctions = true;
  bool capu_features = false;        ///< chunk position buckets, lexicon flags
  bool formatting_features = false;  ///< case class and punctuation marks

  friend bool operator==(const FeatureTemplate&,
                         const FeatureTemplate&) = default;
};

/// Feature strings active at each position of a sequence.
using FeatureSequence = std::vector<std::vector<std::string>>;

inline constexpr std::string_view kBos = "<s>";
inline constexpr std::string_view kEos = "</s>";

/// Base templates over a lowercased word sequence. Context offsets outside
/// the sequence produce the kBos / kEos sentinels.
std::vector<std::string> extract_features(
    std::span<const std::string> lower_tokens, std::size_t position,
    const FeatureTemplate& templates);

/// Letter/digit mask with runs collapsed: "Hà Nội" -> "Xx", "2020" -> "d".
/// Uppercase letters map to 'X' and lowercase to 'x'.
std::string word_shape(std::string_view surface);

/// Feature ids per position; unknown features are dropped at compile time.
using CompiledSequence = std::vector<std::vector<std::int32_t>>;

class CrfModel {
 public:
  static constexpr std::string_view kVersion = "speechner-crf/1";

  CrfModel() = default;
  CrfModel(LabelSet labels, FeatureTemplate templates);

  const LabelSet& labels() const { return labels_; }
  const FeatureTemplate& templates() const { return templates_; }
  int num_labels() const { return labels_.size(); }
  std::size_t num_features() const { return feature_names_.size(); }

  std::string task;
  /// Named word lists that parameterize task-specific templates.
  std::map<std::string, std::vector<std::string>> lexicons;

  /// Interns a feature string, returning its id.
  std::int32_t add_feature(std::string_view feature);
  std::optional<std::int32_t> feature_id(std::string_view feature) const;
  const std::string& feature_name(std::int32_t id) const {
    return feature_names_[id];
  }

  CompiledSequence compile(const FeatureSequence& x) const;

  double emission(std::string_view feature, int label) const;
  void set_emission(std::string_view feature, int label, double w);
  double transition(int prev, int cur) const {
    return transitions_[prev * num_labels() + cur];
  }
  void set_transition(int prev, int cur, double w) {
    transitions_[prev * num_labels() + cur] = w;
  }

  /// Emission table, row-major [feature][label].
  std::vector<double>& emission_weights() { return emissions_; }
  const std::vector<double>& emission_weights() const { return emissions_; }
  /// Transition matrix, row-major [prev][cur].
  std::vector<double>& transition_weights() { return transitions_; }
  const std::vector<double>& transition_weights() const {
    return transitions_;
  }

  /// Sum of squared weights (emissions and transitions).
  double squared_norm() const;

 private:
  LabelSet labels_;
  FeatureTemplate templates_;
  std::unordered_map<std::string, std::int32_t> feature_index_;
  std::vector<std::string> feature_names_;
  std::vector<double> emissions_;
  std::vector<double> transitions_;
};

/// Per-position label scores and the transition matrix for one sequence:
/// everything inference needs, detached from the feature tables.
struct Potentials {
  int length = 0;
  int num_labels = 0;
  std::vector<double> emit;   ///< [t * K + k]
  std::vector<double> trans;  ///< [i * K + j]

  double e(int t, int k) const { return emit[t * num_labels + k]; }
  double a(int i, int j) const { return trans[i * num_labels + j]; }
};

Potentials potentials(const CrfModel& model, const CompiledSequence& x);

/// Hard decode-time restrictions: disallowed transitions and start labels
/// score -infinity.
struct Constraints {
  std::vector<bool> allowed_transition;  ///< [prev * K + cur]
  std::vector<bool> allowed_start;       ///< [k]
};

struct Decoded {
  std::vector<int> labels;
  double score = 0.0;
};

/// Throws std::invalid_argument on length mismatch or a label outside the
/// label set.
double score_sequence(const CrfModel& model, const FeatureSequence& x,
                      std::span<const int> y);
double score_sequence(const Potentials& p, std::span<const int> y);

/// log sum_y exp(score(x, y)). Throws std::invalid_argument on empty input.
double log_partition(const CrfModel& model, const FeatureSequence& x);
double log_partition(const Potentials& p);

/// Highest-scoring label sequence. Backpointers keep the lowest label index
/// among equal scores, and the final label is the lowest-index maximizer.
Decoded viterbi_decode(const CrfModel& model, const FeatureSequence& x,
                       const Constraints* constraints = nullptr);
Decoded viterbi_decode(const Potentials& p,
                       const Constraints* constraints = nullptr);

/// Posterior label distribution per position, [t][k].
std::vector<std::vector<double>> marginals(const CrfModel& model,
                                           const FeatureSequence& x);
std::vector<std::vector<double>> marginals(const Potentials& p);

/// Forward-backward tables in log space, shared by marginals and training.
struct ForwardBackward {
  std::vector<double> alpha;  ///< [t * K + k]
  std::vector<double> beta;   ///< [t * K + k]
  double log_z = 0.0;
};
ForwardBackward forward_backward(const Potentials& p);

// ---------------------------------------------------------------------------
// Training

enum class TrainMode { kFullBatch, kMiniBatch };

struct TrainConfig {
  double l2 = 1e-3;
  double learning_rate = 1.0;
  /// Epoch e uses learning_rate / (1 + decay * e).
  double decay = 0.0;
  int epochs = 50;
  TrainMode mode = TrainMode::kFullBatch;
  int batch_size = 16;
  std::uint64_t seed = 0;
};

struct TrainingExample {
  FeatureSequence x;
  std::vector<int> y;
};

struct CompiledExample {
  CompiledSequence x;
  std::vector<int> y;
};

struct TrainResult {
  CrfModel model;
  /// Regularized conditional log-likelihood after each epoch.
  std::vector<double> objective_trace;
};

/// A zero-weight model whose feature space holds every feature seen in the
/// data, plus the data compiled against it. Throws std::invalid_argument on
/// empty data, length mismatches, or labels outside the label set.
struct CompiledDataset {
  CrfModel model;
  std::vector<CompiledExample> examples;
};
CompiledDataset compile_dataset(const LabelSet& labels,
                                const FeatureTemplate& templates,
                                std::span<const TrainingExample> data);

/// L2-regularized conditional log-likelihood
///   sum_i log p(y_i | x_i) - l2 / 2 * ||w||^2
/// and, when grad is non-null, its gradient laid out as the emission table
/// followed by the transition matrix.
double objective(const CrfModel& model,
                 std::span<const CompiledExample> data, double l2,
                 std::vector<double>* grad);

/// Maximizes the objective. kFullBatch does gradient ascent with step
/// halving, so the trace is non-decreasing; kMiniBatch does seeded SGD.
TrainResult train(const LabelSet& labels, const FeatureTemplate& templates,
                  std::span<const TrainingExample> data,
                  const TrainConfig& config);
TrainResult train(CompiledDataset dataset, const TrainConfig& config);

// ---------------------------------------------------------------------------
// Serialization (versioned JSON, canonical: emissions sorted, zeros omitted)

std::string to_json(const CrfModel& model);
/// Throws DataError on malformed documents or a version mismatch.
CrfModel from_json(std::string_view json);

}  // namespace speechner::crf

#endif  // SPEECHNER_CRF_HPP_
