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

#ifndef SPEECHNER_CAPU_HPP_
#define SPEECHNER_CAPU_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "speechner/crf.hpp"
#include "speechner/token.hpp"

// Capitalization and punctuation recovery (CaPu) as joint sequence
// labeling: every word gets one of 3 case transforms x 3 trailing marks.
namespace speechner::capu {

enum class LetterCase : std::uint8_t { kLower, kCapFirst, kAllCaps };

struct CapuLabel {
  LetterCase letter_case = LetterCase::kLower;
  Punct punct = Punct::kNone;

  /// Label index: case-major, so (LOWER, NONE) is 0.
  int index() const {
    return static_cast<int>(letter_case) * 3 + static_cast<int>(punct);
  }
  static CapuLabel from_index(int i) {
    return {static_cast<LetterCase>(i / 3), static_cast<Punct>(i % 3)};
  }

  friend bool operator==(const CapuLabel&, const CapuLabel&) = default;
};

inline constexpr int kNumLabels = 9;

/// The 9 labels in index order, named "<CASE>|<PUNCT>".
const crf::LabelSet& label_set();

/// An unformatted word sequence and the labels that restore its formatting.
struct CapuSample {
  std::vector<std::string> lower_tokens;
  std::vector<CapuLabel> labels;

  friend bool operator==(const CapuSample&, const CapuSample&) = default;
};

/// MIXED words encode as CAP_FIRST when their first letter is uppercase and
/// as LOWER otherwise; this is the only lossy case.
CapuSample encode_labels(std::span<const Token> formatted);

/// Throws std::invalid_argument when the lengths differ.
std::vector<Token> decode_labels(std::span<const std::string> lower_tokens,
                                 std::span<const CapuLabel> labels);

crf::FeatureTemplate default_templates();

struct CapuModel {
  crf::CrfModel crf;
};

/// Features for one chunk of lowercased words under the model's templates
/// and lexicons.
crf::FeatureSequence chunk_features(const crf::CrfModel& model,
                                    std::span<const std::string> lower_tokens);

struct CapuTrainResult {
  CapuModel model;
  std::vector<double> objective_trace;
};

/// Throws std::invalid_argument on an empty sample list or samples with
/// mismatched lengths.
CapuTrainResult train_capu(std::span<const CapuSample> samples,
                           const crf::TrainConfig& config,
                           const crf::FeatureTemplate& templates =
                               default_templates());

/// Viterbi labels over the chunk, applied with decode_labels. Throws
/// std::invalid_argument on empty input.
std::vector<Token> format_tokens(const CapuModel& model,
                                 std::span<const std::string> lower_tokens);

std::string to_json(const CapuModel& model);
/// Throws DataError unless the document is a CaPu model.
CapuModel capu_from_json(std::string_view json);

}  // namespace speechner::capu

#endif  // SPEECHNER_CAPU_HPP_
