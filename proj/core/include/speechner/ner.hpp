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

#ifndef SPEECHNER_NER_HPP_
#define SPEECHNER_NER_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "speechner/crf.hpp"
#include "speechner/token.hpp"

// BIO named-entity tagger over PER / ORG / LOC.
namespace speechner::ner {

struct Entity {
  EntityType type = EntityType::kPer;
  std::size_t start = 0;  ///< first token
  std::size_t end = 0;    ///< one past the last token

  friend bool operator==(const Entity&, const Entity&) = default;
};

/// The 7 NerTag names in NerTag order, O first.
const crf::LabelSet& label_set();

/// Strict-BIO transition and start masks over label_set().
const crf::Constraints& bio_constraints();

/// Indices where strict BIO is violated: an I-X at the start of the sequence
/// or after anything other than B-X / I-X. Empty means valid.
std::vector<std::size_t> validate_bio(std::span<const NerTag> tags);

/// Lenient repair: each orphan I-X becomes B-X.
TagSequence repair_bio(std::span<const NerTag> tags);

/// Maximal B-X I-X* runs (after lenient repair), ordered by start.
std::vector<Entity> decode_entities(std::span<const NerTag> tags);

/// Inverse of decode_entities for non-overlapping entities within [0, n).
TagSequence render_entities(std::span<const Entity> entities, std::size_t n);

/// formatting toggles the case-class / punctuation-mark features.
crf::FeatureTemplate default_templates(bool formatting = true);

crf::FeatureSequence sentence_features(const crf::FeatureTemplate& templates,
                                       std::span<const Token> tokens);

struct NerModel {
  crf::CrfModel crf;
};

struct NerTrainResult {
  NerModel model;
  std::vector<double> objective_trace;
};

/// Trains on every tagged sentence of docs. Throws DataError naming the
/// document and sentence if a tag sequence is not strict BIO, and
/// std::invalid_argument if no tagged sentences are given.
NerTrainResult train_ner(std::span<const Document> docs,
                         const crf::TrainConfig& config,
                         const crf::FeatureTemplate& templates =
                             default_templates());

/// Constrained Viterbi decode; the result always passes validate_bio.
/// Throws std::invalid_argument on an empty sentence.
TagSequence tag(const NerModel& model, std::span<const Token> tokens);

/// Tags a running token stream, cutting sentences after every PERIOD mark.
TagSequence tag_stream(const NerModel& model, std::span<const Token> tokens);

std::string to_json(const NerModel& model);
/// Throws DataError unless the document is an NER model.
NerModel ner_from_json(std::string_view json);

}  // namespace speechner::ner

#endif  // SPEECHNER_NER_HPP_
