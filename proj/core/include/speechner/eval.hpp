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

#ifndef SPEECHNER_EVAL_HPP_
#define SPEECHNER_EVAL_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "speechner/token.hpp"

// Scoring of NER over recognized speech: hypothesis words are aligned to the
// reference, hypothesis tags are projected onto reference positions, and
// entities are scored on exact (type, span) matches.
namespace speechner::eval {

enum class OpKind { kT, kS, kD, kI };

char to_char(OpKind k);

struct AlignmentOp {
  OpKind kind = OpKind::kT;
  std::optional<std::size_t> ref_index;
  std::optional<std::size_t> hyp_index;

  friend bool operator==(const AlignmentOp&, const AlignmentOp&) = default;
};

/// Minimum edit alignment with unit costs, comparing lowercased words.
/// Among equal-cost alignments the backtrace (run from the end) prefers
/// T, then S, then D, then I.
std::vector<AlignmentOp> align(std::span<const std::string> ref,
                               std::span<const std::string> hyp);

/// Levenshtein distance in O(min(n, m)) memory, lowercased comparison.
std::size_t edit_distance(std::span<const std::string> ref,
                          std::span<const std::string> hyp);

/// Hypothesis tags moved onto reference positions: T keeps the tag, S and D
/// give O, I drops it; orphan I-X then becomes B-X. The result has
/// ref_tags.size() entries. Throws std::invalid_argument when the alignment
/// does not fit the tag sequences.
TagSequence project_tags(std::span<const NerTag> ref_tags,
                         std::span<const NerTag> hyp_tags,
                         std::span<const AlignmentOp> alignment);

struct Prf {
  std::size_t correct = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;

  double precision() const;
  double recall() const;
  /// 2PR / (P + R), 0 when P + R = 0.
  double f1() const;

  Prf& operator+=(const Prf& o);
};

struct EntityScores {
  std::array<Prf, 3> per_type;  ///< indexed by EntityType
  Prf micro;

  EntityScores& operator+=(const EntityScores& o);
};

/// Exact (type, span) entity matching after lenient BIO repair of both
/// sides. Throws std::invalid_argument on a length mismatch.
EntityScores entity_prf(std::span<const NerTag> ref_tags,
                        std::span<const NerTag> hyp_tags);

struct EditCounts {
  std::size_t ref_words = 0;
  std::size_t hyp_words = 0;
  std::size_t correct = 0;
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;

  std::size_t errors() const { return substitutions + deletions + insertions; }
  double wer() const;

  EditCounts& operator+=(const EditCounts& o);
};

EditCounts count_edits(std::span<const AlignmentOp> alignment);

/// (S + D + I) / |ref|. Throws std::invalid_argument on an empty reference.
double wer(std::span<const std::string> ref, std::span<const std::string> hyp);

struct ClassAccuracy {
  std::size_t correct = 0;
  std::size_t total = 0;
  /// correct / total; 1 when the class never occurs in the reference.
  double accuracy() const;
};

/// Per-class formatting recovery. capitalization counts reference words
/// whose case class is not LOWER; the punctuation classes count reference
/// positions carrying that mark (blank = no mark).
struct CapuAccuracy {
  ClassAccuracy capitalization;
  ClassAccuracy period;
  ClassAccuracy comma;
  ClassAccuracy blank;
};

/// Throws std::invalid_argument unless both sides have the same lowercased
/// words.
CapuAccuracy capu_confusion(std::span<const Token> ref_formatted,
                            std::span<const Token> hyp_formatted);

struct DocumentScore {
  std::size_t index = 0;
  EntityScores entities;
  EditCounts edits;
};

struct EvalReport {
  EntityScores entities;
  EditCounts edits;
  std::optional<CapuAccuracy> capu;
  std::vector<DocumentScore> documents;
};

/// Aligns each hypothesis document against its gold document (sentences
/// concatenated), projects the hypothesis tags and accumulates counts.
/// Throws std::invalid_argument on count mismatches or untagged gold.
EvalReport evaluate_pipeline(
    std::span<const Document> gold,
    std::span<const std::vector<std::string>> hyp_words,
    std::span<const TagSequence> hyp_tags);

/// Canonical JSON: sorted keys, rates with 4 decimals.
std::string to_json(const EvalReport& report);
/// Fixed-width text table.
std::string to_table(const EvalReport& report);

}  // namespace speechner::eval

#endif  // SPEECHNER_EVAL_HPP_
