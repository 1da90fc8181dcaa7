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

#ifndef SPEECHNER_ASR_SIM_HPP_
#define SPEECHNER_ASR_SIM_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

// Word-level recognition-error simulator: a seeded, context-free channel
// that substitutes, deletes and inserts words.
namespace speechner::asr {

struct ErrorProfile {
  double p_sub = 0.0;
  double p_del = 0.0;
  double p_ins = 0.0;
  std::uint64_t seed = 0;
  /// Lowercase replacement / insertion words.
  std::vector<std::string> vocabulary;

  /// Throws std::invalid_argument on probabilities outside [0, 1], a sum
  /// above 1, or a vocabulary unable to serve substitutions / insertions.
  void validate() const;

  /// Splits a target word error rate 60% / 25% / 15% into substitution,
  /// deletion and insertion rates.
  static ErrorProfile from_wer(double wer, std::uint64_t seed,
                               std::vector<std::string> vocabulary);
};

enum class EditKind { kSub, kDel, kIns };

/// One injected error. kSub / kDel act on ref_index; kIns places word after
/// reference position ref_index.
struct Edit {
  EditKind kind = EditKind::kSub;
  std::size_t ref_index = 0;
  std::string word;

  friend bool operator==(const Edit&, const Edit&) = default;
};

/// Injected edits in reference order (at one position: sub/del first, then
/// the insertion after it). An empty trace means hyp == ref.
struct CorruptionTrace {
  std::vector<Edit> edits;

  std::size_t count(EditKind kind) const;
};

struct Corruption {
  std::vector<std::string> hyp;
  CorruptionTrace trace;
};

/// Per reference word draws keep / substitute / delete, then inserts a
/// vocabulary word after it with probability p_ins. Deterministic per seed.
Corruption corrupt(std::span<const std::string> ref,
                   const ErrorProfile& profile);

/// Applies a trace to the reference. Throws std::invalid_argument when the
/// trace does not fit the reference.
std::vector<std::string> replay(std::span<const std::string> ref,
                                const CorruptionTrace& trace);

std::string trace_to_json(const CorruptionTrace& trace);

}  // namespace speechner::asr

#endif  // SPEECHNER_ASR_SIM_HPP_
