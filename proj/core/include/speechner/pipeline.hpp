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

#ifndef SPEECHNER_PIPELINE_HPP_
#define SPEECHNER_PIPELINE_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "speechner/capu.hpp"
#include "speechner/chunk.hpp"
#include "speechner/crf.hpp"
#include "speechner/eval.hpp"
#include "speechner/ner.hpp"
#include "speechner/synth.hpp"

// End-to-end experiment: recognition errors -> [CaPu] -> NER -> scoring,
// over the five input conditions (formatted reference, simulated ASR output
// with and without CaPu, uncased reference with and without CaPu).
namespace speechner::pipeline {

chunk::Formatter capu_formatter(const capu::CapuModel& model);

/// Chunked CaPu over a word stream; equals the incremental StreamFormatter.
std::vector<Token> stream_format(const capu::CapuModel& model,
                                 std::span<const std::string> words,
                                 const chunk::ChunkConfig& config);

struct ErrorRates {
  double p_sub = 0.0;
  double p_del = 0.0;
  double p_ins = 0.0;
};

struct PipelineConfig {
  int version = 1;
  std::uint64_t seed = 1;
  /// Gold CoNLL corpus; the bundled synthetic corpus when unset.
  std::optional<std::string> corpus_path;
  synth::SynthConfig synth;
  double test_fraction = 0.2;
  chunk::ChunkConfig chunk;
  /// Target WER split 60/25/15; ignored when explicit rates are given.
  double wer = 0.065;
  std::optional<ErrorRates> rates;
  crf::TrainConfig capu_train;
  crf::TrainConfig ner_train;
  bool capu = true;
};

/// Defaults tuned for the bundled corpus on one core.
PipelineConfig default_config();

/// Parses a config document ({"version": 1, ...}); absent keys keep their
/// defaults. Throws DataError on malformed input or unknown versions.
PipelineConfig parse_config(std::string_view json);
std::string config_to_json(const PipelineConfig& config);

struct Condition {
  std::string name;
  eval::EvalReport report;
};

struct PipelineResult {
  std::vector<Condition> conditions;
  std::size_t train_documents = 0;
  std::size_t test_documents = 0;
  std::size_t train_sentences = 0;
  std::size_t capu_samples = 0;
  std::vector<double> capu_objective;
  std::vector<double> ner_objective;
  /// Wall-clock training times; not part of the JSON report.
  double capu_seconds = 0.0;
  double ner_seconds = 0.0;

  const Condition* find(std::string_view name) const;
};

inline constexpr std::string_view kReference = "Reference text";
inline constexpr std::string_view kAsr = "ASR output";
inline constexpr std::string_view kAsrCapu = "ASR output + CAPU";
inline constexpr std::string_view kUncased = "Uncased reference text";
inline constexpr std::string_view kUncasedCapu =
    "Uncased reference text + CAPU";

using Logger = std::function<void(std::string_view)>;

/// Deterministic for a given config.
PipelineResult run_pipeline(const PipelineConfig& config,
                            const Logger& log = {});

/// Evaluates already-trained models on test documents under every input
/// condition (the CaPu rows only when capu_model is given).
PipelineResult evaluate_conditions(std::span<const Document> test_docs,
                                   const ner::NerModel& ner_model,
                                   const capu::CapuModel* capu_model,
                                   const PipelineConfig& config);

std::string comparison_table(const PipelineResult& result);
/// Canonical JSON (sorted keys, 4 decimals).
std::string to_json(const PipelineResult& result);

}  // namespace speechner::pipeline

#endif  // SPEECHNER_PIPELINE_HPP_
