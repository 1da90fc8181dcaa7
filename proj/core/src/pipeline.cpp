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

#include "speechner/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "canonical_json.hpp"
#include "speechner/asr_sim.hpp"
#include "speechner/corpus_io.hpp"
#include "speechner/errors.hpp"
#include "speechner/rng.hpp"

namespace speechner::pipeline {

using nlohmann::json;

namespace {

// Sub-stream ids for mix_seed.
enum SeedStream : std::uint64_t {
  kSplitSeed = 1,
  kSegmentSeed = 2,
  kCapuTrainSeed = 3,
  kNerTrainSeed = 4,
  kAsrSeedBase = 1000,
};

std::string_view mode_name(crf::TrainMode m) {
  return m == crf::TrainMode::kFullBatch ? "full_batch" : "mini_batch";
}

crf::TrainConfig parse_train(const json& j, crf::TrainConfig c) {
  c.l2 = j.value("l2", c.l2);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.decay = j.value("decay", c.decay);
  c.epochs = j.value("epochs", c.epochs);
  c.batch_size = j.value("batch_size", c.batch_size);
  if (j.contains("mode")) {
    const auto m = j.at("mode").get<std::string>();
    if (m == "full_batch") {
      c.mode = crf::TrainMode::kFullBatch;
    } else if (m == "mini_batch") {
      c.mode = crf::TrainMode::kMiniBatch;
    } else {
      throw DataError("config: unknown training mode \"" + m + "\"");
    }
  }
  return c;
}

json train_json(const crf::TrainConfig& c) {
  return {{"l2", c.l2},
          {"learning_rate", c.learning_rate},
          {"decay", c.decay},
          {"epochs", c.epochs},
          {"batch_size", c.batch_size},
          {"mode", mode_name(c.mode)}};
}

std::vector<Token> flatten(const Document& doc) {
  std::vector<Token> out;
  for (const auto& s : doc.sentences) out.insert(out.end(), s.begin(), s.end());
  return out;
}

std::vector<std::string> surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

asr::ErrorProfile error_profile(const PipelineConfig& config,
                                std::vector<std::string> vocab) {
  if (config.rates) {
    asr::ErrorProfile p;
    p.p_sub = config.rates->p_sub;
    p.p_del = config.rates->p_del;
    p.p_ins = config.rates->p_ins;
    p.vocabulary = std::move(vocab);
    p.validate();
    return p;
  }
  return asr::ErrorProfile::from_wer(config.wer, 0, std::move(vocab));
}

std::vector<Token> lowercase_tokens(const std::vector<std::string>& words) {
  std::vector<Token> out;
  out.reserve(words.size());
  for (const auto& w : words) {
    out.emplace_back(w, CaseClass::kLower, Punct::kNone);
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

TagSequence tag_or_empty(const ner::NerModel& model,
                         const std::vector<Token>& tokens) {
  if (tokens.empty()) return {};
  return ner::tag_stream(model, tokens);
}

}  // namespace

chunk::Formatter capu_formatter(const capu::CapuModel& model) {
  return [&model](std::span<const std::string> words) {
    return capu::format_tokens(model, words);
  };
}

std::vector<Token> stream_format(const capu::CapuModel& model,
                                 std::span<const std::string> words,
                                 const chunk::ChunkConfig& config) {
  std::vector<Token> out;
  out.reserve(words.size());
  chunk::StreamFormatter fmt(config, capu_formatter(model),
                             [&out](const Token& t) { out.push_back(t); });
  for (const auto& w : words) fmt.push(w);
  fmt.finish();
  return out;
}

PipelineConfig default_config() {
  PipelineConfig c;
  c.capu_train.mode = crf::TrainMode::kMiniBatch;
  c.capu_train.epochs = 6;
  c.capu_train.batch_size = 8;
  c.capu_train.learning_rate = 0.5;
  c.capu_train.decay = 0.5;
  c.capu_train.l2 = 1e-3;
  c.ner_train = c.capu_train;
  c.ner_train.epochs = 8;
  return c;
}

PipelineConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("config: invalid JSON: ") + e.what());
  }
  PipelineConfig c = default_config();
  try {
    c.version = j.at("version").get<int>();
    if (c.version != 1) {
      throw DataError("config: unsupported version " +
                      std::to_string(c.version));
    }
    if (!j.contains("seed")) throw DataError("config: \"seed\" is required");
    c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("corpus")) c.corpus_path = j.at("corpus").get<std::string>();
    if (j.contains("synth")) {
      const auto& s = j.at("synth");
      c.synth.documents = s.value("documents", c.synth.documents);
      c.synth.min_sentences = s.value("min_sentences", c.synth.min_sentences);
      c.synth.max_sentences = s.value("max_sentences", c.synth.max_sentences);
    }
    c.test_fraction = j.value("test_fraction", c.test_fraction);
    if (j.contains("chunk")) {
      const auto& s = j.at("chunk");
      c.chunk.chunk_len = s.value("len", c.chunk.chunk_len);
      c.chunk.overlap = s.value("overlap", c.chunk.overlap);
    }
    if (j.contains("asr")) {
      const auto& a = j.at("asr");
      if (a.contains("p_sub") || a.contains("p_del") || a.contains("p_ins")) {
        c.rates = ErrorRates{a.value("p_sub", 0.0), a.value("p_del", 0.0),
                             a.value("p_ins", 0.0)};
      }
      c.wer = a.value("wer", c.wer);
    }
    if (j.contains("capu_train")) {
      c.capu_train = parse_train(j.at("capu_train"), c.capu_train);
    }
    if (j.contains("ner_train")) {
      c.ner_train = parse_train(j.at("ner_train"), c.ner_train);
    }
    c.capu = j.value("capu", c.capu);
  } catch (const json::exception& e) {
    throw DataError(std::string("config: ") + e.what());
  }
  if (!(c.test_fraction > 0.0 && c.test_fraction < 1.0)) {
    throw DataError("config: test_fraction must lie in (0, 1)");
  }
  if (c.synth.min_sentences < 1 || c.synth.min_sentences > c.synth.max_sentences) {
    throw DataError("config: bad synth sentence range");
  }
  try {
    c.chunk.validate();
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("config: ") + e.what());
  }
  return c;
}

std::string config_to_json(const PipelineConfig& c) {
  json j;
  j["version"] = c.version;
  j["seed"] = c.seed;
  if (c.corpus_path) j["corpus"] = *c.corpus_path;
  j["synth"] = {{"documents", c.synth.documents},
                {"min_sentences", c.synth.min_sentences},
                {"max_sentences", c.synth.max_sentences}};
  j["test_fraction"] = c.test_fraction;
  j["chunk"] = {{"len", c.chunk.chunk_len}, {"overlap", c.chunk.overlap}};
  if (c.rates) {
    j["asr"] = {{"p_sub", c.rates->p_sub},
                {"p_del", c.rates->p_del},
                {"p_ins", c.rates->p_ins}};
  } else {
    j["asr"] = {{"wer", c.wer}};
  }
  j["capu_train"] = train_json(c.capu_train);
  j["ner_train"] = train_json(c.ner_train);
  j["capu"] = c.capu;
  return j.dump(2) + "\n";
}

const Condition* PipelineResult::find(std::string_view name) const {
  for (const auto& c : conditions) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

PipelineResult evaluate_conditions(std::span<const Document> test_docs,
                                   const ner::NerModel& ner_model,
                                   const capu::CapuModel* capu_model,
                                   const PipelineConfig& config) {
  std::vector<Document> gold(test_docs.begin(), test_docs.end());
  std::vector<std::vector<Token>> reference;
  for (const auto& d : gold) reference.push_back(flatten(d));

  const auto profile = error_profile(config, synth::vocabulary(gold));
  std::vector<std::vector<std::string>> asr_words;
  for (std::size_t d = 0; d < gold.size(); ++d) {
    auto p = profile;
    p.seed = mix_seed(config.seed, kAsrSeedBase + d);
    asr_words.push_back(asr::corrupt(strip_formatting(reference[d]), p).hyp);
  }

  PipelineResult result;
  result.test_documents = gold.size();
  auto run = [&](std::string_view name,
                 const std::vector<std::vector<Token>>& inputs) {
    std::vector<std::vector<std::string>> words;
    std::vector<TagSequence> tags;
    for (const auto& toks : inputs) {
      words.push_back(surfaces(toks));
      tags.push_back(tag_or_empty(ner_model, toks));
    }
    Condition c{std::string(name),
                eval::evaluate_pipeline(gold, words, tags)};
    c.report.documents.clear();
    result.conditions.push_back(std::move(c));
  };
  auto formatted = [&](const std::vector<std::string>& words) {
    if (words.empty()) return std::vector<Token>{};
    return stream_format(*capu_model, words, config.chunk);
  };

  run(kReference, reference);

  std::vector<std::vector<Token>> asr_tokens;
  for (const auto& w : asr_words) asr_tokens.push_back(lowercase_tokens(w));
  run(kAsr, asr_tokens);
  if (capu_model) {
    std::vector<std::vector<Token>> asr_capu;
    for (const auto& w : asr_words) asr_capu.push_back(formatted(w));
    run(kAsrCapu, asr_capu);
  }

  std::vector<std::vector<Token>> uncased;
  for (const auto& r : reference) uncased.push_back(uncase(r));
  run(kUncased, uncased);
  if (capu_model) {
    std::vector<std::vector<Token>> uncased_capu;
    eval::CapuAccuracy acc;
    for (std::size_t d = 0; d < reference.size(); ++d) {
      uncased_capu.push_back(formatted(strip_formatting(reference[d])));
      const auto a = eval::capu_confusion(reference[d], uncased_capu.back());
      for (auto [dst, src] :
           {std::pair{&acc.capitalization, &a.capitalization},
            std::pair{&acc.period, &a.period}, std::pair{&acc.comma, &a.comma},
            std::pair{&acc.blank, &a.blank}}) {
        dst->correct += src->correct;
        dst->total += src->total;
      }
    }
    run(kUncasedCapu, uncased_capu);
    result.conditions.back().report.capu = acc;
  }
  return result;
}

PipelineResult run_pipeline(const PipelineConfig& config, const Logger& log) {
  auto note = [&](const std::string& msg) {
    if (log) log(msg);
  };

  std::vector<Document> docs;
  if (config.corpus_path) {
    std::ifstream in(*config.corpus_path);
    if (!in) throw DataError("cannot open corpus " + *config.corpus_path);
    docs = read_conll(in);
    for (const auto& d : docs) {
      if (!d.tagged()) throw DataError("corpus documents must be tagged");
    }
  } else {
    auto sc = config.synth;
    sc.seed = config.seed;
    docs = synth::generate_corpus(sc);
  }
  if (docs.size() < 2) throw DataError("corpus needs at least two documents");

  std::vector<std::size_t> order(docs.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(mix_seed(config.seed, kSplitSeed));
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1],
              order[static_cast<std::size_t>(
                  rng.uniform_int(0, static_cast<std::int64_t>(i) - 1))]);
  }
  const auto n_test = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(config.test_fraction * docs.size())),
      1, docs.size() - 1);
  std::vector<Document> train, test;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < n_test ? test : train).push_back(docs[order[i]]);
  }
  std::size_t train_sentences = 0;
  for (const auto& d : train) train_sentences += d.sentences.size();
  note("corpus: " + std::to_string(train.size()) + " train / " +
       std::to_string(test.size()) + " test documents, " +
       std::to_string(train_sentences) + " train sentences");

  std::optional<capu::CapuModel> capu_model;
  double capu_seconds = 0.0;
  std::vector<double> capu_trace;
  std::size_t n_samples = 0;
  if (config.capu) {
    std::vector<Token> stream;
    for (const auto& d : train) {
      const auto flat = flatten(d);
      stream.insert(stream.end(), flat.begin(), flat.end());
    }
    const auto samples =
        segment_corpus(stream, mix_seed(config.seed, kSegmentSeed));
    n_samples = samples.size();
    note("capu: training on " + std::to_string(samples.size()) + " segments");
    auto tc = config.capu_train;
    tc.seed = mix_seed(config.seed, kCapuTrainSeed);
    const auto t0 = std::chrono::steady_clock::now();
    auto r = capu::train_capu(samples, tc);
    capu_seconds = seconds_since(t0);
    capu_model = std::move(r.model);
    capu_trace = std::move(r.objective_trace);
  }

  note("ner: training on " + std::to_string(train_sentences) + " sentences");
  auto tc = config.ner_train;
  tc.seed = mix_seed(config.seed, kNerTrainSeed);
  const auto t0 = std::chrono::steady_clock::now();
  auto ner_result = ner::train_ner(train, tc);
  const double ner_seconds = seconds_since(t0);

  note("evaluating input conditions");
  auto result = evaluate_conditions(test, ner_result.model,
                                    capu_model ? &*capu_model : nullptr,
                                    config);
  result.train_documents = train.size();
  result.train_sentences = train_sentences;
  result.capu_samples = n_samples;
  result.capu_objective = std::move(capu_trace);
  result.ner_objective = std::move(ner_result.objective_trace);
  result.capu_seconds = capu_seconds;
  result.ner_seconds = ner_seconds;
  return result;
}

std::string comparison_table(const PipelineResult& result) {
  std::ostringstream out;
  char line[200];
  std::snprintf(line, sizeof line, "%-32s %9s %9s %9s %8s\n", "Input type",
                "F1", "P", "R", "WER");
  out << line;
  for (const auto& c : result.conditions) {
    const auto& m = c.report.entities.micro;
    std::snprintf(line, sizeof line, "%-32s %8.2f%% %8.2f%% %8.2f%% %7.2f%%\n",
                  c.name.c_str(), 100.0 * m.f1(), 100.0 * m.precision(),
                  100.0 * m.recall(), 100.0 * c.report.edits.wer());
    out << line;
  }
  for (const auto& c : result.conditions) {
    if (!c.report.capu) continue;
    const auto& a = *c.report.capu;
    std::snprintf(line, sizeof line,
                  "CaPu accuracy (%s): capitalization %.2f%%, period %.2f%%, "
                  "comma %.2f%%, blank %.2f%%\n",
                  c.name.c_str(), 100.0 * a.capitalization.accuracy(),
                  100.0 * a.period.accuracy(), 100.0 * a.comma.accuracy(),
                  100.0 * a.blank.accuracy());
    out << line;
  }
  return out.str();
}

std::string to_json(const PipelineResult& result) {
  json j;
  json rows = json::array();
  for (const auto& c : result.conditions) {
    json row = detail::to_json_value(c.report);
    row.erase("documents");
    row["name"] = c.name;
    rows.push_back(std::move(row));
  }
  j["conditions"] = std::move(rows);
  j["train_documents"] = result.train_documents;
  j["test_documents"] = result.test_documents;
  j["train_sentences"] = result.train_sentences;
  j["capu_samples"] = result.capu_samples;
  if (!result.capu_objective.empty()) {
    j["capu_final_objective"] = result.capu_objective.back();
  }
  if (!result.ner_objective.empty()) {
    j["ner_final_objective"] = result.ner_objective.back();
  }
  return detail::canonical_dump(j);
}

}  // namespace speechner::pipeline
