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

#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "speechner/corpus_io.hpp"
#include "speechner/errors.hpp"
#include "speechner/pipeline.hpp"
#include "speechner/synth.hpp"

using namespace speechner;
using namespace speechner::pipeline;

namespace {

PipelineConfig small_config(std::uint64_t seed) {
  auto c = default_config();
  c.seed = seed;
  c.synth.documents = 30;
  c.capu_train.epochs = 2;
  c.ner_train.epochs = 2;
  return c;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("synthetic corpus is tagged, valid and deterministic") {
  synth::SynthConfig sc;
  sc.documents = 20;
  const auto a = synth::generate_corpus(sc);
  CHECK(a == synth::generate_corpus(sc));
  REQUIRE(a.size() == 20);
  std::size_t entities = 0;
  for (const auto& d : a) {
    REQUIRE(d.tagged());
    CHECK(d.sentences.size() >= sc.min_sentences);
    CHECK(d.sentences.size() <= sc.max_sentences);
    for (std::size_t s = 0; s < d.sentences.size(); ++s) {
      CHECK(d.sentences[s].size() == d.tags[s].size());
      CHECK(d.sentences[s].back().punct_after == Punct::kPeriod);
      CHECK(ner::validate_bio(d.tags[s]).empty());
      entities += ner::decode_entities(d.tags[s]).size();
    }
  }
  CHECK(entities > 50);
  sc.seed = 2;
  CHECK(a != synth::generate_corpus(sc));
  // CoNLL round trip of generated text.
  CHECK(read_conll_string(write_conll_string(a)) == a);
  const auto vocab = synth::vocabulary(a);
  CHECK(std::is_sorted(vocab.begin(), vocab.end()));
}

TEST_CASE("config parsing") {
  const auto c = parse_config(R"({"version": 1, "seed": 9,
      "chunk": {"len": 20, "overlap": 5}, "asr": {"wer": 0.1},
      "ner_train": {"mode": "full_batch", "epochs": 3}, "capu": false})");
  CHECK(c.seed == 9);
  CHECK(c.chunk.chunk_len == 20);
  CHECK(c.chunk.overlap == 5);
  CHECK(c.wer == doctest::Approx(0.1));
  CHECK(c.ner_train.mode == crf::TrainMode::kFullBatch);
  CHECK(c.ner_train.epochs == 3);
  CHECK_FALSE(c.capu);
  CHECK(parse_config(config_to_json(c)).seed == 9);
  CHECK(config_to_json(parse_config(config_to_json(c))) == config_to_json(c));

  CHECK_THROWS_AS(parse_config("{"), DataError);
  CHECK_THROWS_AS(parse_config(R"({"version": 2, "seed": 1})"), DataError);
  CHECK_THROWS_AS(parse_config(R"({"version": 1})"), DataError);
  CHECK_THROWS_AS(
      parse_config(R"({"version": 1, "seed": 1, "chunk": {"len": 4, "overlap": 4}})"),
      DataError);
  CHECK_THROWS_AS(
      parse_config(R"({"version": 1, "seed": 1, "capu_train": {"mode": "x"}})"),
      DataError);
  CHECK_THROWS_AS(parse_config(R"({"version": 1, "seed": "one"})"),
                  DataError);
}

TEST_CASE("stream_format matches the batch formatter") {
  synth::SynthConfig sc;
  sc.documents = 8;
  const auto docs = synth::generate_corpus(sc);
  std::vector<Token> flat;
  for (const auto& d : docs) {
    for (const auto& s : d.sentences) flat.insert(flat.end(), s.begin(), s.end());
  }
  crf::TrainConfig tc;
  tc.mode = crf::TrainMode::kMiniBatch;
  tc.epochs = 2;
  tc.seed = 1;
  const auto model =
      capu::train_capu(segment_corpus(flat, 3), tc).model;
  const auto words = strip_formatting(flat);
  const chunk::ChunkConfig cc{12, 4};
  CHECK(stream_format(model, words, cc) ==
        chunk::format_chunked(words, cc, capu_formatter(model)));
}

TEST_CASE("end-to-end run has five rows and is reproducible") {
  const auto cfg = small_config(4);
  const auto a = run_pipeline(cfg);
  REQUIRE(a.conditions.size() == 5);
  CHECK(a.conditions[0].name == kReference);
  CHECK(a.find(kAsrCapu) != nullptr);
  CHECK(a.find(kUncasedCapu)->report.capu.has_value());
  CHECK(a.find(kReference)->report.edits.wer() == 0.0);
  CHECK(a.find(kAsr)->report.edits.wer() > 0.0);
  const auto json = to_json(a);
  CHECK(json == to_json(run_pipeline(cfg)));
  CHECK(nlohmann::json::parse(json).at("conditions").size() == 5);
  const auto table = comparison_table(a);
  CHECK(table.find("Uncased reference text + CAPU") != std::string::npos);

  auto no_capu = cfg;
  no_capu.capu = false;
  CHECK(run_pipeline(no_capu).conditions.size() == 3);
}

TEST_CASE("a gold corpus file can replace the generator") {
  const auto path = std::string("pipeline_corpus_test.conll");
  synth::SynthConfig sc;
  sc.documents = 12;
  sc.seed = 5;
  {
    std::ofstream out(path);
    write_conll(out, synth::generate_corpus(sc));
  }
  auto cfg = small_config(1);
  cfg.corpus_path = path;
  const auto r = run_pipeline(cfg);
  CHECK(r.train_documents + r.test_documents == 12);
  cfg.corpus_path = "does-not-exist.conll";
  CHECK_THROWS_AS(run_pipeline(cfg), DataError);
  std::remove(path.c_str());
}

}  // TEST_SUITE
