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

#include "doctest.h"
#include "oracles.hpp"
#include "speechner/corpus_io.hpp"
#include "speechner/errors.hpp"
#include "speechner/eval.hpp"
#include "speechner/ner.hpp"
#include "speechner/synth.hpp"

using namespace speechner;
using ner::Entity;

namespace {

constexpr auto O = NerTag::kO;
constexpr auto BP = NerTag::kBPer;
constexpr auto IP = NerTag::kIPer;
constexpr auto BO = NerTag::kBOrg;
constexpr auto IO = NerTag::kIOrg;
constexpr auto BL = NerTag::kBLoc;
constexpr auto IL = NerTag::kILoc;

crf::TrainConfig quick_config(std::uint64_t seed = 5) {
  crf::TrainConfig c;
  c.mode = crf::TrainMode::kMiniBatch;
  c.epochs = 6;
  c.batch_size = 8;
  c.learning_rate = 0.5;
  c.decay = 0.5;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_SUITE("ner") {

TEST_CASE("label order") {
  const auto& l = ner::label_set();
  REQUIRE(l.size() == kNumNerTags);
  CHECK(l.name(0) == "O");
  for (int i = 0; i < kNumNerTags; ++i) {
    CHECK(l.name(i) == to_string(static_cast<NerTag>(i)));
    CHECK(parse_ner_tag(l.name(i)) == static_cast<NerTag>(i));
  }
}

TEST_CASE("decode_entities") {
  CHECK(ner::decode_entities(TagSequence{BP, IP, O}) ==
        std::vector<Entity>{{EntityType::kPer, 0, 2}});
  CHECK(ner::decode_entities(TagSequence{O, O}).empty());
  CHECK(ner::decode_entities(TagSequence{IL, IL}) ==
        std::vector<Entity>{{EntityType::kLoc, 0, 2}});
  CHECK(ner::decode_entities(TagSequence{BP, BP, IO}) ==
        std::vector<Entity>{{EntityType::kPer, 0, 1},
                            {EntityType::kPer, 1, 2},
                            {EntityType::kOrg, 2, 3}});
}

TEST_CASE("validate and repair") {
  CHECK(ner::validate_bio(TagSequence{BO, IO}).empty());
  CHECK(ner::validate_bio(TagSequence{O, IP}) == std::vector<std::size_t>{1});
  CHECK(ner::validate_bio(TagSequence{BP, IL}) ==
        std::vector<std::size_t>{1});
  CHECK(ner::validate_bio(TagSequence{IL}) == std::vector<std::size_t>{0});
  CHECK(ner::repair_bio(TagSequence{O, IP, IP, IL}) ==
        TagSequence{O, BP, IP, BL});
}

TEST_CASE("render inverts decode") {
  Rng rng(40);
  for (int trial = 0; trial < 500; ++trial) {
    TagSequence tags(static_cast<std::size_t>(rng.uniform_int(0, 10)));
    for (auto& t : tags) t = static_cast<NerTag>(rng.uniform_int(0, 6));
    const auto repaired = ner::repair_bio(tags);
    CHECK(ner::validate_bio(repaired).empty());
    const auto ents = ner::decode_entities(tags);
    CHECK(ner::render_entities(ents, tags.size()) == repaired);
  }
}

TEST_CASE("BIO mask forbids exactly the invalid moves") {
  const auto& c = ner::bio_constraints();
  for (int a = 0; a < kNumNerTags; ++a) {
    const auto ta = static_cast<NerTag>(a);
    CHECK(c.allowed_start[a] == !is_inside(ta));
    for (int b = 0; b < kNumNerTags; ++b) {
      const TagSequence pair{ta, static_cast<NerTag>(b)};
      const auto bad = ner::validate_bio(pair);
      const bool valid_second =
          std::find(bad.begin(), bad.end(), 1) == bad.end();
      CHECK(c.allowed_transition[a * kNumNerTags + b] == valid_second);
    }
  }
}

TEST_CASE("zero model tags everything O; random models stay valid") {
  ner::NerModel zero{crf::CrfModel(ner::label_set(), ner::default_templates())};
  const auto toks = normalize_text("Ông Nam đến Hà Nội.");
  CHECK(ner::tag(zero, toks) == TagSequence(toks.size(), O));
  CHECK_THROWS_AS(ner::tag(zero, std::vector<Token>{}), std::invalid_argument);

  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    ner::NerModel m{
        crf::CrfModel(ner::label_set(), ner::default_templates())};
    m.crf.set_emission("bias", 0, 0.0);
    for (auto& w : m.crf.emission_weights()) w = 4 * rng.uniform01() - 2;
    for (auto& w : m.crf.transition_weights()) w = 4 * rng.uniform01() - 2;
    CHECK(ner::validate_bio(ner::tag(m, toks)).empty());
  }
}

TEST_CASE("formatting features") {
  const auto toks = normalize_text("ông Nam, FPT.");
  const auto x = ner::sentence_features(ner::default_templates(true), toks);
  REQUIRE(x.size() == 3);
  auto has = [&](std::size_t t, const std::string& f) {
    return std::find(x[t].begin(), x[t].end(), f) != x[t].end();
  };
  CHECK(has(1, "c0=CAP_FIRST"));
  CHECK(has(1, "m0=COMMA"));
  CHECK(has(2, "c0=ALL_CAPS"));
  CHECK(has(2, "m-1=COMMA"));
  const auto plain =
      ner::sentence_features(ner::default_templates(false), toks);
  CHECK(std::none_of(plain[1].begin(), plain[1].end(), [](const auto& f) {
    return f.starts_with("c0=");
  }));
}

TEST_CASE("single sentence memorization") {
  Document d;
  d.sentences = {normalize_text("Ông Nguyễn Văn An đến Hà Nội.")};
  d.tags = {{O, BP, IP, IP, O, BL, IL}};
  crf::TrainConfig cfg;
  cfg.epochs = 50;
  const auto r = ner::train_ner(std::vector<Document>{d}, cfg);
  CHECK(ner::tag(r.model, d.sentences[0]) == d.tags[0]);
}

TEST_CASE("training rejects invalid BIO and untagged input") {
  Document d;
  d.sentences = {normalize_text("a b")};
  d.tags = {{O, IP}};
  try {
    ner::train_ner(std::vector<Document>{d}, {});
    FAIL("expected a data error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("sentence") != std::string::npos);
  }
  Document untagged;
  untagged.sentences = d.sentences;
  CHECK_THROWS_AS(ner::train_ner(std::vector<Document>{untagged}, {}),
                  std::invalid_argument);
}

TEST_CASE("held-out F1 on the synthetic generator") {
  synth::SynthConfig sc;
  sc.documents = 80;
  sc.seed = 3;
  const auto docs = synth::generate_corpus(sc);
  const std::vector<Document> train(docs.begin(), docs.begin() + 60);
  const std::vector<Document> test(docs.begin() + 60, docs.end());
  std::size_t sentences = 0;
  for (const auto& d : train) sentences += d.sentences.size();
  CHECK(sentences >= 400);
  const auto r = ner::train_ner(train, quick_config());
  eval::Prf micro;
  for (const auto& d : test) {
    for (std::size_t s = 0; s < d.sentences.size(); ++s) {
      micro += eval::entity_prf(d.tags[s], ner::tag(r.model, d.sentences[s]))
                   .micro;
    }
  }
  CHECK(micro.f1() >= 0.90);

  // Toy context check.
  const auto t = ner::tag(r.model, normalize_text("Ông An đến Hà Nội."));
  CHECK(t[3] == BL);
  CHECK(t[4] == IL);
}

TEST_CASE("deterministic training and model round trip") {
  synth::SynthConfig sc;
  sc.documents = 10;
  const auto docs = synth::generate_corpus(sc);
  const auto a = ner::train_ner(docs, quick_config(8));
  const auto b = ner::train_ner(docs, quick_config(8));
  const auto text = ner::to_json(a.model);
  CHECK(text == ner::to_json(b.model));
  CHECK(ner::to_json(ner::ner_from_json(text)) == text);
  CHECK_THROWS_AS(ner::ner_from_json("{\"version\":\"x\"}"), DataError);
}

TEST_CASE("tag_stream cuts at periods") {
  Document d;
  d.sentences = {normalize_text("Ông An đến Hà Nội.")};
  d.tags = {{O, BP, O, BL, IL}};
  crf::TrainConfig cfg;
  cfg.epochs = 40;
  const auto r = ner::train_ner(std::vector<Document>{d}, cfg);
  auto stream = d.sentences[0];
  stream.insert(stream.end(), d.sentences[0].begin(), d.sentences[0].end());
  TagSequence want = d.tags[0];
  want.insert(want.end(), d.tags[0].begin(), d.tags[0].end());
  CHECK(ner::tag_stream(r.model, stream) == want);
  CHECK(ner::tag_stream(r.model, std::vector<Token>{}).empty());
}

}  // TEST_SUITE
