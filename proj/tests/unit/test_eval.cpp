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
#include "json.hpp"
#include "oracles.hpp"
#include "speechner/asr_sim.hpp"
#include "speechner/corpus_io.hpp"
#include "speechner/eval.hpp"
#include "speechner/ner.hpp"

using namespace speechner;
using namespace speechner::eval;

namespace {

constexpr auto O = NerTag::kO;
constexpr auto BP = NerTag::kBPer;
constexpr auto IP = NerTag::kIPer;
constexpr auto BO = NerTag::kBOrg;
constexpr auto BL = NerTag::kBLoc;
constexpr auto IL = NerTag::kILoc;

std::string ops(const std::vector<AlignmentOp>& a) {
  std::string s;
  for (const auto& op : a) s += to_char(op.kind);
  return s;
}

TagSequence random_tags(Rng& rng, std::size_t n) {
  TagSequence t(n);
  for (auto& x : t) x = static_cast<NerTag>(rng.uniform_int(0, 6));
  return ner::repair_bio(t);
}

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("alignment basics") {
  const std::vector<std::string> abc{"a", "b", "c"};
  CHECK(ops(align(abc, abc)) == "TTT");
  const std::vector<std::string> axc{"a", "x", "c"};
  CHECK(ops(align(abc, axc)) == "TST");
  const std::vector<std::string> upper{"A", "B", "C"};
  CHECK(ops(align(abc, upper)) == "TTT");
  CHECK(ops(align(abc, {})) == "DDD");
  CHECK(ops(align({}, abc)) == "III");
  CHECK(align({}, {}).empty());
}

TEST_CASE("alignment is optimal and well-formed") {
  Rng rng(60);
  const std::vector<std::string> alphabet{"a", "b", "c"};
  for (int trial = 0; trial < 3000; ++trial) {
    const auto ref = oracle::random_words(rng, 8, alphabet);
    const auto hyp = oracle::random_words(rng, 8, alphabet);
    const auto a = align(ref, hyp);
    const auto d = oracle::edit_distance(ref, hyp);
    const auto counts = count_edits(a);
    CHECK(counts.errors() == d);
    CHECK(edit_distance(ref, hyp) == d);
    // Indices advance monotonically over both sides.
    std::size_t r = 0, h = 0;
    for (const auto& op : a) {
      if (op.ref_index) CHECK(*op.ref_index == r++);
      if (op.hyp_index) CHECK(*op.hyp_index == h++);
      if (op.kind == OpKind::kT) CHECK(ref[*op.ref_index] == hyp[*op.hyp_index]);
      if (op.kind == OpKind::kS) CHECK(ref[*op.ref_index] != hyp[*op.hyp_index]);
    }
    CHECK(r == ref.size());
    CHECK(h == hyp.size());
  }
}

TEST_CASE("substitution is preferred over a deletion-insertion pair") {
  const std::vector<std::string> ref{"a", "b"};
  const std::vector<std::string> hyp{"a", "c"};
  CHECK(ops(align(ref, hyp)) == "TS");
}

TEST_CASE("projection rules") {
  const TagSequence hyp_tags{BP, BL, IL, BO};
  CHECK(project_tags(TagSequence(4, O), hyp_tags,
                     align(std::vector<std::string>{"a", "b", "c", "d"},
                           std::vector<std::string>{"a", "b", "c", "d"})) ==
        hyp_tags);
  const std::vector<AlignmentOp> alignment{
      {OpKind::kT, 0, 0}, {OpKind::kS, 1, 1}, {OpKind::kD, 2, std::nullopt},
      {OpKind::kT, 3, 2}, {OpKind::kI, std::nullopt, 3}};
  const TagSequence ref_tags(4, O);
  CHECK(project_tags(ref_tags, hyp_tags, alignment) ==
        TagSequence{BP, O, O, BL});
  // An I- tag left without its head is repaired.
  const TagSequence cont{BL, IL};
  const std::vector<AlignmentOp> split{{OpKind::kS, 0, 0}, {OpKind::kT, 1, 1}};
  CHECK(project_tags(TagSequence(2, O), cont, split) == TagSequence{O, BL});
  CHECK_THROWS_AS(project_tags(TagSequence(3, O), cont, split),
                  std::invalid_argument);
}

TEST_CASE("projection length over simulated corruption") {
  Rng rng(61);
  const std::vector<std::string> alphabet{"an", "bình", "chi", "dũng"};
  for (int trial = 0; trial < 500; ++trial) {
    const auto ref = oracle::random_words(rng, 20, alphabet);
    asr::ErrorProfile p;
    p.p_sub = 0.2;
    p.p_del = 0.1;
    p.p_ins = 0.1;
    p.seed = static_cast<std::uint64_t>(trial);
    p.vocabulary = alphabet;
    const auto hyp = asr::corrupt(ref, p).hyp;
    const auto projected =
        project_tags(random_tags(rng, ref.size()),
                     random_tags(rng, hyp.size()), align(ref, hyp));
    CHECK(projected.size() == ref.size());
    CHECK(ner::validate_bio(projected).empty());
  }
}

TEST_CASE("one of three entities found") {
  const TagSequence ref{BP, O, BL, IL, O, BO};
  const TagSequence hyp{O, O, BL, IL, O, O};
  const auto s = entity_prf(ref, hyp);
  CHECK(s.micro.correct == 1);
  CHECK(s.micro.predicted == 1);
  CHECK(s.micro.gold == 3);
  CHECK(s.micro.precision() == doctest::Approx(1.0));
  CHECK(s.micro.recall() == doctest::Approx(1.0 / 3));
  CHECK(s.micro.f1() == doctest::Approx(0.5));
  CHECK(s.per_type[static_cast<int>(EntityType::kLoc)].f1() ==
        doctest::Approx(1.0));
  CHECK(s.per_type[static_cast<int>(EntityType::kPer)].recall() == 0.0);
}

TEST_CASE("perfect and empty predictions") {
  const TagSequence ref{BP, IP, O, BL};
  CHECK(entity_prf(ref, ref).micro.f1() == 1.0);
  const auto none = entity_prf(ref, TagSequence(4, O)).micro;
  CHECK(none.precision() == 0.0);
  CHECK(none.f1() == 0.0);
  CHECK_THROWS_AS(entity_prf(ref, TagSequence(3, O)), std::invalid_argument);
}

TEST_CASE("WER") {
  const std::vector<std::string> ref{"a", "b", "c", "d"};
  const std::vector<std::string> hyp{"a", "x", "d", "e"};
  CHECK(wer(ref, hyp) == doctest::Approx(0.75));
  CHECK_THROWS_AS(wer({}, hyp), std::invalid_argument);
  const auto c = count_edits(align(ref, hyp));
  CHECK(c.ref_words == 4);
  CHECK(c.hyp_words == 4);
  // Equal-cost tie: three substitutions win over a deletion and an
  // insertion.
  CHECK(c.correct == 1);
  CHECK(c.substitutions == 3);
}

TEST_CASE("CaPu class accuracy") {
  const auto ref = normalize_text("Ông Nam, đến Hà Nội. Rồi về");
  auto hyp = normalize_text("ông Nam đến, Hà Nội. rồi về.");
  const auto a = capu_confusion(ref, hyp);
  CHECK(a.capitalization.total == 5);
  CHECK(a.capitalization.correct == 3);
  CHECK(a.comma.total == 1);
  CHECK(a.comma.correct == 0);
  CHECK(a.period.total == 1);
  CHECK(a.period.correct == 1);
  CHECK(a.blank.total == 5);
  CHECK(a.blank.correct == 3);
  const auto vacuous = capu_confusion(normalize_text("a b"),
                                      normalize_text("a b"));
  CHECK(vacuous.capitalization.accuracy() == 1.0);
  CHECK_THROWS_AS(capu_confusion(ref, normalize_text("x")),
                  std::invalid_argument);
}

TEST_CASE("pipeline scoring and report formats") {
  Document gold;
  gold.sentences = {normalize_text("Ông An đến Hà Nội."),
                    normalize_text("FPT mở văn phòng.")};
  gold.tags = {{O, BP, O, BL, IL}, {BO, O, O, O}};
  const std::vector<Document> golds{gold};
  const std::vector<std::vector<std::string>> words{
      {"ông", "an", "đến", "hà", "nội", "fpt", "mở", "văn", "phòng"}};
  const std::vector<TagSequence> tags{{O, BP, O, BL, IL, BO, O, O, O}};
  const auto perfect = evaluate_pipeline(golds, words, tags);
  CHECK(perfect.entities.micro.f1() == 1.0);
  CHECK(perfect.edits.wer() == 0.0);
  REQUIRE(perfect.documents.size() == 1);

  const std::vector<std::vector<std::string>> noisy{
      {"ông", "anh", "đến", "hà", "nội", "fpt", "văn", "phòng"}};
  const std::vector<TagSequence> noisy_tags{{O, BP, O, BL, IL, BO, O, O}};
  const auto r = evaluate_pipeline(golds, noisy, noisy_tags);
  CHECK(r.edits.substitutions == 1);
  CHECK(r.edits.insertions == 0);
  CHECK(r.edits.deletions == 1);
  // The substituted name loses its tag.
  CHECK(r.entities.micro.gold == 3);
  CHECK(r.entities.micro.correct == 2);
  CHECK(r.entities.micro.predicted == 2);

  const auto json = to_json(r);
  CHECK(json.find("\"f1\": 0.8000") != std::string::npos);
  const auto parsed = nlohmann::json::parse(json);
  CHECK(parsed.is_object());
  CHECK(to_json(r) == json);
  CHECK(to_table(perfect).find("1.0000") != std::string::npos);

  CHECK_THROWS_AS(evaluate_pipeline(golds, noisy, std::vector<TagSequence>{}),
                  std::invalid_argument);
  Document untagged;
  untagged.sentences = gold.sentences;
  CHECK_THROWS_AS(evaluate_pipeline(std::vector<Document>{untagged}, words,
                                    tags),
                  std::invalid_argument);
}

}  // TEST_SUITE
