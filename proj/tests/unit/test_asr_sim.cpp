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
#include "generators.hpp"
#include "json.hpp"
#include "speechner/asr_sim.hpp"
#include "speechner/eval.hpp"

using namespace speechner;
using namespace speechner::asr;

namespace {

std::vector<std::string> vocab() {
  return {"một", "hai", "ba", "bốn", "năm", "sáu", "bảy"};
}

ErrorProfile profile(double s, double d, double i, std::uint64_t seed) {
  ErrorProfile p;
  p.p_sub = s;
  p.p_del = d;
  p.p_ins = i;
  p.seed = seed;
  p.vocabulary = vocab();
  return p;
}

}  // namespace

TEST_SUITE("asr_sim") {

TEST_CASE("identity and deletion limits") {
  Rng rng(50);
  const auto ref = gen::lower_words(rng, 30);
  const auto same = corrupt(ref, profile(0, 0, 0, 1));
  CHECK(same.hyp == ref);
  CHECK(same.trace.edits.empty());
  const auto gone = corrupt(ref, profile(0, 1, 0, 1));
  CHECK(gone.hyp.empty());
  CHECK(gone.trace.count(EditKind::kDel) == ref.size());
}

TEST_CASE("substitutions always change the word") {
  Rng rng(51);
  const auto ref = gen::lower_words(rng, 500);
  const auto c = corrupt(ref, profile(1, 0, 0, 2));
  REQUIRE(c.hyp.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(c.hyp[i] != ref[i]);
}

TEST_CASE("profile validation") {
  CHECK_THROWS_AS(profile(-0.1, 0, 0, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(profile(0.7, 0.4, 0, 1).validate(), std::invalid_argument);
  auto p = profile(0.1, 0, 0, 1);
  p.vocabulary = {"x"};
  // One word cannot substitute for itself.
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.vocabulary.clear();
  p.p_sub = 0;
  p.p_ins = 0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  const auto w = ErrorProfile::from_wer(0.1, 3, vocab());
  CHECK(w.p_sub == doctest::Approx(0.06));
  CHECK(w.p_del == doctest::Approx(0.025));
  CHECK(w.p_ins == doctest::Approx(0.015));
}

TEST_CASE("deterministic per seed and replayable") {
  Rng rng(52);
  for (int trial = 0; trial < 200; ++trial) {
    const auto ref = gen::lower_words(
        rng, static_cast<std::size_t>(rng.uniform_int(0, 40)));
    const auto p = profile(0.2, 0.1, 0.1, static_cast<std::uint64_t>(trial));
    const auto a = corrupt(ref, p);
    const auto b = corrupt(ref, p);
    CHECK(a.hyp == b.hyp);
    CHECK(a.trace.edits == b.trace.edits);
    CHECK(replay(ref, a.trace) == a.hyp);
    // The trace never costs less than the optimal alignment.
    CHECK(eval::edit_distance(ref, a.hyp) <= a.trace.edits.size());
  }
}

TEST_CASE("replay rejects traces that do not fit") {
  const std::vector<std::string> ref{"a", "b"};
  CorruptionTrace t;
  t.edits = {{EditKind::kDel, 5, ""}};
  CHECK_THROWS_AS(replay(ref, t), std::invalid_argument);
}

TEST_CASE("measured WER tracks the profile") {
  // 100000 reference words as 4000 utterances of 25.
  Rng rng(53);
  eval::EditCounts total;
  for (int u = 0; u < 4000; ++u) {
    const auto ref = gen::lower_words(rng, 25);
    const auto c = corrupt(ref, profile(0.04, 0.015, 0.01, mix_seed(4, u)));
    total += eval::count_edits(eval::align(ref, c.hyp));
  }
  CHECK(total.ref_words == 100000);
  CHECK(std::abs(total.wer() - 0.065) <= 0.005);
}

TEST_CASE("trace JSON") {
  const std::vector<std::string> ref{"a", "b", "c"};
  const auto c = corrupt(ref, profile(0.5, 0.2, 0.3, 9));
  const auto j = nlohmann::json::parse(trace_to_json(c.trace));
  CHECK(j.is_object());
  CHECK(j.dump().find("edits") != std::string::npos);
}

}  // TEST_SUITE
