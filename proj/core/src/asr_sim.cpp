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

#include "speechner/asr_sim.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "speechner/rng.hpp"

namespace speechner::asr {

namespace {

bool valid_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

void ErrorProfile::validate() const {
  if (!valid_probability(p_sub) || !valid_probability(p_del) ||
      !valid_probability(p_ins)) {
    throw std::invalid_argument("error probabilities must lie in [0, 1]");
  }
  if (p_sub + p_del + p_ins > 1.0 + 1e-12) {
    throw std::invalid_argument("error probabilities sum above 1");
  }
  if ((p_sub > 0.0 || p_ins > 0.0) && vocabulary.empty()) {
    throw std::invalid_argument("substitutions and insertions need a "
                                "vocabulary");
  }
  if (p_sub > 0.0) {
    const std::set<std::string> distinct(vocabulary.begin(), vocabulary.end());
    if (distinct.size() < 2) {
      throw std::invalid_argument("substitutions need at least two distinct "
                                  "vocabulary words");
    }
  }
}

ErrorProfile ErrorProfile::from_wer(double wer, std::uint64_t seed,
                                    std::vector<std::string> vocabulary) {
  ErrorProfile p;
  p.p_sub = 0.60 * wer;
  p.p_del = 0.25 * wer;
  p.p_ins = 0.15 * wer;
  p.seed = seed;
  p.vocabulary = std::move(vocabulary);
  p.validate();
  return p;
}

std::size_t CorruptionTrace::count(EditKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(edits.begin(), edits.end(),
                    [kind](const Edit& e) { return e.kind == kind; }));
}

Corruption corrupt(std::span<const std::string> ref,
                   const ErrorProfile& profile) {
  profile.validate();
  Rng rng(profile.seed);
  const auto& vocab = profile.vocabulary;
  auto draw_word = [&]() -> const std::string& {
    return vocab[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(vocab.size()) - 1))];
  };

  Corruption out;
  out.hyp.reserve(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double u = rng.uniform01();
    if (u < profile.p_sub) {
      std::string w;
      do {
        w = draw_word();
      } while (w == ref[i]);
      out.hyp.push_back(w);
      out.trace.edits.push_back({EditKind::kSub, i, std::move(w)});
    } else if (u < profile.p_sub + profile.p_del) {
      out.trace.edits.push_back({EditKind::kDel, i, {}});
    } else {
      out.hyp.push_back(ref[i]);
    }
    if (profile.p_ins > 0.0 && rng.uniform01() < profile.p_ins) {
      const std::string& w = draw_word();
      out.hyp.push_back(w);
      out.trace.edits.push_back({EditKind::kIns, i, w});
    }
  }
  return out;
}

std::vector<std::string> replay(std::span<const std::string> ref,
                                const CorruptionTrace& trace) {
  std::vector<std::string> hyp;
  hyp.reserve(ref.size());
  std::size_t e = 0;
  const auto& edits = trace.edits;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (e < edits.size() && edits[e].ref_index == i &&
        edits[e].kind != EditKind::kIns) {
      if (edits[e].kind == EditKind::kSub) hyp.push_back(edits[e].word);
      ++e;
    } else {
      hyp.push_back(ref[i]);
    }
    if (e < edits.size() && edits[e].ref_index == i &&
        edits[e].kind == EditKind::kIns) {
      hyp.push_back(edits[e].word);
      ++e;
    }
  }
  if (e != edits.size()) {
    throw std::invalid_argument("trace does not fit the reference");
  }
  return hyp;
}

std::string trace_to_json(const CorruptionTrace& trace) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : trace.edits) {
    const char* kind = e.kind == EditKind::kSub   ? "SUB"
                       : e.kind == EditKind::kDel ? "DEL"
                                                  : "INS";
    nlohmann::json j = {{"op", kind}, {"ref_index", e.ref_index}};
    if (e.kind != EditKind::kDel) j["word"] = e.word;
    arr.push_back(std::move(j));
  }
  return nlohmann::json{{"edits", std::move(arr)}}.dump(2) + "\n";
}

}  // namespace speechner::asr
