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

#include "speechner/capu.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "speechner/errors.hpp"
#include "speechner/unicode.hpp"

namespace speechner::capu {

namespace {

constexpr std::string_view kTask = "capu";
constexpr std::string_view kSentenceInitial = "sentence_initial";
constexpr std::string_view kPunctFollows = "punct_follows";

// Lexicon entries need this many occurrences and this share of them.
constexpr std::size_t kLexiconMinCount = 2;
constexpr double kLexiconMinRatio = 0.2;

std::string_view case_name(LetterCase c) {
  switch (c) {
    case LetterCase::kLower: return "LOWER";
    case LetterCase::kCapFirst: return "CAP_FIRST";
    case LetterCase::kAllCaps: return "ALL_CAPS";
  }
  return "?";
}

std::string position_bucket(std::size_t i) {
  if (i < 4) return std::to_string(i);
  if (i < 8) return "4";
  if (i < 16) return "8";
  return "16";
}

std::string capitalize(std::string_view lower) {
  auto cps = unicode::decode(lower);
  bool first = true;
  for (char32_t& c : cps) {
    if (!unicode::is_letter(c)) continue;
    c = first ? unicode::to_upper(c) : unicode::to_lower(c);
    first = false;
  }
  return unicode::encode(cps);
}

std::vector<std::string> frequent(
    const std::map<std::string, std::size_t>& hits,
    const std::map<std::string, std::size_t>& totals) {
  std::vector<std::string> out;
  for (const auto& [word, n] : hits) {
    if (n >= kLexiconMinCount &&
        static_cast<double>(n) >= kLexiconMinRatio * totals.at(word)) {
      out.push_back(word);
    }
  }
  return out;
}

}  // namespace

const crf::LabelSet& label_set() {
  static const crf::LabelSet labels = [] {
    std::vector<std::string> names;
    for (int i = 0; i < kNumLabels; ++i) {
      const auto l = CapuLabel::from_index(i);
      names.push_back(std::string(case_name(l.letter_case)) + "|" +
                      std::string(to_string(l.punct)));
    }
    return crf::LabelSet(std::move(names));
  }();
  return labels;
}

CapuSample encode_labels(std::span<const Token> formatted) {
  CapuSample s;
  s.lower_tokens.reserve(formatted.size());
  s.labels.reserve(formatted.size());
  for (const auto& t : formatted) {
    s.lower_tokens.push_back(unicode::to_lower(t.surface));
    LetterCase c = LetterCase::kLower;
    switch (classify_case(t.surface)) {
      case CaseClass::kLower: c = LetterCase::kLower; break;
      case CaseClass::kCapFirst: c = LetterCase::kCapFirst; break;
      case CaseClass::kAllCaps: c = LetterCase::kAllCaps; break;
      case CaseClass::kMixed: {
        c = LetterCase::kLower;
        for (char32_t cp : unicode::decode(t.surface)) {
          if (unicode::is_letter(cp)) {
            if (unicode::is_upper(cp)) c = LetterCase::kCapFirst;
            break;
          }
        }
        break;
      }
    }
    s.labels.push_back({c, t.punct_after});
  }
  return s;
}

std::vector<Token> decode_labels(std::span<const std::string> lower_tokens,
                                 std::span<const CapuLabel> labels) {
  if (lower_tokens.size() != labels.size()) {
    throw std::invalid_argument("decode_labels: token/label length mismatch");
  }
  std::vector<Token> out;
  out.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::string surface;
    switch (labels[i].letter_case) {
      case LetterCase::kLower: surface = unicode::to_lower(lower_tokens[i]); break;
      case LetterCase::kCapFirst: surface = capitalize(lower_tokens[i]); break;
      case LetterCase::kAllCaps: surface = unicode::to_upper(lower_tokens[i]); break;
    }
    out.emplace_back(std::move(surface), labels[i].punct);
  }
  return out;
}

crf::FeatureTemplate default_templates() {
  crf::FeatureTemplate t;
  t.window = 2;
  t.capu_features = true;
  return t;
}

crf::FeatureSequence chunk_features(const crf::CrfModel& model,
                                    std::span<const std::string> lower) {
  const auto& tmpl = model.templates();
  std::unordered_set<std::string_view> sentence_initial;
  std::unordered_set<std::string_view> punct_follows;
  if (tmpl.capu_features) {
    if (auto it = model.lexicons.find(std::string(kSentenceInitial));
        it != model.lexicons.end()) {
      sentence_initial.insert(it->second.begin(), it->second.end());
    }
    if (auto it = model.lexicons.find(std::string(kPunctFollows));
        it != model.lexicons.end()) {
      punct_follows.insert(it->second.begin(), it->second.end());
    }
  }

  crf::FeatureSequence x(lower.size());
  for (std::size_t t = 0; t < lower.size(); ++t) {
    x[t] = crf::extract_features(lower, t, tmpl);
    if (!tmpl.capu_features) continue;
    x[t].push_back("pos=" + position_bucket(t));
    x[t].push_back("rpos=" + position_bucket(lower.size() - 1 - t));
    if (sentence_initial.count(lower[t])) x[t].emplace_back("si0");
    if (t + 1 < lower.size() && sentence_initial.count(lower[t + 1])) {
      x[t].emplace_back("si+1");
    }
    if (punct_follows.count(lower[t])) x[t].emplace_back("pc0");
    if (t > 0 && punct_follows.count(lower[t - 1])) {
      x[t].emplace_back("pc-1");
    }
  }
  return x;
}

CapuTrainResult train_capu(std::span<const CapuSample> samples,
                           const crf::TrainConfig& config,
                           const crf::FeatureTemplate& templates) {
  if (samples.empty()) throw std::invalid_argument("no CaPu samples");

  // Lexicons come from the training labels themselves.
  std::map<std::string, std::size_t> totals, after_period, punct_after;
  for (const auto& s : samples) {
    if (s.lower_tokens.size() != s.labels.size() || s.labels.empty()) {
      throw std::invalid_argument("CaPu sample is empty or has mismatched "
                                  "lengths");
    }
    for (std::size_t i = 0; i < s.labels.size(); ++i) {
      const auto& w = s.lower_tokens[i];
      ++totals[w];
      if (i > 0 && s.labels[i - 1].punct == Punct::kPeriod) ++after_period[w];
      if (s.labels[i].punct != Punct::kNone) ++punct_after[w];
    }
  }

  crf::CrfModel proto(label_set(), templates);
  proto.task = kTask;
  if (templates.capu_features) {
    proto.lexicons[std::string(kSentenceInitial)] =
        frequent(after_period, totals);
    proto.lexicons[std::string(kPunctFollows)] = frequent(punct_after, totals);
  }

  std::vector<crf::TrainingExample> data;
  data.reserve(samples.size());
  for (const auto& s : samples) {
    crf::TrainingExample ex;
    ex.x = chunk_features(proto, s.lower_tokens);
    ex.y.reserve(s.labels.size());
    for (const auto& l : s.labels) ex.y.push_back(l.index());
    data.push_back(std::move(ex));
  }

  auto ds = crf::compile_dataset(label_set(), templates, data);
  ds.model.task = proto.task;
  ds.model.lexicons = proto.lexicons;
  auto result = crf::train(std::move(ds), config);
  return {CapuModel{std::move(result.model)},
          std::move(result.objective_trace)};
}

std::vector<Token> format_tokens(const CapuModel& model,
                                 std::span<const std::string> lower_tokens) {
  if (lower_tokens.empty()) {
    throw std::invalid_argument("format_tokens: empty input");
  }
  const auto decoded =
      crf::viterbi_decode(model.crf, chunk_features(model.crf, lower_tokens));
  std::vector<CapuLabel> labels;
  labels.reserve(decoded.labels.size());
  for (int l : decoded.labels) labels.push_back(CapuLabel::from_index(l));
  return decode_labels(lower_tokens, labels);
}

std::string to_json(const CapuModel& model) { return crf::to_json(model.crf); }

CapuModel capu_from_json(std::string_view json) {
  CapuModel m{crf::from_json(json)};
  if (m.crf.task != kTask) {
    throw DataError("model: expected task \"capu\", found \"" + m.crf.task +
                    "\"");
  }
  if (!(m.crf.labels() == label_set())) {
    throw DataError("model: CaPu label set mismatch");
  }
  return m;
}

}  // namespace speechner::capu
