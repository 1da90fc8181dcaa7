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

#include "speechner/ner.hpp"

#include <stdexcept>

#include "speechner/errors.hpp"

namespace speechner::ner {

namespace {

constexpr std::string_view kTask = "ner";

bool continues(NerTag prev, NerTag inside) {
  const auto t = entity_type(inside);
  return prev == begin_tag(*t) || prev == inside;
}

}  // namespace

const crf::LabelSet& label_set() {
  static const crf::LabelSet labels = [] {
    std::vector<std::string> names;
    for (int i = 0; i < kNumNerTags; ++i) {
      names.emplace_back(to_string(static_cast<NerTag>(i)));
    }
    return crf::LabelSet(std::move(names));
  }();
  return labels;
}

const crf::Constraints& bio_constraints() {
  static const crf::Constraints c = [] {
    crf::Constraints c;
    c.allowed_transition.assign(kNumNerTags * kNumNerTags, true);
    c.allowed_start.assign(kNumNerTags, true);
    for (int j = 0; j < kNumNerTags; ++j) {
      const auto cur = static_cast<NerTag>(j);
      if (!is_inside(cur)) continue;
      c.allowed_start[j] = false;
      for (int i = 0; i < kNumNerTags; ++i) {
        c.allowed_transition[i * kNumNerTags + j] =
            continues(static_cast<NerTag>(i), cur);
      }
    }
    return c;
  }();
  return c;
}

std::vector<std::size_t> validate_bio(std::span<const NerTag> tags) {
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (!is_inside(tags[i])) continue;
    if (i == 0 || !continues(tags[i - 1], tags[i])) bad.push_back(i);
  }
  return bad;
}

TagSequence repair_bio(std::span<const NerTag> tags) {
  TagSequence out(tags.begin(), tags.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (is_inside(out[i]) && (i == 0 || !continues(out[i - 1], out[i]))) {
      out[i] = begin_tag(*entity_type(out[i]));
    }
  }
  return out;
}

std::vector<Entity> decode_entities(std::span<const NerTag> tags) {
  const TagSequence fixed = repair_bio(tags);
  std::vector<Entity> out;
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    if (!is_begin(fixed[i])) continue;
    const EntityType type = *entity_type(fixed[i]);
    std::size_t e = i + 1;
    while (e < fixed.size() && fixed[e] == inside_tag(type)) ++e;
    out.push_back({type, i, e});
    i = e - 1;
  }
  return out;
}

TagSequence render_entities(std::span<const Entity> entities, std::size_t n) {
  TagSequence tags(n, NerTag::kO);
  for (const auto& e : entities) {
    if (e.start >= e.end || e.end > n) {
      throw std::invalid_argument("entity span out of range");
    }
    for (std::size_t i = e.start; i < e.end; ++i) {
      if (tags[i] != NerTag::kO) {
        throw std::invalid_argument("overlapping entities");
      }
      tags[i] = i == e.start ? begin_tag(e.type) : inside_tag(e.type);
    }
  }
  return tags;
}

crf::FeatureTemplate default_templates(bool formatting) {
  crf::FeatureTemplate t;
  t.window = 2;
  t.formatting_features = formatting;
  return t;
}

crf::FeatureSequence sentence_features(const crf::FeatureTemplate& templates,
                                       std::span<const Token> tokens) {
  const std::vector<Token> owned(tokens.begin(), tokens.end());
  const auto lower = strip_formatting(owned);
  const std::size_t n = tokens.size();
  auto case_at = [&](std::ptrdiff_t i) -> std::string {
    if (i < 0) return std::string(crf::kBos);
    if (i >= static_cast<std::ptrdiff_t>(n)) return std::string(crf::kEos);
    return std::string(to_string(tokens[i].case_class));
  };

  crf::FeatureSequence x(n);
  for (std::size_t t = 0; t < n; ++t) {
    x[t] = crf::extract_features(lower, t, templates);
    if (!templates.formatting_features) continue;
    const auto i = static_cast<std::ptrdiff_t>(t);
    const std::string c0 = case_at(i);
    x[t].push_back("W0=" + tokens[t].surface);
    x[t].push_back("Sh0=" + crf::word_shape(tokens[t].surface));
    x[t].push_back("c-1=" + case_at(i - 1));
    x[t].push_back("c0=" + c0);
    x[t].push_back("c+1=" + case_at(i + 1));
    x[t].push_back("c-1|c0|c+1=" + case_at(i - 1) + "|" + c0 + "|" +
                   case_at(i + 1));
    x[t].push_back("c0|w-1=" + c0 + "|" +
                   (t > 0 ? lower[t - 1] : std::string(crf::kBos)));
    x[t].push_back("m-1=" + (t > 0 ? std::string(to_string(
                                         tokens[t - 1].punct_after))
                                   : std::string(crf::kBos)));
    x[t].push_back("m0=" + std::string(to_string(tokens[t].punct_after)));
  }
  return x;
}

NerTrainResult train_ner(std::span<const Document> docs,
                         const crf::TrainConfig& config,
                         const crf::FeatureTemplate& templates) {
  std::vector<crf::TrainingExample> data;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const auto& doc = docs[d];
    if (!doc.tagged()) continue;
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      const auto& tags = doc.tags.at(s);
      if (tags.size() != doc.sentences[s].size()) {
        throw DataError("document " + std::to_string(d) + ", sentence " +
                        std::to_string(s) + ": tag/token count mismatch");
      }
      const auto bad = validate_bio(tags);
      if (!bad.empty()) {
        throw DataError("document " + std::to_string(d) + ", sentence " +
                        std::to_string(s) + ": invalid BIO at token " +
                        std::to_string(bad.front()));
      }
      if (tags.empty()) continue;
      crf::TrainingExample ex;
      ex.x = sentence_features(templates, doc.sentences[s]);
      for (NerTag t : tags) ex.y.push_back(static_cast<int>(t));
      data.push_back(std::move(ex));
    }
  }
  if (data.empty()) throw std::invalid_argument("no tagged sentences");
  auto ds = crf::compile_dataset(label_set(), templates, data);
  ds.model.task = kTask;
  auto result = crf::train(std::move(ds), config);
  return {NerModel{std::move(result.model)},
          std::move(result.objective_trace)};
}

TagSequence tag(const NerModel& model, std::span<const Token> tokens) {
  if (tokens.empty()) throw std::invalid_argument("tag: empty sentence");
  const auto d = crf::viterbi_decode(
      model.crf, sentence_features(model.crf.templates(), tokens),
      &bio_constraints());
  TagSequence out;
  out.reserve(d.labels.size());
  for (int l : d.labels) out.push_back(static_cast<NerTag>(l));
  return out;
}

TagSequence tag_stream(const NerModel& model, std::span<const Token> tokens) {
  TagSequence out;
  out.reserve(tokens.size());
  std::size_t start = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].punct_after != Punct::kPeriod && i + 1 != tokens.size()) {
      continue;
    }
    const auto part = tag(model, tokens.subspan(start, i + 1 - start));
    out.insert(out.end(), part.begin(), part.end());
    start = i + 1;
  }
  return out;
}

std::string to_json(const NerModel& model) { return crf::to_json(model.crf); }

NerModel ner_from_json(std::string_view json) {
  NerModel m{crf::from_json(json)};
  if (m.crf.task != kTask) {
    throw DataError("model: expected task \"ner\", found \"" + m.crf.task +
                    "\"");
  }
  if (!(m.crf.labels() == label_set())) {
    throw DataError("model: NER label set mismatch");
  }
  return m;
}

}  // namespace speechner::ner
