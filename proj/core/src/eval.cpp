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

#include "speechner/eval.hpp"

#include <algorithm>
#include <stdexcept>

#include "speechner/ner.hpp"
#include "speechner/unicode.hpp"

namespace speechner::eval {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0
                  : static_cast<double>(num) / static_cast<double>(den);
}

std::vector<std::string> lowered(std::span<const std::string> words) {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(unicode::to_lower(w));
  return out;
}

}  // namespace

char to_char(OpKind k) {
  switch (k) {
    case OpKind::kT: return 'T';
    case OpKind::kS: return 'S';
    case OpKind::kD: return 'D';
    case OpKind::kI: return 'I';
  }
  return '?';
}

std::vector<AlignmentOp> align(std::span<const std::string> ref_in,
                               std::span<const std::string> hyp_in) {
  const auto ref = lowered(ref_in);
  const auto hyp = lowered(hyp_in);
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  const std::size_t w = m + 1;
  std::vector<std::uint32_t> d((n + 1) * w);
  for (std::size_t j = 0; j <= m; ++j) d[j] = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    d[i * w] = static_cast<std::uint32_t>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      const std::uint32_t diag =
          d[(i - 1) * w + j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      const std::uint32_t up = d[(i - 1) * w + j] + 1;
      const std::uint32_t left = d[i * w + j - 1] + 1;
      d[i * w + j] = std::min({diag, up, left});
    }
  }

  std::vector<AlignmentOp> ops;
  ops.reserve(n + m);
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const std::uint32_t cur = d[i * w + j];
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      const std::uint32_t diag = d[(i - 1) * w + j - 1];
      if (same && diag == cur) {
        ops.push_back({OpKind::kT, i - 1, j - 1});
        --i, --j;
        continue;
      }
      if (!same && diag + 1 == cur) {
        ops.push_back({OpKind::kS, i - 1, j - 1});
        --i, --j;
        continue;
      }
    }
    if (i > 0 && d[(i - 1) * w + j] + 1 == cur) {
      ops.push_back({OpKind::kD, i - 1, std::nullopt});
      --i;
      continue;
    }
    ops.push_back({OpKind::kI, std::nullopt, j - 1});
    --j;
  }
  std::reverse(ops.begin(), ops.end());
  return ops;
}

std::size_t edit_distance(std::span<const std::string> ref_in,
                          std::span<const std::string> hyp_in) {
  auto a = lowered(ref_in);
  auto b = lowered(hyp_in);
  if (b.size() > a.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({up + 1, row[j - 1] + 1,
                         diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

TagSequence project_tags(std::span<const NerTag> ref_tags,
                         std::span<const NerTag> hyp_tags,
                         std::span<const AlignmentOp> alignment) {
  TagSequence projected;
  projected.reserve(ref_tags.size());
  std::size_t next_ref = 0;
  std::size_t next_hyp = 0;
  auto fail = [] {
    throw std::invalid_argument("alignment does not fit the tag sequences");
  };
  for (const auto& op : alignment) {
    const bool has_ref = op.kind != OpKind::kI;
    const bool has_hyp = op.kind != OpKind::kD;
    if (has_ref != op.ref_index.has_value() ||
        has_hyp != op.hyp_index.has_value()) {
      fail();
    }
    if (has_ref && (*op.ref_index != next_ref++ || *op.ref_index >= ref_tags.size())) {
      fail();
    }
    if (has_hyp && (*op.hyp_index != next_hyp++ || *op.hyp_index >= hyp_tags.size())) {
      fail();
    }
    switch (op.kind) {
      case OpKind::kT: projected.push_back(hyp_tags[*op.hyp_index]); break;
      case OpKind::kS:
      case OpKind::kD: projected.push_back(NerTag::kO); break;
      case OpKind::kI: break;
    }
  }
  if (next_ref != ref_tags.size() || next_hyp != hyp_tags.size()) fail();
  return ner::repair_bio(projected);
}

double Prf::precision() const { return ratio(correct, predicted); }
double Prf::recall() const { return ratio(correct, gold); }
double Prf::f1() const {
  const double p = precision();
  const double r = recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

Prf& Prf::operator+=(const Prf& o) {
  correct += o.correct;
  predicted += o.predicted;
  gold += o.gold;
  return *this;
}

EntityScores& EntityScores::operator+=(const EntityScores& o) {
  for (std::size_t i = 0; i < per_type.size(); ++i) per_type[i] += o.per_type[i];
  micro += o.micro;
  return *this;
}

EntityScores entity_prf(std::span<const NerTag> ref_tags,
                        std::span<const NerTag> hyp_tags) {
  if (ref_tags.size() != hyp_tags.size()) {
    throw std::invalid_argument("entity_prf: tag sequences differ in length");
  }
  const auto gold = ner::decode_entities(ref_tags);
  const auto pred = ner::decode_entities(hyp_tags);
  EntityScores s;
  for (const auto& e : gold) ++s.per_type[static_cast<int>(e.type)].gold;
  for (const auto& e : pred) {
    auto& prf = s.per_type[static_cast<int>(e.type)];
    ++prf.predicted;
    if (std::find(gold.begin(), gold.end(), e) != gold.end()) ++prf.correct;
  }
  for (const auto& p : s.per_type) s.micro += p;
  return s;
}

double EditCounts::wer() const { return ratio(errors(), ref_words); }

EditCounts& EditCounts::operator+=(const EditCounts& o) {
  ref_words += o.ref_words;
  hyp_words += o.hyp_words;
  correct += o.correct;
  substitutions += o.substitutions;
  deletions += o.deletions;
  insertions += o.insertions;
  return *this;
}

EditCounts count_edits(std::span<const AlignmentOp> alignment) {
  EditCounts c;
  for (const auto& op : alignment) {
    switch (op.kind) {
      case OpKind::kT: ++c.correct; ++c.ref_words; ++c.hyp_words; break;
      case OpKind::kS: ++c.substitutions; ++c.ref_words; ++c.hyp_words; break;
      case OpKind::kD: ++c.deletions; ++c.ref_words; break;
      case OpKind::kI: ++c.insertions; ++c.hyp_words; break;
    }
  }
  return c;
}

double wer(std::span<const std::string> ref, std::span<const std::string> hyp) {
  if (ref.empty()) throw std::invalid_argument("wer: empty reference");
  return static_cast<double>(edit_distance(ref, hyp)) /
         static_cast<double>(ref.size());
}

double ClassAccuracy::accuracy() const {
  return total == 0 ? 1.0 : ratio(correct, total);
}

CapuAccuracy capu_confusion(std::span<const Token> ref,
                            std::span<const Token> hyp) {
  if (ref.size() != hyp.size()) {
    throw std::invalid_argument("capu_confusion: length mismatch");
  }
  CapuAccuracy acc;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (unicode::to_lower(ref[i].surface) != unicode::to_lower(hyp[i].surface)) {
      throw std::invalid_argument("capu_confusion: word mismatch at " +
                                  std::to_string(i));
    }
    if (ref[i].case_class != CaseClass::kLower) {
      ++acc.capitalization.total;
      if (hyp[i].case_class == ref[i].case_class) ++acc.capitalization.correct;
    }
    ClassAccuracy* cls = ref[i].punct_after == Punct::kPeriod  ? &acc.period
                         : ref[i].punct_after == Punct::kComma ? &acc.comma
                                                               : &acc.blank;
    ++cls->total;
    if (hyp[i].punct_after == ref[i].punct_after) ++cls->correct;
  }
  return acc;
}

EvalReport evaluate_pipeline(
    std::span<const Document> gold,
    std::span<const std::vector<std::string>> hyp_words,
    std::span<const TagSequence> hyp_tags) {
  if (gold.size() != hyp_words.size() || gold.size() != hyp_tags.size()) {
    throw std::invalid_argument("evaluate_pipeline: document count mismatch");
  }
  EvalReport report;
  for (std::size_t d = 0; d < gold.size(); ++d) {
    const Document& doc = gold[d];
    if (!doc.tagged()) {
      throw std::invalid_argument("evaluate_pipeline: gold document " +
                                  std::to_string(d) + " is untagged");
    }
    if (hyp_words[d].size() != hyp_tags[d].size()) {
      throw std::invalid_argument("evaluate_pipeline: document " +
                                  std::to_string(d) +
                                  ": hypothesis words and tags differ in "
                                  "length");
    }
    std::vector<std::string> ref_words;
    TagSequence ref_tags;
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      for (const auto& t : doc.sentences[s]) ref_words.push_back(t.surface);
      ref_tags.insert(ref_tags.end(), doc.tags.at(s).begin(),
                      doc.tags.at(s).end());
    }
    if (ref_tags.size() != ref_words.size()) {
      throw std::invalid_argument("evaluate_pipeline: gold document " +
                                  std::to_string(d) +
                                  ": tag/token count mismatch");
    }
    const auto ops = align(ref_words, hyp_words[d]);
    const auto projected = project_tags(ref_tags, hyp_tags[d], ops);
    DocumentScore ds;
    ds.index = d;
    ds.entities = entity_prf(ref_tags, projected);
    ds.edits = count_edits(ops);
    report.entities += ds.entities;
    report.edits += ds.edits;
    report.documents.push_back(std::move(ds));
  }
  return report;
}

}  // namespace speechner::eval
