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

#include "speechner/corpus_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "speechner/errors.hpp"
#include "speechner/unicode.hpp"

namespace speechner {

std::size_t NormalizationSummary::total() const {
  std::size_t n = 0;
  for (const auto& [ch, count] : stripped) n += count;
  return n;
}

std::string NormalizationSummary::report() const {
  std::string out;
  for (const auto& [ch, count] : stripped) {
    out += ch;
    out += '\t';
    out += std::to_string(count);
    out += '\n';
  }
  return out;
}

namespace {

struct CodePoint {
  char32_t cp;
  std::size_t offset;
};

void count_stripped(NormalizationSummary* summary, char32_t cp) {
  if (!summary) return;
  std::string s;
  unicode::append(s, cp);
  ++summary->stripped[s];
}

}  // namespace

std::vector<TokenSpan> tokenize(std::string_view text,
                                NormalizationSummary* summary) {
  std::vector<CodePoint> cps;
  {
    std::size_t off = 0;
    for (char32_t c : unicode::decode(text)) {
      cps.push_back({c, off});
      std::string tmp;
      unicode::append(tmp, c);
      off += tmp.size();
    }
    cps.push_back({U' ', off});
  }

  std::vector<TokenSpan> out;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (unicode::is_space(cps[i].cp)) {
      ++i;
      continue;
    }
    std::size_t b = i;
    std::size_t e = i;
    while (!unicode::is_space(cps[e].cp)) ++e;
    i = e;

    // Trailing punctuation run decides punct_after.
    std::size_t tail = e;
    while (tail > b && unicode::is_punct(cps[tail - 1].cp)) --tail;
    Punct mark = Punct::kNone;
    for (std::size_t k = tail; k < e; ++k) {
      if (cps[k].cp == U'.') mark = Punct::kPeriod;
      if (cps[k].cp == U',' && mark == Punct::kNone) mark = Punct::kComma;
    }
    const char32_t mark_cp = mark == Punct::kPeriod  ? U'.'
                             : mark == Punct::kComma ? U','
                                                     : 0;
    bool mark_consumed = false;
    for (std::size_t k = tail; k < e; ++k) {
      if (!mark_consumed && cps[k].cp == mark_cp) {
        mark_consumed = true;
        continue;
      }
      count_stripped(summary, cps[k].cp);
    }

    std::size_t head = b;
    while (head < tail && unicode::is_punct(cps[head].cp)) {
      count_stripped(summary, cps[head].cp);
      ++head;
    }

    if (head == tail) {
      // Free-standing punctuation: attach the mark to the previous word.
      if (mark != Punct::kNone) {
        if (!out.empty() && out.back().token.punct_after == Punct::kNone) {
          out.back().token.punct_after = mark;
        } else {
          count_stripped(summary, mark_cp);
        }
      }
      continue;
    }

    TokenSpan span;
    span.surface_begin = cps[head].offset;
    span.surface_end = cps[tail].offset;
    span.token = Token(
        std::string(text.substr(span.surface_begin,
                                span.surface_end - span.surface_begin)),
        mark);
    out.push_back(std::move(span));
  }
  return out;
}

std::vector<Token> normalize_text(std::string_view raw,
                                  NormalizationSummary* summary) {
  const std::string composed = unicode::nfc(raw);
  std::vector<Token> out;
  for (auto& span : tokenize(composed, summary)) {
    out.push_back(std::move(span.token));
  }
  return out;
}

// ---------------------------------------------------------------------------
// CoNLL

namespace {

bool has_space(std::string_view s) {
  for (char32_t c : unicode::decode(s)) {
    if (unicode::is_space(c)) return true;
  }
  return false;
}

struct DocBuilder {
  Document doc;
  Sentence sentence;
  TagSequence tags;
  std::optional<bool> tagged;

  void end_sentence() {
    if (sentence.empty()) return;
    doc.sentences.push_back(std::move(sentence));
    if (*tagged) doc.tags.push_back(std::move(tags));
    sentence.clear();
    tags.clear();
  }

  void end_document(std::vector<Document>& docs) {
    end_sentence();
    if (!doc.sentences.empty()) docs.push_back(std::move(doc));
    doc = Document{};
    tagged.reset();
  }
};

}  // namespace

std::vector<Document> read_conll(std::istream& in) {
  std::vector<Document> docs;
  DocBuilder b;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      b.end_sentence();
      continue;
    }
    std::vector<std::string_view> fields;
    {
      std::string_view rest = line;
      while (true) {
        const auto tab = rest.find('\t');
        fields.push_back(rest.substr(0, tab));
        if (tab == std::string_view::npos) break;
        rest.remove_prefix(tab + 1);
      }
    }
    if (fields.size() > 2) {
      throw ParseError(lineno, "expected \"token<TAB>tag\", found " +
                                   std::to_string(fields.size()) + " fields");
    }
    if (fields[0] == kDocStart) {
      b.end_document(docs);
      continue;
    }
    const std::string_view word = fields[0];
    if (word.empty() || has_space(word)) {
      throw ParseError(lineno, "malformed token field (empty or contains "
                               "whitespace; fields are TAB-separated)");
    }

    const bool tagged = fields.size() == 2;
    if (!b.tagged) b.tagged = tagged;
    if (*b.tagged != tagged) {
      throw ParseError(lineno, "document mixes tagged and untagged lines");
    }
    NerTag tag = NerTag::kO;
    if (tagged) {
      auto t = parse_ner_tag(fields[1]);
      if (!t) {
        throw ParseError(lineno, "unknown tag \"" + std::string(fields[1]) +
                                     "\"");
      }
      tag = *t;
    }

    Punct mark = Punct::kNone;
    std::string_view surface = word;
    if (surface.back() == '.' || surface.back() == ',') {
      mark = surface.back() == '.' ? Punct::kPeriod : Punct::kComma;
      surface.remove_suffix(1);
    }
    if (surface.empty()) {
      // A bare "." / "," line belongs to the previous word.
      if (b.sentence.empty() || b.sentence.back().punct_after != Punct::kNone ||
          tag != NerTag::kO) {
        throw ParseError(lineno, "punctuation line cannot attach to a word");
      }
      b.sentence.back().punct_after = mark;
      continue;
    }
    if (surface.back() == '.' || surface.back() == ',') {
      throw ParseError(lineno, "token ends in more than one punctuation mark");
    }
    b.sentence.emplace_back(std::string(surface), mark);
    if (tagged) b.tags.push_back(tag);
  }
  b.end_document(docs);
  return docs;
}

std::vector<Document> read_conll_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_conll(in);
}

void write_conll(std::ostream& out, std::span<const Document> docs) {
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const Document& doc = docs[d];
    if (doc.tagged() && doc.tags.size() != doc.sentences.size()) {
      throw DataError("document " + std::to_string(d) +
                      ": tag sequences do not match sentences");
    }
    if (d > 0) out << kDocStart << "\n\n";
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      const Sentence& sent = doc.sentences[s];
      if (doc.tagged() && doc.tags[s].size() != sent.size()) {
        throw DataError("document " + std::to_string(d) + ", sentence " +
                        std::to_string(s) +
                        ": tag count differs from token count");
      }
      for (std::size_t i = 0; i < sent.size(); ++i) {
        out << sent[i].text();
        if (doc.tagged()) out << '\t' << to_string(doc.tags[s][i]);
        out << '\n';
      }
      out << '\n';
    }
  }
}

std::string write_conll_string(std::span<const Document> docs) {
  std::ostringstream out;
  write_conll(out, docs);
  return out.str();
}

}  // namespace speechner
