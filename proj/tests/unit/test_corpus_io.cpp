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

#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "speechner/corpus_io.hpp"
#include "speechner/errors.hpp"
#include "speechner/unicode.hpp"

using namespace speechner;

namespace {

Token tok(std::string s, Punct p = Punct::kNone) {
  return Token(std::move(s), p);
}

std::vector<NerTag> flat_tags(const Document& d) {
  std::vector<NerTag> out;
  for (const auto& t : d.tags) out.insert(out.end(), t.begin(), t.end());
  return out;
}

// Random nested markup plus the expected tags, computed by a depth-tracking
// scan that keeps only depth-1 entity spans.
struct XmlCase {
  std::string xml;
  std::vector<NerTag> tags;
};

XmlCase random_xml(Rng& rng) {
  static const char* kTypes[] = {"PER", "ORG", "LOC"};
  static const char* kWords[] = {"an", "bình", "Hà", "Nội", "sở", "&amp;x"};
  std::string xml;
  // Each word records the outermost entity open when it was written.
  struct Word {
    int owner;  // -1 outside, else entity id
    int type;
  };
  std::vector<Word> words;
  std::vector<std::pair<int, int>> stack;  // (entity id, type)
  int next_id = 0;
  const int steps = static_cast<int>(rng.uniform_int(1, 25));
  for (int i = 0; i < steps; ++i) {
    const auto r = rng.uniform_int(0, 9);
    if (r < 2 && stack.size() < 3) {
      const int type = static_cast<int>(rng.uniform_int(0, 2));
      xml += std::string("<ENAMEX TYPE=\"") + kTypes[type] + "\">";
      stack.emplace_back(next_id++, type);
    } else if (r < 4 && !stack.empty()) {
      xml += "</ENAMEX>";
      stack.pop_back();
    } else if (r == 4) {
      xml += "<p>";
      xml += kWords[rng.uniform_int(0, 5)];
      xml += "</p> ";
      words.push_back(stack.empty() ? Word{-1, 0}
                                    : Word{stack[0].first, stack[0].second});
    } else {
      xml += kWords[rng.uniform_int(0, 5)];
      xml += ' ';
      words.push_back(stack.empty() ? Word{-1, 0}
                                    : Word{stack[0].first, stack[0].second});
    }
  }
  while (!stack.empty()) {
    xml += "</ENAMEX>";
    stack.pop_back();
  }
  XmlCase c{xml, {}};
  int prev_owner = -1;
  for (const auto& w : words) {
    if (w.owner < 0) {
      c.tags.push_back(NerTag::kO);
    } else {
      const auto type = static_cast<EntityType>(w.type);
      c.tags.push_back(w.owner == prev_owner ? inside_tag(type)
                                             : begin_tag(type));
    }
    prev_owner = w.owner;
  }
  return c;
}

}  // namespace

TEST_SUITE("corpus_io") {

TEST_CASE("case classes") {
  CHECK(classify_case("chính") == CaseClass::kLower);
  CHECK(classify_case("Chính") == CaseClass::kCapFirst);
  CHECK(classify_case("A") == CaseClass::kCapFirst);
  CHECK(classify_case("FPT") == CaseClass::kAllCaps);
  CHECK(classify_case("iPhone") == CaseClass::kMixed);
  CHECK(classify_case("McDonald") == CaseClass::kMixed);
  CHECK(classify_case("2020") == CaseClass::kLower);
  CHECK(classify_case("ĐẠI") == CaseClass::kAllCaps);
}

TEST_CASE("normalize_text") {
  const auto t = normalize_text("Chính phủ Việt Nam.");
  REQUIRE(t.size() == 4);
  CHECK(t[0] == Token("Chính", CaseClass::kCapFirst, Punct::kNone));
  CHECK(t[1] == Token("phủ", CaseClass::kLower, Punct::kNone));
  CHECK(t[2] == Token("Việt", CaseClass::kCapFirst, Punct::kNone));
  CHECK(t[3] == Token("Nam", CaseClass::kCapFirst, Punct::kPeriod));
  CHECK(normalize_text("").empty());
  CHECK(normalize_text("a, b") ==
        std::vector<Token>{tok("a", Punct::kComma), tok("b")});
}

TEST_CASE("normalize_text strips and counts other punctuation") {
  NormalizationSummary sum;
  const auto t = normalize_text("\"Xin chào!\" anh ( ba ) , đi . e-mail", &sum);
  REQUIRE(t.size() == 6);
  CHECK(t[0].surface == "Xin");
  CHECK(t[1].surface == "chào");
  CHECK(t[1].punct_after == Punct::kNone);
  CHECK(t[2].surface == "anh");
  CHECK(t[3].surface == "ba");
  CHECK(t[3].punct_after == Punct::kComma);
  CHECK(t[4].surface == "đi");
  CHECK(t[4].punct_after == Punct::kPeriod);
  CHECK(t[5].surface == "e-mail");
  CHECK(sum.stripped.at("\"") == 2);
  CHECK(sum.stripped.at("!") == 1);
  CHECK(sum.stripped.at("(") == 1);
  CHECK(sum.total() == 5);
  CHECK(sum.report().find("!\t1\n") != std::string::npos);
}

TEST_CASE("normalize_text composes to NFC") {
  // "Việt" with combining marks.
  const std::string decomposed = "Vi\x65\xcc\xa3\xcc\x82t";
  const auto t = normalize_text(decomposed);
  REQUIRE(t.size() == 1);
  CHECK(t[0].surface == "Việt");
}

TEST_CASE("strip_formatting") {
  CHECK(strip_formatting({tok("Việt", Punct::kPeriod)}) ==
        std::vector<std::string>{"việt"});
  CHECK(strip_formatting({}).empty());
  CHECK(strip_formatting(normalize_text("Hà Nội, xin chào.")) ==
        std::vector<std::string>{"hà", "nội", "xin", "chào"});
}

TEST_CASE("read a single CoNLL record") {
  const auto docs = read_conll_string("Nam\tB-PER\n\n");
  REQUIRE(docs.size() == 1);
  REQUIRE(docs[0].sentences.size() == 1);
  CHECK(docs[0].sentences[0] == Sentence{tok("Nam")});
  CHECK(docs[0].tags[0] == TagSequence{NerTag::kBPer});
}

TEST_CASE("CoNLL errors name the line") {
  try {
    read_conll_string("x y z\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
  CHECK_THROWS_AS(read_conll_string("a\tO\nb\tB-XYZ\n"), ParseError);
  try {
    read_conll_string("a\tO\nb\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("CoNLL keeps marks, documents and untagged input") {
  const std::string text =
      "Ông\tO\nNam,\tB-PER\nđến\tO\nHà\tB-LOC\nNội.\tI-LOC\n\n"
      "-DOCSTART-\n\nFPT\tB-ORG\n\n";
  const auto docs = read_conll_string(text);
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].sentences[0][1] == tok("Nam", Punct::kComma));
  CHECK(docs[0].sentences[0][4] == tok("Nội", Punct::kPeriod));
  CHECK(docs[1].sentences[0][0].case_class == CaseClass::kAllCaps);
  CHECK(write_conll_string(docs) == text);

  const auto plain = read_conll_string("xin\nchào.\n\n");
  REQUIRE(plain.size() == 1);
  CHECK_FALSE(plain[0].tagged());
  CHECK(write_conll_string(plain) == "xin\nchào.\n\n");
}

TEST_CASE("CoNLL round trip over random documents") {
  Rng rng(21);
  const std::vector<std::string> words{"Hà", "nội", "FPT", "ông", "Nam",
                                       "2020", "iPhone", "sở"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Document> docs(static_cast<std::size_t>(rng.uniform_int(1, 3)));
    const bool tagged = rng.uniform01() < 0.5;
    for (auto& d : docs) {
      const auto ns = rng.uniform_int(1, 3);
      for (int s = 0; s < ns; ++s) {
        Sentence sent;
        TagSequence tags;
        const auto n = rng.uniform_int(1, 6);
        for (int i = 0; i < n; ++i) {
          sent.push_back(tok(words[rng.uniform_int(0, 7)],
                             static_cast<Punct>(rng.uniform_int(0, 2))));
          tags.push_back(static_cast<NerTag>(rng.uniform_int(0, 6)));
        }
        d.sentences.push_back(sent);
        if (tagged) d.tags.push_back(tags);
      }
    }
    const auto text = write_conll_string(docs);
    const auto back = read_conll_string(text);
    CHECK(back == docs);
    CHECK(write_conll_string(back) == text);
  }
}

TEST_CASE("write_conll rejects tag count mismatches") {
  Document d;
  d.sentences = {{tok("a"), tok("b")}};
  d.tags = {{NerTag::kO}};
  CHECK_THROWS_AS(write_conll_string(std::vector<Document>{d}), DataError);
}

TEST_CASE("nested XML keeps only outermost entities") {
  auto one = [](std::string_view xml) {
    const auto docs = convert_nested_xml(xml);
    REQUIRE(docs.size() == 1);
    return flat_tags(docs[0]);
  };
  CHECK(one("<ENAMEX TYPE=\"LOC\">Hà Nội</ENAMEX> đẹp") ==
        TagSequence{NerTag::kBLoc, NerTag::kILoc, NerTag::kO});
  CHECK(one("<ENAMEX TYPE=\"ORG\">Đại học <ENAMEX TYPE=\"LOC\">Hà "
            "Nội</ENAMEX></ENAMEX>") ==
        TagSequence{NerTag::kBOrg, NerTag::kIOrg, NerTag::kIOrg,
                    NerTag::kIOrg});
  CHECK(one("không có gì cả") == TagSequence(4, NerTag::kO));
  CHECK(one("<ENAMEX TYPE=\"PER\">An</ENAMEX> <ENAMEX TYPE=\"PER\">Bình"
            "</ENAMEX>") == TagSequence{NerTag::kBPer, NerTag::kBPer});
}

TEST_CASE("nested XML splits sentences at lines and decodes references") {
  const auto docs =
      convert_nested_xml("<doc>Ông <ENAMEX TYPE=\"PER\">Nam</ENAMEX> "
                         "đến.\nAT&amp;T &lt;x&gt;</doc>");
  REQUIRE(docs[0].sentences.size() == 2);
  CHECK(docs[0].sentences[0].back() == tok("đến", Punct::kPeriod));
  CHECK(docs[0].sentences[1][0].surface == "AT&T");
  CHECK(docs[0].sentences[1][1].surface == "<x>");
}

TEST_CASE("nested XML errors") {
  CHECK_THROWS_AS(convert_nested_xml("<ENAMEX TYPE=\"PER\">a"), ParseError);
  CHECK_THROWS_AS(convert_nested_xml("a</ENAMEX>"), ParseError);
  CHECK_THROWS_AS(convert_nested_xml("<ENAMEX TYPE=\"DATE\">a</ENAMEX>"),
                  ParseError);
  CHECK_THROWS_AS(convert_nested_xml("<p>a</q>"), ParseError);
}

TEST_CASE("nested XML matches the depth-tracking oracle") {
  Rng rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    const auto c = random_xml(rng);
    const auto docs = convert_nested_xml(c.xml);
    if (c.tags.empty()) {
      CHECK(docs.empty());
      continue;
    }
    REQUIRE(docs.size() == 1);
    CHECK(flat_tags(docs[0]) == c.tags);
  }
}

TEST_CASE("segmenter lengths replay the seeded generator") {
  std::vector<Token> stream;
  for (int i = 0; i < 500; ++i) stream.push_back(tok("w" + std::to_string(i)));
  for (std::uint64_t seed : {1ULL, 2ULL, 77ULL}) {
    const auto samples = segment_corpus(stream, seed);
    Rng replay(seed);
    std::size_t pos = 0;
    for (const auto& s : samples) {
      const auto want =
          static_cast<std::size_t>(replay.uniform_int(kMinSegment, kMaxSegment));
      if (pos + want <= stream.size()) {
        CHECK(s.lower_tokens.size() == want);
      } else {
        CHECK(s.lower_tokens.size() == stream.size() - pos);
      }
      CHECK(s.lower_tokens.front() == "w" + std::to_string(pos));
      pos += s.lower_tokens.size();
    }
    CHECK(stream.size() - pos < kMinSegment + kMaxSegment);
    CHECK(segment_corpus(stream, seed) == samples);
  }
}

TEST_CASE("segmenter on a 64-token stream") {
  std::vector<Token> stream(64, tok("x"));
  // Find a seed whose first two draws are 10 and 54.
  std::uint64_t seed = 0;
  for (;; ++seed) {
    Rng r(seed);
    if (r.uniform_int(4, 60) == 10 && r.uniform_int(4, 60) == 54) break;
  }
  const auto samples = segment_corpus(stream, seed);
  REQUIRE(samples.size() == 2);
  CHECK(samples[0].lower_tokens.size() == 10);
  CHECK(samples[1].lower_tokens.size() == 54);
  CHECK(segment_corpus(std::vector<Token>(3, tok("x")), 1).empty());
}

}  // TEST_SUITE
