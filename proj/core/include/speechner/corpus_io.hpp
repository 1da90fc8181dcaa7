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

#ifndef SPEECHNER_CORPUS_IO_HPP_
#define SPEECHNER_CORPUS_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "speechner/capu.hpp"
#include "speechner/rng.hpp"
#include "speechner/token.hpp"

namespace speechner {

/// Characters removed by normalize_text, keyed by the character itself.
struct NormalizationSummary {
  std::map<std::string, std::size_t> stripped;

  std::size_t total() const;
  /// One "<char>\t<count>" line per stripped character, sorted by character.
  std::string report() const;
};

/// NFC-composes raw text and splits it on whitespace. A trailing "." or ","
/// becomes the token's punct_after; other leading/trailing punctuation is
/// stripped and counted in summary. Interior characters are kept. A
/// free-standing "." or "," attaches to the preceding token.
std::vector<Token> normalize_text(std::string_view raw,
                                  NormalizationSummary* summary = nullptr);

/// A token together with the byte range of its surface inside the
/// (already NFC) text it was cut from.
struct TokenSpan {
  Token token;
  std::size_t surface_begin = 0;
  std::size_t surface_end = 0;
};

/// normalize_text without the NFC step, keeping byte offsets.
std::vector<TokenSpan> tokenize(std::string_view nfc_text,
                                NormalizationSummary* summary = nullptr);

// ---------------------------------------------------------------------------
// CoNLL: one "token<TAB>tag" (or bare "token") line per word, a blank line
// after each sentence, and "-DOCSTART-" before every document but the first.
// The token column carries the surface with its trailing mark attached.

inline constexpr std::string_view kDocStart = "-DOCSTART-";

/// Throws ParseError naming the offending line on malformed lines, unknown
/// tags, or a mix of tagged and untagged lines within one document.
std::vector<Document> read_conll(std::istream& in);
std::vector<Document> read_conll_string(std::string_view text);

/// Throws DataError when a document's tag and token counts disagree.
void write_conll(std::ostream& out, std::span<const Document> docs);
std::string write_conll_string(std::span<const Document> docs);

/// Converts ENAMEX-style markup (TYPE in PER/ORG/LOC) to a tagged document.
/// Only outermost entity elements produce tags; nested entities are absorbed
/// into the enclosing span. Each line of character data outside an entity
/// is one sentence. Other elements are transparent but must balance.
/// Throws ParseError on unbalanced markup or an unknown TYPE.
std::vector<Document> convert_nested_xml(std::string_view xml);

// ---------------------------------------------------------------------------
// CaPu training segments

inline constexpr std::size_t kMinSegment = 4;
inline constexpr std::size_t kMaxSegment = 60;

/// Cuts a token stream into consecutive segments whose lengths are drawn
/// uniformly from [4, 60]. A trailing fragment shorter than 4 is dropped.
class CorpusSegmenter {
 public:
  explicit CorpusSegmenter(std::uint64_t seed);

  /// Returns a finished sample when tok completes the current segment.
  std::optional<capu::CapuSample> push(const Token& tok);
  /// Flushes the last fragment if it holds at least kMinSegment tokens.
  std::optional<capu::CapuSample> finish();

 private:
  Rng rng_;
  std::size_t target_;
  std::vector<Token> pending_;
};

std::vector<capu::CapuSample> segment_corpus(std::span<const Token> tokens,
                                             std::uint64_t seed);

}  // namespace speechner

#endif  // SPEECHNER_CORPUS_IO_HPP_
