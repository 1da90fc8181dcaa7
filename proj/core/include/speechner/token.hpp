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

#ifndef SPEECHNER_TOKEN_HPP_
#define SPEECHNER_TOKEN_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace speechner {

enum class CaseClass : std::uint8_t { kLower, kCapFirst, kAllCaps, kMixed };
enum class Punct : std::uint8_t { kNone, kComma, kPeriod };

std::string_view to_string(CaseClass c);
std::string_view to_string(Punct p);

/// Letter-based case class of a word. Characters without case (digits,
/// symbols) are ignored; a word with no uppercase letters is kLower.
///   kAllCaps  - at least two letters, all uppercase
///   kCapFirst - first letter uppercase, remaining letters lowercase
CaseClass classify_case(std::string_view surface);

/// The mark character for a punctuation class ("" for kNone).
std::string_view punct_mark(Punct p);

/// One word of running text. Trailing "." / "," live in punct_after, never in
/// surface.
struct Token {
  std::string surface;
  CaseClass case_class = CaseClass::kLower;
  Punct punct_after = Punct::kNone;

  Token() = default;
  /// Builds a token from a bare surface, deriving case_class.
  explicit Token(std::string s, Punct p = Punct::kNone);
  Token(std::string s, CaseClass c, Punct p)
      : surface(std::move(s)), case_class(c), punct_after(p) {}

  /// surface followed by its punctuation mark.
  std::string text() const;

  friend bool operator==(const Token&, const Token&) = default;
};

using Sentence = std::vector<Token>;

/// B-/I- tags over the three first-level entity types plus O. The numeric
/// order is the NER label order (O first).
enum class NerTag : std::uint8_t {
  kO = 0,
  kBPer,
  kIPer,
  kBOrg,
  kIOrg,
  kBLoc,
  kILoc,
};
inline constexpr int kNumNerTags = 7;

enum class EntityType : std::uint8_t { kPer, kOrg, kLoc };

std::string_view to_string(NerTag t);
std::string_view to_string(EntityType t);
std::optional<NerTag> parse_ner_tag(std::string_view s);
std::optional<EntityType> parse_entity_type(std::string_view s);

bool is_begin(NerTag t);
bool is_inside(NerTag t);
/// Entity type of a B-/I- tag; nullopt for O.
std::optional<EntityType> entity_type(NerTag t);
NerTag begin_tag(EntityType t);
NerTag inside_tag(EntityType t);

using TagSequence = std::vector<NerTag>;

struct Document {
  std::vector<Sentence> sentences;
  /// Either empty (untagged) or one TagSequence per sentence.
  std::vector<TagSequence> tags;

  bool tagged() const { return !tags.empty(); }

  friend bool operator==(const Document&, const Document&) = default;
};

/// Lowercased surfaces; punctuation dropped.
std::vector<std::string> strip_formatting(const std::vector<Token>& tokens);

/// Lowercase, unpunctuated copy of the tokens.
std::vector<Token> uncase(const std::vector<Token>& tokens);

/// Space-joined surface text with punctuation marks attached.
std::string join_text(const std::vector<Token>& tokens);

}  // namespace speechner

#endif  // SPEECHNER_TOKEN_HPP_
