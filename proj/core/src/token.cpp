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

#include "speechner/token.hpp"

#include "speechner/unicode.hpp"

namespace speechner {

std::string_view to_string(CaseClass c) {
  switch (c) {
    case CaseClass::kLower: return "LOWER";
    case CaseClass::kCapFirst: return "CAP_FIRST";
    case CaseClass::kAllCaps: return "ALL_CAPS";
    case CaseClass::kMixed: return "MIXED";
  }
  return "?";
}

std::string_view to_string(Punct p) {
  switch (p) {
    case Punct::kNone: return "NONE";
    case Punct::kComma: return "COMMA";
    case Punct::kPeriod: return "PERIOD";
  }
  return "?";
}

std::string_view punct_mark(Punct p) {
  switch (p) {
    case Punct::kComma: return ",";
    case Punct::kPeriod: return ".";
    case Punct::kNone: break;
  }
  return "";
}

CaseClass classify_case(std::string_view surface) {
  int letters = 0;
  int upper = 0;
  bool first_upper = false;
  bool rest_lower = true;
  for (char32_t c : unicode::decode(surface)) {
    if (!unicode::is_letter(c)) continue;
    const bool up = unicode::is_upper(c);
    if (letters == 0) {
      first_upper = up;
    } else if (up) {
      rest_lower = false;
    }
    upper += up ? 1 : 0;
    ++letters;
  }
  if (upper == 0) return CaseClass::kLower;
  if (letters >= 2 && upper == letters) return CaseClass::kAllCaps;
  if (first_upper && rest_lower) return CaseClass::kCapFirst;
  return CaseClass::kMixed;
}

Token::Token(std::string s, Punct p)
    : surface(std::move(s)), case_class(classify_case(surface)), punct_after(p) {}

std::string Token::text() const {
  std::string out = surface;
  out += punct_mark(punct_after);
  return out;
}

namespace {
constexpr std::string_view kTagNames[kNumNerTags] = {
    "O", "B-PER", "I-PER", "B-ORG", "I-ORG", "B-LOC", "I-LOC"};
}

std::string_view to_string(NerTag t) {
  return kTagNames[static_cast<int>(t)];
}

std::string_view to_string(EntityType t) {
  switch (t) {
    case EntityType::kPer: return "PER";
    case EntityType::kOrg: return "ORG";
    case EntityType::kLoc: return "LOC";
  }
  return "?";
}

std::optional<NerTag> parse_ner_tag(std::string_view s) {
  for (int i = 0; i < kNumNerTags; ++i) {
    if (kTagNames[i] == s) return static_cast<NerTag>(i);
  }
  return std::nullopt;
}

std::optional<EntityType> parse_entity_type(std::string_view s) {
  if (s == "PER") return EntityType::kPer;
  if (s == "ORG") return EntityType::kOrg;
  if (s == "LOC") return EntityType::kLoc;
  return std::nullopt;
}

bool is_begin(NerTag t) {
  return t == NerTag::kBPer || t == NerTag::kBOrg || t == NerTag::kBLoc;
}

bool is_inside(NerTag t) {
  return t == NerTag::kIPer || t == NerTag::kIOrg || t == NerTag::kILoc;
}

std::optional<EntityType> entity_type(NerTag t) {
  if (t == NerTag::kO) return std::nullopt;
  return static_cast<EntityType>((static_cast<int>(t) - 1) / 2);
}

NerTag begin_tag(EntityType t) {
  return static_cast<NerTag>(1 + 2 * static_cast<int>(t));
}

NerTag inside_tag(EntityType t) {
  return static_cast<NerTag>(2 + 2 * static_cast<int>(t));
}

std::vector<std::string> strip_formatting(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(unicode::to_lower(t.surface));
  return out;
}

std::vector<Token> uncase(const std::vector<Token>& tokens) {
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    out.emplace_back(unicode::to_lower(t.surface), CaseClass::kLower,
                     Punct::kNone);
  }
  return out;
}

std::string join_text(const std::vector<Token>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i].text();
  }
  return out;
}

}  // namespace speechner
