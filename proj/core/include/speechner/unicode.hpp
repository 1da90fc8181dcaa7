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

#ifndef SPEECHNER_UNICODE_HPP_
#define SPEECHNER_UNICODE_HPP_

#include <string>
#include <string_view>
#include <vector>

// Thin UTF-8 helpers over ICU. Case mapping is per code point (simple case
// mapping) so that upper/lower conversions never change the number of
// letters in a word.
namespace speechner::unicode {

/// Canonical composition (NFC). Invalid UTF-8 sequences are replaced by
/// U+FFFD.
std::string nfc(std::string_view utf8);

std::vector<char32_t> decode(std::string_view utf8);
std::string encode(const std::vector<char32_t>& cps);
void append(std::string& out, char32_t cp);

bool is_letter(char32_t cp);
bool is_upper(char32_t cp);
bool is_lower(char32_t cp);
bool is_digit(char32_t cp);
bool is_space(char32_t cp);
bool is_punct(char32_t cp);

char32_t to_upper(char32_t cp);
char32_t to_lower(char32_t cp);

std::string to_lower(std::string_view utf8);
std::string to_upper(std::string_view utf8);

}  // namespace speechner::unicode

#endif  // SPEECHNER_UNICODE_HPP_
