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

#include <string>
#include <vector>

#include "speechner/corpus_io.hpp"
#include "speechner/errors.hpp"
#include "speechner/unicode.hpp"

namespace speechner {

namespace {

constexpr std::string_view kEntityElement = "ENAMEX";

struct OpenElement {
  std::string name;
  bool entity;
};

std::size_t line_at(std::string_view xml, std::size_t pos) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < pos && i < xml.size(); ++i) {
    if (xml[i] == '\n') ++line;
  }
  return line;
}

std::string element_name(std::string_view body) {
  std::size_t e = 0;
  while (e < body.size() && body[e] != ' ' && body[e] != '\t' &&
         body[e] != '\n' && body[e] != '\r' && body[e] != '/') {
    ++e;
  }
  return std::string(body.substr(0, e));
}

std::optional<std::string> attribute(std::string_view body,
                                     std::string_view name) {
  std::size_t pos = 0;
  while ((pos = body.find(name, pos)) != std::string_view::npos) {
    const bool word_start =
        pos > 0 && (body[pos - 1] == ' ' || body[pos - 1] == '\t' ||
                    body[pos - 1] == '\n' || body[pos - 1] == '\r');
    std::size_t p = pos + name.size();
    while (p < body.size() && body[p] == ' ') ++p;
    if (!word_start || p >= body.size() || body[p] != '=') {
      pos += name.size();
      continue;
    }
    ++p;
    while (p < body.size() && body[p] == ' ') ++p;
    if (p >= body.size() || (body[p] != '"' && body[p] != '\'')) {
      return std::nullopt;
    }
    const char quote = body[p];
    const auto end = body.find(quote, p + 1);
    if (end == std::string_view::npos) return std::nullopt;
    return std::string(body.substr(p + 1, end - p - 1));
  }
  return std::nullopt;
}

// Appends character data with XML references resolved.
void append_text(std::string_view raw, std::string& out, std::size_t line) {
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] != '&') {
      out += raw[i];
      continue;
    }
    const auto semi = raw.find(';', i);
    if (semi == std::string_view::npos) {
      throw ParseError(line, "unterminated character reference");
    }
    const std::string_view ref = raw.substr(i + 1, semi - i - 1);
    if (ref == "amp") {
      out += '&';
    } else if (ref == "lt") {
      out += '<';
    } else if (ref == "gt") {
      out += '>';
    } else if (ref == "quot") {
      out += '"';
    } else if (ref == "apos") {
      out += '\'';
    } else if (ref.size() > 1 && ref[0] == '#') {
      const bool hex = ref[1] == 'x' || ref[1] == 'X';
      const std::string digits(ref.substr(hex ? 2 : 1));
      try {
        unicode::append(out, static_cast<char32_t>(
                                 std::stoul(digits, nullptr, hex ? 16 : 10)));
      } catch (const std::exception&) {
        throw ParseError(line, "bad character reference &" +
                                   std::string(ref) + ";");
      }
    } else {
      throw ParseError(line, "unknown entity reference &" + std::string(ref) +
                                 ";");
    }
    i = semi;
  }
}

}  // namespace

std::vector<Document> convert_nested_xml(std::string_view xml) {
  // Flatten to character data, remembering for each byte which first-level
  // entity (if any) encloses it.
  std::string text;
  std::vector<int> owner;
  std::vector<EntityType> entity_types;
  std::vector<OpenElement> stack;
  int entity_depth = 0;
  int current_entity = -1;

  std::size_t i = 0;
  while (i < xml.size()) {
    if (xml[i] != '<') {
      const auto next = xml.find('<', i);
      const auto end = next == std::string_view::npos ? xml.size() : next;
      std::string chunk;
      append_text(xml.substr(i, end - i), chunk, line_at(xml, i));
      chunk = unicode::nfc(chunk);
      text += chunk;
      owner.insert(owner.end(), chunk.size(), current_entity);
      i = end;
      continue;
    }

    const std::size_t line = line_at(xml, i);
    if (xml.substr(i, 4) == "<!--") {
      const auto end = xml.find("-->", i);
      if (end == std::string_view::npos) {
        throw ParseError(line, "unterminated comment");
      }
      i = end + 3;
      continue;
    }
    const auto close = xml.find('>', i);
    if (close == std::string_view::npos) {
      throw ParseError(line, "unterminated tag");
    }
    std::string_view body = xml.substr(i + 1, close - i - 1);
    i = close + 1;
    if (body.empty()) throw ParseError(line, "empty tag");
    if (body[0] == '?' || body[0] == '!') continue;

    if (body[0] == '/') {
      const std::string name = element_name(body.substr(1));
      if (stack.empty()) {
        throw ParseError(line, "closing </" + name + "> without open element");
      }
      if (stack.back().name != name) {
        throw ParseError(line, "closing </" + name + "> does not match <" +
                                   stack.back().name + ">");
      }
      if (stack.back().entity && --entity_depth == 0) current_entity = -1;
      stack.pop_back();
      continue;
    }

    const bool self_closing = body.back() == '/';
    const std::string name = element_name(body);
    if (name.empty()) throw ParseError(line, "tag without a name");
    const bool entity = name == kEntityElement;
    if (entity) {
      const auto type_attr = attribute(body, "TYPE");
      if (!type_attr) throw ParseError(line, "ENAMEX element without TYPE");
      const auto type = parse_entity_type(*type_attr);
      if (!type) {
        throw ParseError(line, "unknown entity TYPE \"" + *type_attr + "\"");
      }
      if (self_closing) continue;
      if (entity_depth++ == 0) {
        current_entity = static_cast<int>(entity_types.size());
        entity_types.push_back(*type);
      }
    } else if (self_closing) {
      continue;
    }
    stack.push_back({name, entity});
  }
  if (!stack.empty()) {
    throw ParseError(line_at(xml, xml.size()),
                     "unclosed element <" + stack.back().name + ">");
  }

  // Sentences break at newlines that fall outside every entity.
  Document doc;
  std::size_t start = 0;
  for (std::size_t pos = 0; pos <= text.size(); ++pos) {
    const bool boundary =
        pos == text.size() || (text[pos] == '\n' && owner[pos] < 0);
    if (!boundary) continue;
    std::string line = text.substr(start, pos - start);
    for (char& c : line) {
      if (c == '\n') c = ' ';
    }
    const auto spans = tokenize(line);
    if (!spans.empty()) {
      Sentence sent;
      TagSequence tags;
      int prev = -1;
      for (const auto& s : spans) {
        const int ent = owner[start + s.surface_begin];
        if (ent < 0) {
          tags.push_back(NerTag::kO);
        } else {
          tags.push_back(ent == prev ? inside_tag(entity_types[ent])
                                     : begin_tag(entity_types[ent]));
        }
        prev = ent;
        sent.push_back(s.token);
      }
      doc.sentences.push_back(std::move(sent));
      doc.tags.push_back(std::move(tags));
    }
    start = pos + 1;
  }
  std::vector<Document> docs;
  if (!doc.sentences.empty()) docs.push_back(std::move(doc));
  return docs;
}

}  // namespace speechner
