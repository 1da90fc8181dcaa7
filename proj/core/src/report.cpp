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

#include <cstdio>
#include <sstream>

#include "canonical_json.hpp"
#include "speechner/eval.hpp"

namespace speechner {

namespace detail {

namespace {

void dump_into(const nlohmann::json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += nlohmann::json(key).dump();
        out += ": ";
        dump_into(value, indent + 2, out);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        dump_into(value, indent + 2, out);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.4f", j.get<double>());
      out += buf;
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

nlohmann::json prf_json(const eval::Prf& p) {
  return {{"correct", p.correct},     {"predicted", p.predicted},
          {"gold", p.gold},           {"precision", p.precision()},
          {"recall", p.recall()},     {"f1", p.f1()}};
}

nlohmann::json entities_json(const eval::EntityScores& s) {
  nlohmann::json j;
  for (int t = 0; t < 3; ++t) {
    j[std::string(to_string(static_cast<EntityType>(t)))] =
        prf_json(s.per_type[t]);
  }
  j["micro"] = prf_json(s.micro);
  return j;
}

nlohmann::json edits_json(const eval::EditCounts& e) {
  return {{"ref_words", e.ref_words},
          {"hyp_words", e.hyp_words},
          {"correct", e.correct},
          {"substitutions", e.substitutions},
          {"deletions", e.deletions},
          {"insertions", e.insertions},
          {"wer", e.wer()}};
}

nlohmann::json class_json(const eval::ClassAccuracy& c) {
  return {{"correct", c.correct}, {"total", c.total},
          {"accuracy", c.accuracy()}};
}

}  // namespace

std::string canonical_dump(const nlohmann::json& j) {
  std::string out;
  dump_into(j, 0, out);
  out += '\n';
  return out;
}

nlohmann::json to_json_value(const eval::CapuAccuracy& acc) {
  return {{"capitalization", class_json(acc.capitalization)},
          {"period", class_json(acc.period)},
          {"comma", class_json(acc.comma)},
          {"blank", class_json(acc.blank)}};
}

nlohmann::json to_json_value(const eval::EvalReport& report) {
  nlohmann::json j;
  j["entities"] = entities_json(report.entities);
  j["edits"] = edits_json(report.edits);
  if (report.capu) j["capu"] = to_json_value(*report.capu);
  nlohmann::json docs = nlohmann::json::array();
  for (const auto& d : report.documents) {
    docs.push_back({{"index", d.index},
                    {"entities", entities_json(d.entities)},
                    {"edits", edits_json(d.edits)}});
  }
  j["documents"] = std::move(docs);
  return j;
}

}  // namespace detail

namespace eval {

std::string to_json(const EvalReport& report) {
  return detail::canonical_dump(detail::to_json_value(report));
}

std::string to_table(const EvalReport& report) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-8s %9s %9s %9s %8s %8s %8s\n", "type",
                "precision", "recall", "f1", "correct", "pred", "gold");
  out << line;
  auto row = [&](const char* name, const Prf& p) {
    std::snprintf(line, sizeof line, "%-8s %9.4f %9.4f %9.4f %8zu %8zu %8zu\n",
                  name, p.precision(), p.recall(), p.f1(), p.correct,
                  p.predicted, p.gold);
    out << line;
  };
  for (int t = 0; t < 3; ++t) {
    row(std::string(to_string(static_cast<EntityType>(t))).c_str(),
        report.entities.per_type[t]);
  }
  row("micro", report.entities.micro);
  const auto& e = report.edits;
  std::snprintf(line, sizeof line,
                "WER %.4f  (ref %zu, hyp %zu, S %zu, D %zu, I %zu)\n", e.wer(),
                e.ref_words, e.hyp_words, e.substitutions, e.deletions,
                e.insertions);
  out << line;
  if (report.capu) {
    const auto& c = *report.capu;
    std::snprintf(line, sizeof line,
                  "CaPu accuracy: capitalization %.4f  period %.4f  comma "
                  "%.4f  blank %.4f\n",
                  c.capitalization.accuracy(), c.period.accuracy(),
                  c.comma.accuracy(), c.blank.accuracy());
    out << line;
  }
  return out.str();
}

}  // namespace eval

}  // namespace speechner
