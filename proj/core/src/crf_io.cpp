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

#include <algorithm>
#include <cmath>
#include <tuple>

#include <json.hpp>

#include "speechner/crf.hpp"
#include "speechner/errors.hpp"

namespace speechner::crf {

using nlohmann::json;

std::string to_json(const CrfModel& model) {
  const int k = model.num_labels();
  json doc;
  doc["version"] = CrfModel::kVersion;
  if (!model.task.empty()) doc["task"] = model.task;
  doc["labels"] = model.labels().names();

  const auto& t = model.templates();
  doc["templates"] = {
      {"window", t.window},
      {"affix_len", t.affix_len},
      {"conjunctions", t.conjunctions},
      {"capu_features", t.capu_features},
      {"formatting_features", t.formatting_features},
  };
  doc["lexicons"] = json::object();
  for (const auto& [name, words] : model.lexicons) doc["lexicons"][name] = words;
  doc["transitions"] = model.transition_weights();

  std::vector<std::tuple<const std::string*, int, double>> rows;
  const auto& e = model.emission_weights();
  for (std::size_t f = 0; f < model.num_features(); ++f) {
    for (int j = 0; j < k; ++j) {
      const double w = e[f * k + j];
      if (w != 0.0) {
        rows.emplace_back(&model.feature_name(static_cast<std::int32_t>(f)), j,
                          w);
      }
    }
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    const int c = std::get<0>(a)->compare(*std::get<0>(b));
    if (c != 0) return c < 0;
    return std::get<1>(a) < std::get<1>(b);
  });
  json em = json::array();
  for (const auto& [name, label, w] : rows) em.push_back({*name, label, w});
  doc["emissions"] = std::move(em);
  return doc.dump() + "\n";
}

CrfModel from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("model: invalid JSON: ") + e.what());
  }
  try {
    if (doc.at("version").get<std::string>() != CrfModel::kVersion) {
      throw DataError("model: unsupported version " +
                      doc.at("version").get<std::string>());
    }
    LabelSet labels(doc.at("labels").get<std::vector<std::string>>());
    const auto& jt = doc.at("templates");
    FeatureTemplate t;
    t.window = jt.at("window").get<int>();
    t.affix_len = jt.at("affix_len").get<int>();
    t.conjunctions = jt.at("conjunctions").get<bool>();
    t.capu_features = jt.at("capu_features").get<bool>();
    t.formatting_features = jt.at("formatting_features").get<bool>();

    CrfModel m(std::move(labels), t);
    m.task = doc.value("task", "");
    if (doc.contains("lexicons")) {
      for (const auto& [name, words] : doc.at("lexicons").items()) {
        m.lexicons[name] = words.get<std::vector<std::string>>();
      }
    }
    const auto trans = doc.at("transitions").get<std::vector<double>>();
    if (trans.size() != m.transition_weights().size()) {
      throw DataError("model: transition matrix has wrong shape");
    }
    m.transition_weights() = trans;
    for (const auto& row : doc.at("emissions")) {
      const int label = row.at(1).get<int>();
      if (label < 0 || label >= m.num_labels()) {
        throw DataError("model: emission label index out of range");
      }
      m.set_emission(row.at(0).get<std::string>(), label,
                     row.at(2).get<double>());
    }
    for (double w : m.transition_weights()) {
      if (!std::isfinite(w)) throw DataError("model: non-finite weight");
    }
    for (double w : m.emission_weights()) {
      if (!std::isfinite(w)) throw DataError("model: non-finite weight");
    }
    return m;
  } catch (const json::exception& e) {
    throw DataError(std::string("model: malformed document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("model: ") + e.what());
  }
}

}  // namespace speechner::crf
