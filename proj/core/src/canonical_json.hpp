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

#ifndef SPEECHNER_SRC_CANONICAL_JSON_HPP_
#define SPEECHNER_SRC_CANONICAL_JSON_HPP_

#include <string>

#include <json.hpp>

#include "speechner/eval.hpp"

namespace speechner::detail {

/// Pretty-printed JSON with sorted keys (nlohmann objects are ordered maps)
/// and every floating-point value printed with exactly 4 decimals.
std::string canonical_dump(const nlohmann::json& j);

nlohmann::json to_json_value(const eval::EvalReport& report);
nlohmann::json to_json_value(const eval::CapuAccuracy& acc);

}  // namespace speechner::detail

#endif  // SPEECHNER_SRC_CANONICAL_JSON_HPP_
