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

#ifndef SPEECHNER_SYNTH_HPP_
#define SPEECHNER_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "speechner/token.hpp"

// Bundled synthetic news-style corpus: templated Vietnamese sentences with
// gazetteer person, organization and location names. Several given names
// and place-name syllables double as ordinary words, so casing carries real
// information for the tagger.
namespace speechner::synth {

struct SynthConfig {
  std::size_t documents = 300;
  std::size_t min_sentences = 6;
  std::size_t max_sentences = 10;
  std::uint64_t seed = 1;
};

/// Tagged, formatted documents. Deterministic per config.
std::vector<Document> generate_corpus(const SynthConfig& config);

/// Sorted distinct lowercased words of the corpus.
std::vector<std::string> vocabulary(const std::vector<Document>& docs);

}  // namespace speechner::synth

#endif  // SPEECHNER_SYNTH_HPP_
