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

#include "speechner/corpus_io.hpp"

namespace speechner {

namespace {

std::size_t draw_length(Rng& rng) {
  return static_cast<std::size_t>(rng.uniform_int(kMinSegment, kMaxSegment));
}

}  // namespace

CorpusSegmenter::CorpusSegmenter(std::uint64_t seed)
    : rng_(seed), target_(draw_length(rng_)) {
  pending_.reserve(kMaxSegment);
}

std::optional<capu::CapuSample> CorpusSegmenter::push(const Token& tok) {
  pending_.push_back(tok);
  if (pending_.size() < target_) return std::nullopt;
  auto sample = capu::encode_labels(pending_);
  pending_.clear();
  target_ = draw_length(rng_);
  return sample;
}

std::optional<capu::CapuSample> CorpusSegmenter::finish() {
  if (pending_.size() < kMinSegment) {
    pending_.clear();
    return std::nullopt;
  }
  auto sample = capu::encode_labels(pending_);
  pending_.clear();
  return sample;
}

std::vector<capu::CapuSample> segment_corpus(std::span<const Token> tokens,
                                             std::uint64_t seed) {
  CorpusSegmenter seg(seed);
  std::vector<capu::CapuSample> out;
  for (const auto& t : tokens) {
    if (auto s = seg.push(t)) out.push_back(std::move(*s));
  }
  if (auto s = seg.finish()) out.push_back(std::move(*s));
  return out;
}

}  // namespace speechner
