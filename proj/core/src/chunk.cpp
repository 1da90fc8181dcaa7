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

#include "speechner/chunk.hpp"

#include <algorithm>
#include <stdexcept>

namespace speechner::chunk {

void ChunkConfig::validate() const {
  if (overlap == 0 || overlap >= chunk_len) {
    throw std::invalid_argument("chunk geometry requires 0 < overlap < "
                                "chunk length");
  }
}

std::vector<ChunkSpan> chunk_spans(std::size_t n, const ChunkConfig& config) {
  config.validate();
  std::vector<ChunkSpan> spans;
  if (n == 0) return spans;
  if (n <= config.chunk_len) {
    spans.push_back({0, n});
    return spans;
  }
  const std::size_t s = config.stride();
  for (std::size_t start = 0; start < n; start += s) {
    spans.push_back({start, std::min(config.chunk_len, n - start)});
  }
  return spans;
}

std::vector<Chunk> split_chunks(std::span<const std::string> tokens,
                                const ChunkConfig& config) {
  std::vector<Chunk> chunks;
  for (const auto& sp : chunk_spans(tokens.size(), config)) {
    Chunk c;
    c.start = sp.start;
    c.tokens.assign(tokens.begin() + sp.start,
                    tokens.begin() + sp.start + sp.length);
    chunks.push_back(std::move(c));
  }
  return chunks;
}

std::vector<Token> merge_chunks(std::span<const FormattedChunk> chunks) {
  if (chunks.empty()) return {};
  if (chunks.front().start != 0) {
    throw std::invalid_argument("merge_chunks: first chunk must start at 0");
  }
  std::size_t n = 0;
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    const auto& c = chunks[i];
    if (c.tokens.empty()) {
      throw std::invalid_argument("merge_chunks: empty chunk");
    }
    if (i > 0 && (c.start <= chunks[i - 1].start || c.start > n)) {
      throw std::invalid_argument("merge_chunks: chunk offsets are not "
                                  "increasing or leave a gap");
    }
    n = std::max(n, c.start + c.tokens.size());
  }

  std::vector<Token> out(n);
  std::vector<std::size_t> best(n, 0);
  std::vector<bool> seen(n, false);
  for (const auto& c : chunks) {
    for (std::size_t k = 0; k < c.tokens.size(); ++k) {
      const std::size_t p = c.start + k;
      const std::size_t cen = centrality(p, c.start, c.tokens.size());
      if (!seen[p] || cen > best[p]) {
        out[p] = c.tokens[k];
        best[p] = cen;
        seen[p] = true;
      }
    }
  }
  return out;
}

namespace {

std::vector<Token> checked_format(const Formatter& formatter,
                                  std::span<const std::string> words) {
  auto out = formatter(words);
  if (out.size() != words.size()) {
    throw std::runtime_error("formatter changed the chunk length");
  }
  return out;
}

}  // namespace

std::vector<Token> format_chunked(std::span<const std::string> tokens,
                                  const ChunkConfig& config,
                                  const Formatter& formatter) {
  std::vector<FormattedChunk> formatted;
  for (const auto& c : split_chunks(tokens, config)) {
    formatted.push_back({c.start, checked_format(formatter, c.tokens)});
  }
  return merge_chunks(formatted);
}

StreamFormatter::StreamFormatter(ChunkConfig config, Formatter formatter,
                                 Sink sink)
    : config_(config), formatter_(std::move(formatter)), sink_(std::move(sink)) {
  config_.validate();
}

void StreamFormatter::push(std::string word) {
  if (finished_) throw std::logic_error("push after finish");
  pending_.push_back({std::move(word), {}, 0, false});
  max_buffered_ = std::max(max_buffered_, pending_.size());

  const std::size_t total = base_ + pending_.size();
  const std::size_t start = next_chunk_ * config_.stride();
  if (start + config_.chunk_len <= total) {
    format_chunk(start, config_.chunk_len);
    ++next_chunk_;
    // Every chunk that can contain a position below this one is done.
    emit_through(next_chunk_ * config_.stride());
  }
}

void StreamFormatter::finish() {
  if (finished_) return;
  finished_ = true;
  const std::size_t total = base_ + pending_.size();
  const auto spans = chunk_spans(total, config_);
  for (std::size_t i = next_chunk_; i < spans.size(); ++i) {
    format_chunk(spans[i].start, spans[i].length);
  }
  next_chunk_ = spans.size();
  emit_through(total);
}

void StreamFormatter::format_chunk(std::size_t start, std::size_t length) {
  std::vector<std::string> words;
  words.reserve(length);
  const std::size_t off = start - base_;
  for (std::size_t k = 0; k < length; ++k) {
    words.push_back(pending_[off + k].word);
  }
  auto formatted = checked_format(formatter_, words);
  for (std::size_t k = 0; k < length; ++k) {
    Slot& slot = pending_[off + k];
    const std::size_t cen = centrality(start + k, start, length);
    if (!slot.has_best || cen > slot.best_centrality) {
      slot.best = std::move(formatted[k]);
      slot.best_centrality = cen;
      slot.has_best = true;
    }
  }
}

void StreamFormatter::emit_through(std::size_t end) {
  while (base_ < end && !pending_.empty()) {
    sink_(pending_.front().best);
    pending_.pop_front();
    ++base_;
  }
}

}  // namespace speechner::chunk
