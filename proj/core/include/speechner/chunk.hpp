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

#ifndef SPEECHNER_CHUNK_HPP_
#define SPEECHNER_CHUNK_HPP_

#include <cstddef>
#include <deque>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "speechner/token.hpp"

// Overlapping-chunk stream formatting. A stream is cut into windows of
// chunk_len words starting every stride = chunk_len - overlap words, each
// window is formatted on its own, and every word is taken from the window in
// which it sits farthest from an edge.
namespace speechner::chunk {

struct ChunkConfig {
  std::size_t chunk_len = 40;
  std::size_t overlap = 10;

  std::size_t stride() const { return chunk_len - overlap; }
  /// Throws std::invalid_argument unless 0 < overlap < chunk_len.
  void validate() const;
};

struct ChunkSpan {
  std::size_t start = 0;
  std::size_t length = 0;

  friend bool operator==(const ChunkSpan&, const ChunkSpan&) = default;
};

/// Chunk geometry for a stream of n words: a single chunk when n <=
/// chunk_len, otherwise one chunk at every multiple of the stride below n.
std::vector<ChunkSpan> chunk_spans(std::size_t n, const ChunkConfig& config);

struct Chunk {
  std::size_t start = 0;
  std::vector<std::string> tokens;
};

std::vector<Chunk> split_chunks(std::span<const std::string> tokens,
                                const ChunkConfig& config);

struct FormattedChunk {
  std::size_t start = 0;
  std::vector<Token> tokens;
};

/// Distance from position p to the nearest edge of a chunk.
inline std::size_t centrality(std::size_t p, std::size_t start,
                              std::size_t length) {
  const std::size_t left = p - start;
  const std::size_t right = start + length - 1 - p;
  return left < right ? left : right;
}

/// For each position keeps the version from the chunk with the highest
/// centrality, earlier chunk on ties. Chunks must be ordered by start, begin
/// at 0, and leave no gaps; otherwise throws std::invalid_argument.
std::vector<Token> merge_chunks(std::span<const FormattedChunk> chunks);

/// Maps a chunk of lowercased words to the same number of formatted tokens.
using Formatter =
    std::function<std::vector<Token>(std::span<const std::string>)>;

/// Batch form: split, format each chunk, merge.
std::vector<Token> format_chunked(std::span<const std::string> tokens,
                                  const ChunkConfig& config,
                                  const Formatter& formatter);

/// Incremental form of format_chunked. Words are pushed one at a time and
/// merged tokens are handed to the sink as soon as no later chunk can claim
/// them. At most chunk_len words are buffered.
class StreamFormatter {
 public:
  using Sink = std::function<void(const Token&)>;

  StreamFormatter(ChunkConfig config, Formatter formatter, Sink sink);

  void push(std::string word);
  /// Formats the remaining partial chunks and flushes every pending word.
  void finish();

  std::size_t buffered() const { return pending_.size(); }
  /// High-water mark of buffered().
  std::size_t max_buffered() const { return max_buffered_; }
  std::size_t emitted() const { return base_; }

 private:
  struct Slot {
    std::string word;
    Token best;
    std::size_t best_centrality = 0;
    bool has_best = false;
  };

  void format_chunk(std::size_t start, std::size_t length);
  void emit_through(std::size_t end);

  ChunkConfig config_;
  Formatter formatter_;
  Sink sink_;
  std::deque<Slot> pending_;    // positions [base_, base_ + pending_.size())
  std::size_t base_ = 0;        // first position not yet emitted
  std::size_t next_chunk_ = 0;  // index of the next chunk to format
  std::size_t max_buffered_ = 0;
  bool finished_ = false;
};

}  // namespace speechner::chunk

#endif  // SPEECHNER_CHUNK_HPP_
