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

#ifndef SPEECHNER_ERRORS_HPP_
#define SPEECHNER_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace speechner {

/// Malformed or inconsistent input data (files, corpora, model documents).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A DataError attributable to a specific 1-based input line.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace speechner

#endif  // SPEECHNER_ERRORS_HPP_
