// Copyright 2026 The stfidf Authors
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

#ifndef STFIDF_ERRORS_H_
#define STFIDF_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stfidf {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid pipeline, trainer or model configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input that violates an operation's precondition (empty corpus, duplicate
// document ids, non-positive corpus sizes, ...).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

// Malformed file content. `where` is a line number ("line 12") or a JSON
// path ("data[3].paragraphs[0].qas[2].question").
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& message)
      : Error(where + ": " + message), where_(where), message_(message) {}

  static ParseError AtLine(std::size_t line, const std::string& message) {
    return ParseError("line " + std::to_string(line), message);
  }

  const std::string& where() const { return where_; }
  const std::string& message() const { return message_; }

 private:
  std::string where_;
  std::string message_;
};

}  // namespace stfidf

#endif  // STFIDF_ERRORS_H_
