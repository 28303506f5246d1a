// Copyright 2026 The ktok Authors
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

#ifndef KTOK_ERRORS_H_
#define KTOK_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ktok {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `line` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line,
             const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration or violated precondition on arguments.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// No candidate subword matches at some position during greedy decoding.
class DecodeError : public Error {
 public:
  DecodeError(const std::string& word, std::size_t position)
      : Error("cannot decode '" + word + "': no candidate matches at offset " +
              std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Cross-structure consistency failure (e.g. a missing embedding row).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace ktok

#endif  // KTOK_ERRORS_H_
