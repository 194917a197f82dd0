// Copyright 2026 The fiberjac Authors
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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fiberjac {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input. The CLI maps this to exit code 2.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Input file could not be parsed; carries the offending field and line.
class ParseError : public InvalidInput {
 public:
  ParseError(std::string field, int line, const std::string& what)
      : InvalidInput(format(field, line, what)), field_(std::move(field)), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& field, int line, const std::string& what) {
    std::string out = "parse error";
    if (line > 0) out += " at line " + std::to_string(line);
    if (!field.empty()) out += " in field '" + field + "'";
    return out + ": " + what;
  }

  std::string field_;
  int line_;
};

/// The discriminant of a Weierstrass model vanishes identically.
class IsotriviallySingular : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Enumeration would exceed the configured search-space cap.
class CapExceeded : public InvalidInput {
 public:
  CapExceeded(std::uint64_t required, std::uint64_t cap)
      : InvalidInput("search space of " + std::to_string(required) +
                     " vectors exceeds the cap of " + std::to_string(cap) +
                     "; raise the cap to at least " + std::to_string(required)),
        required_(required) {}

  std::uint64_t required() const noexcept { return required_; }

 private:
  std::uint64_t required_;
};

/// Fiber type outside I_N, II, III, IV and smooth. Exit code 3.
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// Valuations show the Weierstrass model is not minimal at a point. Exit code 3.
class NonMinimalModel : public Error {
 public:
  using Error::Error;
};

}  // namespace fiberjac
