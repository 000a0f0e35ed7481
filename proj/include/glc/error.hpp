// Copyright 2026 The GLC Authors.
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace glc {

// Base for every failure raised by the library. Callers that only care
// about "did it work" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input record; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Structurally well-formed data that violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Invalid user-supplied settings (dimension, lambda, budgets, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Bad external-vector file.
class FormatError : public Error {
 public:
  using Error::Error;
};

class MissingTokenError : public Error {
 public:
  explicit MissingTokenError(const std::string& token)
      : Error("token not in embedding table: \"" + token + "\""), token_(token) {}

  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

// A function was called with arguments outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Dialogue whose content cannot fit the token budget at all.
class BudgetError : public Error {
 public:
  BudgetError() : Error("dialogue exceeds budget irreducibly") {}
};

}  // namespace glc
