// Copyright 2026 The divrepair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DIVREPAIR_COMMON_ERRORS_HPP_
#define DIVREPAIR_COMMON_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace divrepair {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed source text. Carries the 1-based location of the offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Well-formed syntax that violates a static rule (missing main, undeclared
/// variable, arity mismatch, ...).
class SemanticError : public Error {
 public:
  using Error::Error;
};

/// The original program passes every supplied test, so there is no bug to fix.
class NoFailingTests : public Error {
 public:
  NoFailingTests() : Error("original program passes every test") {}
};

/// Negative tests never execute a statement, so nothing can be mutated.
class NoLocalizableFault : public Error {
 public:
  NoLocalizableFault()
      : Error("no statement is executed by a negative test") {}
};

class EmptyTraces : public Error {
 public:
  EmptyTraces() : Error("no execution reached any program point") {}
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t a, std::size_t b)
      : Error("profile lengths differ: " + std::to_string(a) + " vs " +
              std::to_string(b)) {}
};

}  // namespace divrepair

#endif  // DIVREPAIR_COMMON_ERRORS_HPP_
