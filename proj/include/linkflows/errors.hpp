// Copyright 2026 The Linkflows Authors
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

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace linkflows {

enum class ErrorCode {
  kInvalidArgument,
  kUnknownId,
  kCycleDetected,
  kValidationFailed,
  kReferenceUnresolved,
  kNotFound,
  kIntegrity,
  kCollision,
  kIo,
  kParse,
  kModelViolation,
  kEmptyInput,
  kTooLarge,
  kUnequalRaterCounts,
  kDegenerate,
  kEmptyOverlap,
  kUnknownDimension,
  kInvalidTrials,
  kAllZeroDifferences,
  kTooFewRaters,
  kEmptyStore,
  kEmptyLexicon,
  kReadOnly,
};

// Stable machine-readable spelling, e.g. "dangling-target" style.
std::string_view to_string(ErrorCode code);

// A single broken model rule. Violations are data, not failures.
struct Violation {
  std::string code;
  std::string message;

  bool operator==(const Violation&) const = default;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail,
        std::vector<Violation> violations = {})
      : std::runtime_error(detail),
        code_(code),
        violations_(std::move(violations)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<Violation>& violations() const noexcept {
    return violations_;
  }

 private:
  ErrorCode code_;
  std::vector<Violation> violations_;
};

// Turtle syntax errors carry a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& detail, std::size_t line, std::size_t column)
      : Error(ErrorCode::kParse, detail + " at line " + std::to_string(line) +
                                     ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace linkflows
