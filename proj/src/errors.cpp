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

#include "linkflows/errors.hpp"

namespace linkflows {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kUnknownId: return "unknown-id";
    case ErrorCode::kCycleDetected: return "cycle-detected";
    case ErrorCode::kValidationFailed: return "validation-failed";
    case ErrorCode::kReferenceUnresolved: return "reference-unresolved";
    case ErrorCode::kNotFound: return "not-found";
    case ErrorCode::kIntegrity: return "integrity";
    case ErrorCode::kCollision: return "iri-collision";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kParse: return "parse-error";
    case ErrorCode::kModelViolation: return "model-violation";
    case ErrorCode::kEmptyInput: return "empty-input";
    case ErrorCode::kTooLarge: return "k-too-large";
    case ErrorCode::kUnequalRaterCounts: return "unequal-rater-counts";
    case ErrorCode::kDegenerate: return "degenerate";
    case ErrorCode::kEmptyOverlap: return "empty-overlap";
    case ErrorCode::kUnknownDimension: return "unknown-dimension";
    case ErrorCode::kInvalidTrials: return "invalid-trials";
    case ErrorCode::kAllZeroDifferences: return "all-zero-differences";
    case ErrorCode::kTooFewRaters: return "too-few-raters";
    case ErrorCode::kEmptyStore: return "empty-store";
    case ErrorCode::kEmptyLexicon: return "empty-lexicon";
    case ErrorCode::kReadOnly: return "read-only";
  }
  return "unknown";
}

}  // namespace linkflows
