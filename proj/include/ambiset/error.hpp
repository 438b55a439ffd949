// Copyright 2026 The Ambiset Authors
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

namespace ambiset {

enum class ErrorCode {
  // Input validation.
  kAsymmetricDistance,
  kTriangleViolation,
  kNonzeroDiagonal,
  kNegativeDistance,
  kDuplicatePoints,
  kDimensionMismatch,
  kNonpositiveScale,
  kSpaceMismatch,
  kInvalidIndex,
  kInvalidExponent,
  kInvalidWeights,
  kNonFiniteValue,
  kMarginalMismatch,
  kEmptyPanel,
  kEmptySet,
  kSchemaViolation,
  // Numerical.
  kNumericalBreakdown,
  // Usage.
  kUnknownCommand,
  kFileNotFound,
  kUsage,
};

std::string_view error_name(ErrorCode code);

/// All library failures are reported through this exception; `code()` lets
/// callers (the CLI in particular) classify the failure without string
/// matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(error_name(code)) + ": " + message);
}

}  // namespace ambiset
