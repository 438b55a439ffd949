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

#include "ambiset/error.hpp"

namespace ambiset {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kAsymmetricDistance: return "AsymmetricDistance";
    case ErrorCode::kTriangleViolation: return "TriangleViolation";
    case ErrorCode::kNonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::kNegativeDistance: return "NegativeDistance";
    case ErrorCode::kDuplicatePoints: return "DuplicatePoints";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonpositiveScale: return "NonpositiveScale";
    case ErrorCode::kSpaceMismatch: return "SpaceMismatch";
    case ErrorCode::kInvalidIndex: return "InvalidIndex";
    case ErrorCode::kInvalidExponent: return "InvalidExponent";
    case ErrorCode::kInvalidWeights: return "InvalidWeights";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kMarginalMismatch: return "MarginalMismatch";
    case ErrorCode::kEmptyPanel: return "EmptyPanel";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kNumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::kUnknownCommand: return "UnknownCommand";
    case ErrorCode::kFileNotFound: return "FileNotFound";
    case ErrorCode::kUsage: return "Usage";
  }
  return "Unknown";
}

}  // namespace ambiset
