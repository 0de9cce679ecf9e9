// Copyright 2026 The Authors.
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

namespace qmat {

enum class ErrorCode {
  kNotPrime,
  kReducible,
  kNoDefaultModulus,
  kDivisionByZero,
  kDimensionMismatch,
  kZeroSpace,
  kRankDeficientG,
  kFieldMismatch,
  kKOutOfRange,
  kEmptyFamily,
  kInconsistentFamily,
  kNotASpread,
  kWrongDimension,
  kNotASubspace,
  kBudgetExceeded,
  kSingularAlpha,
  kNotComputedFromOracle,
  kNotAMember,
  kGroundMismatch,
  kZeroGround,
  kNotASpreadSet,
  kInvalidInput,
};

inline std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotPrime: return "NotPrime";
    case ErrorCode::kReducible: return "Reducible";
    case ErrorCode::kNoDefaultModulus: return "NoDefaultModulus";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kZeroSpace: return "ZeroSpace";
    case ErrorCode::kRankDeficientG: return "RankDeficientG";
    case ErrorCode::kFieldMismatch: return "FieldMismatch";
    case ErrorCode::kKOutOfRange: return "KOutOfRange";
    case ErrorCode::kEmptyFamily: return "EmptyFamily";
    case ErrorCode::kInconsistentFamily: return "InconsistentFamily";
    case ErrorCode::kNotASpread: return "NotASpread";
    case ErrorCode::kWrongDimension: return "WrongDimension";
    case ErrorCode::kNotASubspace: return "NotASubspace";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kSingularAlpha: return "SingularAlpha";
    case ErrorCode::kNotComputedFromOracle: return "NotComputedFromOracle";
    case ErrorCode::kNotAMember: return "NotAMember";
    case ErrorCode::kGroundMismatch: return "GroundMismatch";
    case ErrorCode::kZeroGround: return "ZeroGround";
    case ErrorCode::kNotASpreadSet: return "NotASpreadSet";
    case ErrorCode::kInvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qmat
