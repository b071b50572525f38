// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ris {

enum class ErrorKind {
  kSingularMatrix,
  kSingularDiagonalBlock,
  kDimensionMismatch,
  kAssumptionViolated,
  kOpenCircuitSingularity,
  kMissingSideLinks,
  kSectorIndexOutOfRange,
  kNotRankOne,
  kZeroVector,
  kCascadeTooLong,
  kEmptySample,
  kDegenerateDenominator,
  kEmptySequence,
  kRangeExceeded,
  kUnknownPreset,
  kInvalidSpec,
  kIoError,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` carries the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ris
