// SPDX-License-Identifier: Apache-2.0
#include "ris/error.hpp"

namespace ris {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSingularMatrix: return "SingularMatrix";
    case ErrorKind::kSingularDiagonalBlock: return "SingularDiagonalBlock";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kAssumptionViolated: return "AssumptionViolated";
    case ErrorKind::kOpenCircuitSingularity: return "OpenCircuitSingularity";
    case ErrorKind::kMissingSideLinks: return "MissingSideLinks";
    case ErrorKind::kSectorIndexOutOfRange: return "SectorIndexOutOfRange";
    case ErrorKind::kNotRankOne: return "NotRankOne";
    case ErrorKind::kZeroVector: return "ZeroVector";
    case ErrorKind::kCascadeTooLong: return "CascadeTooLong";
    case ErrorKind::kEmptySample: return "EmptySample";
    case ErrorKind::kDegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::kEmptySequence: return "EmptySequence";
    case ErrorKind::kRangeExceeded: return "RangeExceeded";
    case ErrorKind::kUnknownPreset: return "UnknownPreset";
    case ErrorKind::kInvalidSpec: return "InvalidSpec";
    case ErrorKind::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace ris
