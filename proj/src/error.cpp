// Copyright 2026 The patternq Authors.
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

#include "patternq/error.hpp"

namespace patternq {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kBadIndex: return "BadIndex";
    case ErrorCode::kNonpositiveWeight: return "NonpositiveWeight";
    case ErrorCode::kIsolatedVertex: return "IsolatedVertex";
    case ErrorCode::kNotConnected: return "NotConnected";
    case ErrorCode::kBadLatticeSize: return "BadLatticeSize";
    case ErrorCode::kPartitionMismatch: return "PartitionMismatch";
    case ErrorCode::kNotEquitable: return "NotEquitable";
    case ErrorCode::kNotAutomorphism: return "NotAutomorphism";
    case ErrorCode::kNotPermutation: return "NotPermutation";
    case ErrorCode::kSingularTransform: return "SingularTransform";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kDetailedBalanceViolated: return "DetailedBalanceViolated";
    case ErrorCode::kReducible: return "Reducible";
    case ErrorCode::kNegativeEntry: return "NegativeEntry";
    case ErrorCode::kNonNegativeSlope: return "NonNegativeSlope";
    case ErrorCode::kNegativeInput: return "NegativeInput";
    case ErrorCode::kNonpositiveOperatingPoint: return "NonpositiveOperatingPoint";
    case ErrorCode::kBadModel: return "BadModel";
    case ErrorCode::kOnlyHomogeneousFound: return "OnlyHomogeneousFound";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotSteadyState: return "NotSteadyState";
    case ErrorCode::kOrderingMismatch: return "OrderingMismatch";
    case ErrorCode::kStateOutOfBox: return "StateOutOfBox";
    case ErrorCode::kBadOptions: return "BadOptions";
    case ErrorCode::kNotConverged: return "NotConverged";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kBadBundle: return "BadBundle";
  }
  return "Unknown";
}

}  // namespace patternq
