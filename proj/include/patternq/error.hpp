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

#ifndef PATTERNQ_ERROR_HPP_
#define PATTERNQ_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace patternq {

enum class ErrorCode {
  // graph_core
  kDuplicateEdge,
  kSelfLoop,
  kBadIndex,
  kNonpositiveWeight,
  kIsolatedVertex,
  kNotConnected,
  kBadLatticeSize,
  // partitions
  kPartitionMismatch,
  kNotEquitable,
  kNotAutomorphism,
  kNotPermutation,
  kSingularTransform,
  // spectral
  kNotSymmetric,
  kNoConvergence,
  kDetailedBalanceViolated,
  kReducible,
  kNegativeEntry,
  kNonNegativeSlope,
  // cell_model
  kNegativeInput,
  kNonpositiveOperatingPoint,
  kBadModel,
  // existence
  kOnlyHomogeneousFound,
  kDimensionMismatch,
  // stability
  kNotSteadyState,
  kOrderingMismatch,
  // simulate
  kStateOutOfBox,
  kBadOptions,
  kNotConverged,
  // io / cli
  kParse,
  kBadBundle,
};

std::string_view ErrorCodeName(ErrorCode code);

/// Exception carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace patternq

#endif  // PATTERNQ_ERROR_HPP_
