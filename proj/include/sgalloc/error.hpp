// Copyright 2026 The sgalloc Authors
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

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sgm {

enum class ErrorCode {
  SumMismatch,
  NonPositiveQuantity,
  NonPositiveRequirement,
  InvalidPermutation,
  DimensionMismatch,
  InfeasibleAllocation,
  InvalidInstance,
  InvalidBids,
  SpeedIntegralMismatch,
  InvalidSpeedSegments,
  NotParetoEfficient,
  CapExceeded,
  MalformedProgram,
  SyntaxError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable code and, when meaningful, the index
/// of the offending agent/good/segment.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::move(message)), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace sgm
