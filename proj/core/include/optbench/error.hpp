// Copyright 2026 The optbench Authors
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

#ifndef OPTBENCH_ERROR_HPP
#define OPTBENCH_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace optbench {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidConfig,
  kInvalidDimension,
  kDimensionMismatch,
  kNonFinite,
  kInvalidVariant,
  kPrecondition,
  kNoViableTrial,
  kStudyFull,
  kParse,
  kIo,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries a machine-checkable code so
/// callers (and the CLI's exit-code mapping) never have to parse messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace optbench

#endif  // OPTBENCH_ERROR_HPP
