// Copyright 2026 The rdc Authors.
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

#ifndef RDC_ERROR_H_
#define RDC_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace rdc {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidInstance,
  kParse,
  kInfeasible,
  kCapExceeded,
  kUnavailable,
  kIterationLimit,
  kRowGenerationCap,
  kInvariant,
};

std::string_view ToString(ErrorCode code);

// The single exception type thrown by the library. The code decides how a
// caller (notably the CLI) reports it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Throws kInvariant with `message` when `condition` is false.
inline void CheckInvariant(bool condition, const std::string& message) {
  if (!condition) throw Error(ErrorCode::kInvariant, message);
}

}  // namespace rdc

#endif  // RDC_ERROR_H_
