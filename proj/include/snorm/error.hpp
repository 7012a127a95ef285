// Copyright 2026 The snorm Authors
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

namespace snorm {

// Values match the CLI exit codes (domain errors are reported as input errors).
enum class ErrorCode {
  kPropertyViolation = 1,
  kInput = 2,
  kGuard = 3,
  kDomain = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_input(const std::string& msg) { throw Error(ErrorCode::kInput, msg); }
[[noreturn]] inline void throw_domain(const std::string& msg) { throw Error(ErrorCode::kDomain, msg); }
[[noreturn]] inline void throw_guard(const std::string& msg) { throw Error(ErrorCode::kGuard, msg); }
[[noreturn]] inline void throw_property(const std::string& msg) {
  throw Error(ErrorCode::kPropertyViolation, msg);
}

}  // namespace snorm
