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

// Command dispatch shared by the C API and run-record replay.

#include <memory>
#include <string>

#include "snorm/config.hpp"
#include "snorm/memo.hpp"

namespace snorm::cmd {

struct Output {
  std::string json;
  std::string csv;
  int outcome = 0;  // 0 = all checked properties as expected
};

/// Throws snorm::Error on bad input, guard overruns and domain errors.
Output run(const Config& cfg, const std::shared_ptr<MemoTable>& memo, const std::string& verb, const std::string& sub,
           const Json& args);

}  // namespace snorm::cmd
