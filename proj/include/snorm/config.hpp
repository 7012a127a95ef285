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

// Run configuration and reproducible run records.

#include <cstdint>
#include <optional>
#include <string>

#include "snorm/json_io.hpp"

namespace snorm {

struct Config {
  double tolerance = 1e-9;
  std::size_t support_guard = 4096;
  Json system = "f";  // "f", "g" or a custom system object
  std::optional<std::string> cache_path;
  unsigned parallelism = 1;

  /// Throws Error(kInput) when tolerance <= 0 or guard < 1.
  void validate() const;
  Json to_json() const;
  /// Missing keys keep their defaults; unknown keys are rejected.
  static Config from_json(const Json& j);
  static Config load(const std::string& path);
};

/// A command, its inputs and its outputs. Replaying the command under the
/// same config must reproduce the outputs bitwise.
struct RunRecord {
  std::string verb;
  std::string sub;
  Json args;
  Config config;
  std::string inputs_digest;  // hex FNV-1a over the canonical command + config
  std::string output_json;
  std::string output_csv;
  int outcome = 0;
  double timing_ms = 0.0;
  std::string engine_version;

  Json to_json() const;
  static RunRecord from_json(const Json& j);
};

/// Hex digest of the canonical (verb, sub, args, config without cache path).
std::string inputs_digest(const std::string& verb, const std::string& sub, const Json& args, const Config& cfg);

}  // namespace snorm
