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

#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>

namespace snorm {

inline constexpr const char* kEngineVersion = "1.0.0";

/// FNV-1a over the raw bytes of the values.
std::uint64_t digest(std::span<const double> values);
std::uint64_t digest(std::string_view bytes, std::uint64_t seed = 1469598103934665603ull);

/// Content-addressed cache of norm values keyed by (system id, canonical
/// sub-vector). The canonical form is the list of |values| in support order,
/// which is all the norm depends on. Readers share, writers are exclusive.
class MemoTable {
 public:
  std::optional<double> find(const std::string& system_id, std::span<const double> canonical) const;
  void insert(const std::string& system_id, std::span<const double> canonical, double value);
  std::size_t size() const;
  void clear();

  /// Returns false (and leaves the table empty) on a missing, corrupt or
  /// stale-version file; `warning` then says why.
  bool load(const std::string& path, std::string* warning = nullptr);
  void save(const std::string& path) const;

 private:
  static std::string key(const std::string& system_id, std::span<const double> canonical);

  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, double> map_;
};

}  // namespace snorm
