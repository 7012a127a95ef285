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

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace snorm {

/// f(x) = log2(x + 1)
inline double f_weight(double x) { return std::log2(x + 1.0); }
/// g(x) = log2(1 + x/2); note g(2l) == f(l) bitwise for integer l.
inline double g_weight(double x) { return std::log2(1.0 + x / 2.0); }

/// A weight function w on integers n >= l0 together with the minimum part
/// count l0. Defines the implicit norm
///   N(x) = max(|x|_inf, sup_{n >= l0, E_1 < ... < E_n} (1/w(n)) sum N(E_i x)).
class NormSystem {
 public:
  enum class Kind { kLog2Affine, kTable };

  /// w(n) = log2(n + 1), l0 = 2.
  static NormSystem f_system();
  /// w(n) = log2(1 + n/2), l0 = 3.
  static NormSystem g_system();
  /// w(n) = log2(a + b n). Validated for n >= l0: strictly increasing and > 1.
  static NormSystem log2_affine(std::string name, int min_parts, double a, double b);
  /// w(min_parts + i) = weights[i]; larger n are rejected with a guard error.
  static NormSystem from_table(std::string name, int min_parts, std::vector<double> weights);
  /// "f", "g" (case-insensitive); anything else is an input error.
  static NormSystem builtin(const std::string& name);

  const std::string& name() const { return name_; }
  int min_parts() const { return min_parts_; }
  Kind kind() const { return kind_; }

  /// w(n) for n >= l0.
  double weight(double n) const;
  /// w(max(k, l0)): divisor when k nonempty parts are padded with parts that
  /// miss the support.
  double padded_weight(std::int64_t k) const;
  /// w(1), ..., w(count) padded; index 0 unused.
  std::vector<double> padded_weights(std::size_t count) const;

  /// Stable identity for cache keys.
  std::string id() const;

 private:
  std::string name_;
  int min_parts_ = 2;
  Kind kind_ = Kind::kLog2Affine;
  double a_ = 1.0;
  double b_ = 1.0;
  std::vector<double> table_;
};

}  // namespace snorm
