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
#include <mutex>
#include <unordered_map>
#include <vector>

#include "snorm/norm_system.hpp"

namespace snorm {

/// Norms of flat vectors c * (e_1 + ... + e_L). By spreading invariance every
/// position is interchangeable, so only run lengths matter:
///   C(n) = max(1, max_{k >= 2} B_k(n) / w(max(k, l0))),
///   B_k(n) = max over compositions n = p_1 + ... + p_k of sum C(p_i).
///
/// Lengths up to `exact_limit` use the full composition DP. Longer lengths use
/// balanced compositions (parts floor(n/k), ceil(n/k)), which are optimal
/// whenever C is discretely concave; the exact table is checked for
/// concavity and the balanced route is refused for systems that fail it.
class ConstantPath {
 public:
  explicit ConstantPath(NormSystem sys, std::int64_t exact_limit = 1200);

  const NormSystem& system() const { return sys_; }
  std::int64_t exact_limit() const { return exact_limit_; }

  /// |c| * C(L); zero for L == 0.
  double norm(std::int64_t length, double coefficient = 1.0);
  /// Best sum over at most k runs, for the flat vector of ones.
  double best_sum(std::int64_t length, std::int64_t max_parts);

  /// Top-level optimal structure of the flat vector: 0 parts = l_inf branch,
  /// otherwise the run lengths in order.
  struct Plan {
    std::int64_t parts = 0;
    std::vector<std::int64_t> lengths;
  };
  Plan plan(std::int64_t length);

  /// Entry k (1 <= k <= length) is the best sum over exactly k runs.
  std::vector<double> part_sums(std::int64_t length);

  /// True when the exact table (as far as built) is discretely concave.
  bool concave();

 private:
  void ensure_exact(std::int64_t length);
  double ones(std::int64_t n);  // requires lock held
  double balanced_sum(std::int64_t n, std::int64_t k);
  double exact_b(std::int64_t k, std::int64_t n) const { return b_[static_cast<std::size_t>(k * stride_ + n)]; }
  void require_balanced_ok(std::int64_t length);

  NormSystem sys_;
  std::int64_t exact_limit_;
  double tol_ = 1e-12;
  std::mutex mu_;
  std::int64_t built_ = 0;
  std::int64_t stride_ = 0;
  std::vector<double> c_;       // c_[n], n <= built_
  std::vector<std::int64_t> choice_;
  std::vector<double> b_;       // b_[k * stride_ + n]
  std::unordered_map<std::int64_t, double> large_;
  std::unordered_map<std::int64_t, std::int64_t> large_choice_;
  std::vector<double> weights_;
};

}  // namespace snorm
