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
#include <memory>
#include <optional>

#include "snorm/constant_path.hpp"
#include "snorm/memo.hpp"
#include "snorm/norm_system.hpp"
#include "snorm/norm_table.hpp"
#include "snorm/vector.hpp"
#include "snorm/witness.hpp"

namespace snorm {

struct EngineOptions {
  double tolerance = 1e-9;        // equality claims
  double dp_tolerance = 1e-12;    // comparisons inside the DP
  std::size_t support_guard = 4096;
  std::int64_t constant_exact_limit = 1200;
  std::shared_ptr<MemoTable> memo;  // optional
};

/// The smallest l with N(x) = |x|_l, or infinity when only the l_inf term
/// attains the norm. `tie` is set when the l_inf term attains it as well.
struct Character {
  bool infinite = false;
  std::int64_t ell = 0;
  bool tie = false;

  friend bool operator==(const Character&, const Character&) = default;
};

struct NormResult {
  double value = 0.0;
  std::optional<WitnessTree> witness;
  std::optional<Character> character;
};

/// Evaluates the implicit norm of a NormSystem and everything derived from
/// it. Flat vectors (all |x_i| equal) go through ConstantPath; everything else
/// through NormTable. Copies share the flat-vector cache.
class Engine {
 public:
  explicit Engine(NormSystem sys, EngineOptions opts = {});

  const NormSystem& system() const { return sys_; }
  const EngineOptions& options() const { return opts_; }
  ConstantPath& constant_path() const { return *constant_; }

  double norm_value(const FinVector& x) const;
  NormResult norm(const FinVector& x, bool with_witness = true, bool with_character = true) const;

  /// Full interval table; throws Error(kGuard) above the support guard.
  NormTable table(const FinVector& x) const;

  /// Best sum of N(E_i x) over at most k successive parts.
  double best_sum(const FinVector& x, std::int64_t k) const;
  /// |x|_l = best_sum(x, min(l, #supp)) / w(l), for l >= l0.
  double layer_norm(const FinVector& x, std::int64_t ell) const;
  /// |||x|||_r: max of |x|_inf and |x|_l over ceil(r) <= l <= max(ceil(r), #supp).
  double triple_norm(const FinVector& x, double r) const;
  Character character(const FinVector& x) const;
  Functional norming_functional(const FinVector& x) const;
  WitnessTree witness(const FinVector& x) const;

 private:
  void guard(const FinVector& x) const;
  bool flat(const FinVector& x) const { return x.support_size() >= 2 && x.is_constant_modulus(); }
  /// Best sums over exactly k parts, k = 1..#supp (entry 0 unused).
  std::vector<double> exact_part_sums(const FinVector& x) const;

  NormSystem sys_;
  EngineOptions opts_;
  std::shared_ptr<ConstantPath> constant_;
};

/// Smallest integer l with l >= r, forgiving round-off just above an integer.
std::int64_t ceil_order(double r);

/// Convenience forms over the F system.
double norm_l(const FinVector& x, std::int64_t ell);
double triple_norm(const FinVector& x, double r);
Character character(const FinVector& x);
double constant_vector_norm(const NormSystem& sys, std::int64_t length, double coefficient);

}  // namespace snorm
