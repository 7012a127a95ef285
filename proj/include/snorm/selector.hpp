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

// Greedy block selection under the two growth conditions
//   (A)  sup_{k <= k_{n-1}, E_1 < ... < E_k} sum |E_i y_n| <= 1 + eps_n
//   (B)  max supp y_n <= eps_n f(k_n / 3)
// starting from k_0 = 1. The k_n grow like towers, so they are carried
// symbolically once they leave the 64-bit range.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "snorm/engine.hpp"
#include "snorm/vector.hpp"

namespace snorm {

/// A positive integer that may be far too large to materialize.
struct BigCount {
  std::optional<std::uint64_t> exact;  // set when it fits
  double log2 = 0.0;
  std::string expression;              // closed form, e.g. "3*(2^400-1)"
  std::optional<std::string> decimal;  // full decimal digits when affordable

  bool materialized() const { return exact.has_value(); }
};

/// Smallest k > floor with f(k/3) >= max_supp / eps.
BigCount duo_threshold(Index max_supp, double eps, std::uint64_t floor = 0);

struct EpsSchedule {
  enum class Kind { kGeometric, kHarmonic, kExplicit };
  Kind kind = Kind::kGeometric;
  std::vector<double> values;  // explicit only

  double at(std::size_t n) const;  // n >= 1
  bool summable() const { return kind != Kind::kHarmonic; }
  std::string describe() const;
};

struct SelectOptions {
  std::size_t budget = 2;                 // number of blocks y_n requested
  EpsSchedule schedule;
  std::int64_t source_length = 1;         // z_i = flat normalized block of this length; 1 = unit basis
  Index start = 1;
  std::int64_t max_length = std::int64_t{1} << 22;  // materialization cap for y_n
};

struct SelectStep {
  std::size_t n = 0;
  double eps = 0.0;
  FinVector block;                 // y_n
  std::int64_t source_blocks = 0;  // number of z_i averaged
  double norm = 0.0;
  BigCount k_prev;
  double cond_a_lhs = 0.0;
  double cond_a_rhs = 0.0;
  bool cond_a = false;
  BigCount k;
  double cond_b_rhs = 0.0;  // eps_n f(k_n/3)
  bool cond_b = false;
  // Parameters the averaging lemma would prescribe for this step.
  double lemma_log2_m = 0.0;
  double lemma_log2_n = 0.0;
};

struct SelectReport {
  std::vector<SelectStep> steps;
  bool complete = false;
  bool schedule_summable = true;
  std::vector<std::string> diagnostics;
};

SelectReport minimal_block_select(const Engine& engine, const SelectOptions& opts);

}  // namespace snorm
