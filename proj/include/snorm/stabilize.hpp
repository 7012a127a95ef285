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

// Finite demonstration of subsequence stabilization: nested index sets M_n
// on which the greedy splitting at scale eps(n) has a constant piece count
// p(n) and piece sequences agree up to 1 + eps(n) on a test family. The
// infinite extraction is replaced by clustering; this certifies nothing
// beyond the supplied family.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "snorm/engine.hpp"
#include "snorm/selector.hpp"
#include "snorm/sequence_lab.hpp"

namespace snorm {

struct StabilizeOptions {
  std::size_t depth = 3;
  /// eps(1) = 1; eps(n) = schedule.at(n - 1) for n >= 2.
  EpsSchedule schedule;
  /// k_n for the joint agreement check; k_n = n when empty.
  std::vector<std::int64_t> ks;
  /// Joint checks whose combined support exceeds this are skipped.
  std::size_t joint_support_cap = 192;
  unsigned threads = 1;
};

struct GrowthCheck {
  double l1_sum = 0.0;     // sum_{i<n} |y_i|_l1
  double l1_bound = 0.0;   // f(h(eps(n))) 2^-n
  bool l1_ok = false;
  double piece_term = 0.0;  // p(n-1) eps(n)
  double piece_bound = 0.0; // 2^-n
  bool piece_ok = false;
};

struct JointCheck {
  bool performed = false;
  std::string note;
  std::vector<std::size_t> s, t;  // 1-based member indices
  double constant = 1.0;
  bool ok = false;
};

struct StabilizationLevel {
  std::size_t n = 0;
  double eps = 0.0;
  std::int64_t k = 0;
  std::int64_t p = 0;
  std::vector<std::size_t> members;  // M_n, 1-based
  std::size_t filtered_linf = 0;     // dropped by |x|_inf <= eps/2
  std::size_t clusters = 0;
  std::optional<GrowthCheck> growth;  // n >= 2
  JointCheck joint;
};

struct StabilizationState {
  std::vector<StabilizationLevel> levels;
  std::vector<std::size_t> selected;  // min M_n
  bool complete = false;
  std::size_t level_reached = 0;
  std::vector<std::string> diagnostics;
};

/// Members are normalized internally before splitting.
StabilizationState stabilize_subsequence(const Engine& engine, const BlockSequence& family,
                                         const StabilizeOptions& opts);

/// eps(n) as used by stabilize_subsequence.
double stabilization_eps(const EpsSchedule& schedule, std::size_t n);

/// c(n) = sum_{i=n}^{N} (2^-i + eps(i)).
double c_coefficient(std::size_t n, std::size_t N, const EpsSchedule& schedule);

}  // namespace snorm
