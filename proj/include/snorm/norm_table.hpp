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
#include <span>
#include <vector>

#include "snorm/norm_system.hpp"

namespace snorm {

/// Norms of every contiguous sub-run of a support, by well-founded dynamic
/// programming over interval partitions. Positions are 0-based offsets into
/// the support list, so gaps between indices cost nothing.
///
/// For a fixed right end j the table R_j[i][n] holds the best sum over
/// partitions of [i..j] into n nonempty runs:
///   R_j[i][n] = max_{i <= k} N[i][k] + R_j[k+1][n-1]
///   N[i][j]   = max(max |a|, max_n R_j[i][n] / w(max(n, l0)))
/// Ties keep the l_inf branch, then the smallest n, then the earliest split.
class NormTable {
 public:
  NormTable(std::span<const double> abs_values, const NormSystem& sys, double dp_tolerance = 1e-12);

  std::size_t size() const { return n_; }
  double norm(std::size_t i, std::size_t j) const { return norm_[i * n_ + j]; }
  /// 0 for the l_inf branch, otherwise the number of nonempty runs.
  std::int64_t choice(std::size_t i, std::size_t j) const { return choice_[i * n_ + j]; }
  double value(std::size_t i) const { return a_[i]; }
  double linf(std::size_t i, std::size_t j) const;
  std::size_t linf_position(std::size_t i, std::size_t j) const;
  double weight(std::int64_t k) const { return w_[static_cast<std::size_t>(k)]; }

  struct Partition {
    double sum = 0.0;
    std::vector<std::size_t> ends;  // last position of each run
  };
  /// Optimal split of [i..j] into exactly k nonempty runs.
  Partition best_partition(std::size_t i, std::size_t j, std::size_t k) const;
  /// Entry k (1 <= k <= j-i+1) is the best sum over exactly k runs.
  std::vector<double> best_sums(std::size_t i, std::size_t j) const;

 private:
  void fill_suffix(std::size_t lo, std::size_t j, std::size_t max_parts, std::vector<double>& r,
                   std::vector<std::size_t>* arg) const;

  std::size_t n_;
  double tol_;
  std::vector<double> a_;
  std::vector<double> w_;
  std::vector<double> norm_;
  std::vector<std::int64_t> choice_;
};

}  // namespace snorm
