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
#include "snorm/norm_table.hpp"

#include <algorithm>
#include <limits>

#include "snorm/error.hpp"

namespace snorm {

NormTable::NormTable(std::span<const double> abs_values, const NormSystem& sys, double dp_tolerance)
    : n_(abs_values.size()), tol_(dp_tolerance), a_(abs_values.begin(), abs_values.end()) {
  w_ = sys.padded_weights(std::max<std::size_t>(n_, 1));
  norm_.assign(n_ * n_, 0.0);
  choice_.assign(n_ * n_, 0);
  if (n_ == 0) return;

  std::vector<double> prefix(n_ + 1, 0.0);
  for (std::size_t i = 0; i < n_; ++i) prefix[i + 1] = prefix[i] + a_[i];

  // r[i * (n_ + 1) + parts] for the current right end j.
  std::vector<double> r((n_ + 1) * (n_ + 1), 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    double run_max = 0.0;
    for (std::size_t ii = j + 1; ii-- > 0;) {
      const std::size_t i = ii;
      run_max = std::max(run_max, a_[i]);
      double* ri = &r[i * (n_ + 1)];
      const std::size_t len = j - i + 1;
      if (len == 1) {
        norm_[i * n_ + j] = a_[i];
        ri[1] = a_[i];
        continue;
      }
      for (std::size_t parts = 2; parts <= len; ++parts) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t k = i; k + parts - 1 <= j; ++k) {
          const double cand = norm_[i * n_ + k] + r[(k + 1) * (n_ + 1) + parts - 1];
          if (cand > best + tol_) best = cand;
        }
        ri[parts] = best;
      }
      double incumbent = run_max;
      std::int64_t pick = 0;
      const double l1 = prefix[j + 1] - prefix[i];
      for (std::size_t parts = 2; parts <= len; ++parts) {
        // w is nondecreasing, so once the l1 bound cannot win no larger count can.
        if (l1 / w_[parts] <= incumbent) break;
        const double cand = ri[parts] / w_[parts];
        if (cand > incumbent + tol_) {
          incumbent = cand;
          pick = static_cast<std::int64_t>(parts);
        }
      }
      norm_[i * n_ + j] = incumbent;
      choice_[i * n_ + j] = pick;
      ri[1] = incumbent;
    }
  }
}

double NormTable::linf(std::size_t i, std::size_t j) const {
  return a_[linf_position(i, j)];
}

std::size_t NormTable::linf_position(std::size_t i, std::size_t j) const {
  std::size_t best = i;
  for (std::size_t k = i + 1; k <= j; ++k)
    if (a_[k] > a_[best]) best = k;
  return best;
}

void NormTable::fill_suffix(std::size_t lo, std::size_t j, std::size_t max_parts, std::vector<double>& r,
                            std::vector<std::size_t>* arg) const {
  const std::size_t width = max_parts + 1;
  const std::size_t span = j - lo + 1;
  r.assign(span * width, 0.0);
  if (arg) arg->assign(span * width, 0);
  for (std::size_t ii = j + 1; ii-- > lo;) {
    const std::size_t i = ii;
    const std::size_t row = (i - lo) * width;
    r[row + 1] = norm_[i * n_ + j];
    const std::size_t len = j - i + 1;
    for (std::size_t parts = 2; parts <= std::min(len, max_parts); ++parts) {
      double best = -std::numeric_limits<double>::infinity();
      std::size_t at = i;
      for (std::size_t k = i; k + parts - 1 <= j; ++k) {
        const double cand = norm_[i * n_ + k] + r[(k + 1 - lo) * width + parts - 1];
        if (cand > best + tol_) {
          best = cand;
          at = k;
        }
      }
      r[row + parts] = best;
      if (arg) (*arg)[row + parts] = at;
    }
  }
}

NormTable::Partition NormTable::best_partition(std::size_t i, std::size_t j, std::size_t k) const {
  if (j < i || j >= n_) throw_input("best_partition: invalid run");
  const std::size_t len = j - i + 1;
  if (k < 1 || k > len) throw_input("best_partition: part count out of range");
  Partition p;
  if (k == 1) {
    p.sum = norm(i, j);
    p.ends = {j};
    return p;
  }
  std::vector<double> r;
  std::vector<std::size_t> arg;
  fill_suffix(i, j, k, r, &arg);
  const std::size_t width = k + 1;
  p.sum = r[k];
  std::size_t pos = i;
  for (std::size_t parts = k; parts >= 2; --parts) {
    const std::size_t end = arg[(pos - i) * width + parts];
    p.ends.push_back(end);
    pos = end + 1;
  }
  p.ends.push_back(j);
  return p;
}

std::vector<double> NormTable::best_sums(std::size_t i, std::size_t j) const {
  if (j < i || j >= n_) throw_input("best_sums: invalid run");
  const std::size_t len = j - i + 1;
  std::vector<double> r;
  fill_suffix(i, j, len, r, nullptr);
  return std::vector<double>(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(len + 1));
}

}  // namespace snorm
