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
#include "snorm/constant_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "snorm/error.hpp"

namespace snorm {

ConstantPath::ConstantPath(NormSystem sys, std::int64_t exact_limit)
    : sys_(std::move(sys)), exact_limit_(std::max<std::int64_t>(exact_limit, 2)) {}

void ConstantPath::ensure_exact(std::int64_t length) {
  length = std::min(length, exact_limit_);
  if (length <= built_) return;
  const std::int64_t t = length;
  stride_ = t + 1;
  weights_ = sys_.padded_weights(static_cast<std::size_t>(t));
  c_.assign(static_cast<std::size_t>(t + 1), 0.0);
  choice_.assign(static_cast<std::size_t>(t + 1), 0);
  b_.assign(static_cast<std::size_t>((t + 1) * stride_), 0.0);
  auto b = [&](std::int64_t k, std::int64_t n) -> double& { return b_[static_cast<std::size_t>(k * stride_ + n)]; };
  c_[1] = 1.0;
  b(1, 1) = 1.0;
  for (std::int64_t n = 2; n <= t; ++n) {
    for (std::int64_t k = 2; k <= n; ++k) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::int64_t p = 1; p + k - 1 <= n; ++p) {
        const double cand = c_[static_cast<std::size_t>(p)] + b(k - 1, n - p);
        if (cand > best + tol_) best = cand;
      }
      b(k, n) = best;
    }
    double incumbent = 1.0;
    std::int64_t pick = 0;
    for (std::int64_t k = 2; k <= n; ++k) {
      const double cand = b(k, n) / weights_[static_cast<std::size_t>(k)];
      if (cand > incumbent + tol_) {
        incumbent = cand;
        pick = k;
      }
    }
    c_[static_cast<std::size_t>(n)] = incumbent;
    choice_[static_cast<std::size_t>(n)] = pick;
    b(1, n) = incumbent;
  }
  built_ = t;
}

bool ConstantPath::concave() {
  std::lock_guard lock(mu_);
  ensure_exact(exact_limit_);
  for (std::int64_t n = 2; n < built_; ++n) {
    const double left = c_[static_cast<std::size_t>(n)] - c_[static_cast<std::size_t>(n - 1)];
    const double right = c_[static_cast<std::size_t>(n + 1)] - c_[static_cast<std::size_t>(n)];
    if (right > left + 1e-12) return false;
  }
  return true;
}

void ConstantPath::require_balanced_ok(std::int64_t length) {
  ensure_exact(exact_limit_);
  for (std::int64_t n = 2; n < built_; ++n) {
    const double left = c_[static_cast<std::size_t>(n)] - c_[static_cast<std::size_t>(n - 1)];
    const double right = c_[static_cast<std::size_t>(n + 1)] - c_[static_cast<std::size_t>(n)];
    if (right > left + 1e-12) {
      std::ostringstream os;
      os << "flat vector of length " << length << " exceeds the exact limit " << exact_limit_
         << " and system '" << sys_.name() << "' is not concave on flat vectors";
      throw_guard(os.str());
    }
  }
}

double ConstantPath::balanced_sum(std::int64_t n, std::int64_t k) {
  const std::int64_t q = n / k;
  const std::int64_t r = n % k;
  double sum = static_cast<double>(k - r) * ones(q);
  if (r > 0) sum += static_cast<double>(r) * ones(q + 1);
  return sum;
}

double ConstantPath::ones(std::int64_t n) {
  if (n <= 0) return 0.0;
  if (n <= exact_limit_) {
    ensure_exact(n);
    return c_[static_cast<std::size_t>(n)];
  }
  if (auto it = large_.find(n); it != large_.end()) return it->second;
  double incumbent = 1.0;
  std::int64_t pick = 0;
  const double nd = static_cast<double>(n);
  for (std::int64_t k = 2; k <= n; ++k) {
    const double w = sys_.padded_weight(k);
    if (nd / w <= incumbent) break;
    const double cand = balanced_sum(n, k) / w;
    if (cand > incumbent + tol_) {
      incumbent = cand;
      pick = k;
    }
  }
  large_.emplace(n, incumbent);
  large_choice_.emplace(n, pick);
  return incumbent;
}

double ConstantPath::norm(std::int64_t length, double coefficient) {
  if (length < 0) throw_input("negative flat vector length");
  if (length == 0 || coefficient == 0.0) return 0.0;
  std::lock_guard lock(mu_);
  if (length > exact_limit_) require_balanced_ok(length);
  return std::fabs(coefficient) * ones(length);
}

double ConstantPath::best_sum(std::int64_t length, std::int64_t max_parts) {
  if (max_parts < 1) throw_input("best_sum needs at least one part");
  if (length <= 0) return 0.0;
  std::lock_guard lock(mu_);
  const std::int64_t kmax = std::min(max_parts, length);
  if (length <= exact_limit_) {
    ensure_exact(length);
    double best = -std::numeric_limits<double>::infinity();
    for (std::int64_t k = 1; k <= kmax; ++k) best = std::max(best, exact_b(k, length));
    return best;
  }
  require_balanced_ok(length);
  double best = ones(length);
  for (std::int64_t k = 2; k <= kmax; ++k) best = std::max(best, balanced_sum(length, k));
  return best;
}

std::vector<double> ConstantPath::part_sums(std::int64_t length) {
  std::vector<double> out(static_cast<std::size_t>(std::max<std::int64_t>(length, 0) + 1), 0.0);
  if (length <= 0) return out;
  std::lock_guard lock(mu_);
  if (length <= exact_limit_) {
    ensure_exact(length);
    for (std::int64_t k = 1; k <= length; ++k) out[static_cast<std::size_t>(k)] = exact_b(k, length);
    return out;
  }
  require_balanced_ok(length);
  out[1] = ones(length);
  for (std::int64_t k = 2; k <= length; ++k) out[static_cast<std::size_t>(k)] = balanced_sum(length, k);
  return out;
}

ConstantPath::Plan ConstantPath::plan(std::int64_t length) {
  Plan p;
  if (length <= 1) return p;
  std::lock_guard lock(mu_);
  if (length <= exact_limit_) {
    ensure_exact(length);
    p.parts = choice_[static_cast<std::size_t>(length)];
    if (p.parts == 0) return p;
    std::int64_t n = length;
    for (std::int64_t k = p.parts; k >= 2; --k) {
      double best = -std::numeric_limits<double>::infinity();
      std::int64_t at = 1;
      for (std::int64_t q = 1; q + k - 1 <= n; ++q) {
        const double cand = c_[static_cast<std::size_t>(q)] + exact_b(k - 1, n - q);
        if (cand > best + tol_) {
          best = cand;
          at = q;
        }
      }
      p.lengths.push_back(at);
      n -= at;
    }
    p.lengths.push_back(n);
    return p;
  }
  require_balanced_ok(length);
  ones(length);
  p.parts = large_choice_.at(length);
  if (p.parts == 0) return p;
  const std::int64_t q = length / p.parts;
  const std::int64_t r = length % p.parts;
  p.lengths.assign(static_cast<std::size_t>(p.parts - r), q);
  p.lengths.insert(p.lengths.end(), static_cast<std::size_t>(r), q + 1);
  return p;
}

}  // namespace snorm
