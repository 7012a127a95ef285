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
// Reference evaluators used as test oracles. They are deliberately naive and
// share no code with the library: plain memoized recursion over interval
// compositions and closed-form tower products.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <tuple>
#include <vector>

namespace oracle {

inline double f(double x) { return std::log2(x + 1.0); }
inline double g(double x) { return std::log2(1.0 + x / 2.0); }

// N(a) = max(max|a_i|, max over k >= 2 nonempty consecutive runs of
// (sum of N(run)) / w(max(k, l0))).
class IntervalNorm {
 public:
  IntervalNorm(std::vector<double> values, int l0, std::function<double(double)> w)
      : a_(std::move(values)), l0_(l0), w_(std::move(w)) {
    for (double& v : a_) v = std::fabs(v);
  }

  double norm() { return a_.empty() ? 0.0 : norm(0, a_.size() - 1); }

  // Best sum over at most k runs of the whole support.
  double best_sum(std::size_t k) {
    if (a_.empty()) return 0.0;
    double best = 0.0;
    for (std::size_t j = 1; j <= std::min(k, a_.size()); ++j) best = std::max(best, runs(0, a_.size() - 1, j));
    return best;
  }

  double norm(std::size_t i, std::size_t j) {
    auto key = std::make_pair(i, j);
    if (auto it = norm_memo_.find(key); it != norm_memo_.end()) return it->second;
    double best = 0.0;
    for (std::size_t p = i; p <= j; ++p) best = std::max(best, a_[p]);
    for (std::size_t k = 2; k <= j - i + 1; ++k) {
      const double n = static_cast<double>(std::max<std::size_t>(k, static_cast<std::size_t>(l0_)));
      best = std::max(best, runs(i, j, k) / w_(n));
    }
    norm_memo_[key] = best;
    return best;
  }

 private:
  // Best sum over exactly k nonempty runs covering [i..j].
  double runs(std::size_t i, std::size_t j, std::size_t k) {
    if (k == 1) return norm(i, j);
    auto key = std::make_tuple(i, j, k);
    if (auto it = runs_memo_.find(key); it != runs_memo_.end()) return it->second;
    double best = -1.0;
    for (std::size_t m = i; m + k - 1 <= j; ++m) best = std::max(best, norm(i, m) + runs(m + 1, j, k - 1));
    runs_memo_[key] = best;
    return best;
  }

  std::vector<double> a_;
  int l0_;
  std::function<double(double)> w_;
  std::map<std::pair<std::size_t, std::size_t>, double> norm_memo_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, double> runs_memo_;
};

inline double f_norm(const std::vector<double>& v) { return IntervalNorm(v, 2, f).norm(); }
inline double g_norm(const std::vector<double>& v) { return IntervalNorm(v, 3, g).norm(); }

// Tower product prod_k gamma(r_k) * w(s r_k) / w(r_k) with lambda = log2 r,
// lambda_{k+1} = lambda_k * w(r_k), evaluated in long double with logs.
inline long double tower_product(long double lambda0, long double d, bool tilde, int factors) {
  auto w_of = [tilde](long double lambda) {
    // log2(1 + 2^lambda) or log2(1 + 2^(lambda - 1))
    const long double l = tilde ? lambda - 1.0L : lambda;
    return l > 60.0L ? l + std::log2(1.0L + std::exp2(-l)) : std::log2(1.0L + std::exp2(l));
  };
  const long double shift = tilde ? 1.0L : std::log2(9.0L);
  long double lambda = lambda0;
  long double log_prod = 0.0L;
  for (int k = 0; k < factors; ++k) {
    const long double wr = w_of(lambda);
    const long double ws = w_of(lambda + shift);
    const long double gamma = 1.0L / (1.0L - d / std::sqrt(wr));
    log_prod += std::log(gamma) + std::log(ws / wr);
    lambda = lambda * wr;
  }
  return std::exp(log_prod);
}

}  // namespace oracle
