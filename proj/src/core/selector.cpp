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
#include "snorm/selector.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "snorm/error.hpp"

namespace snorm {
namespace {

// log2(2^a + 1) without overflow.
double log2_1p_exp2(double a) { return a > 0 ? a + std::log2(1.0 + std::exp2(-a)) : std::log2(1.0 + std::exp2(a)); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

BigCount exact_count(std::uint64_t k) {
  BigCount b;
  b.exact = k;
  b.log2 = std::log2(static_cast<double>(k));
  b.expression = std::to_string(k);
  b.decimal = b.expression;
  return b;
}

// f(k/3) for a count that may be symbolic.
double f_third(const BigCount& k) {
  if (k.exact) return f_weight(static_cast<double>(*k.exact) / 3.0);
  return log2_1p_exp2(k.log2 - std::log2(3.0));
}

// log2 of the smallest n with f(m n) / f(n) <= 1 + eps/2, given log2 m.
double lemma_log2_n(double log2_m, double eps) {
  const double target = 1.0 + eps / 2.0;
  auto ok = [&](double lam) { return log2_1p_exp2(log2_m + lam) <= target * log2_1p_exp2(lam); };
  double lo = 0.0, hi = 2.0 * log2_m / eps + 64.0;
  if (ok(lo)) return 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

BigCount duo_threshold(Index max_supp, double eps, std::uint64_t floor) {
  if (max_supp < 1) throw_input("max supp must be positive");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw_input("eps must be positive");
  const double t = static_cast<double>(max_supp) / eps;  // need f(k/3) >= t
  if (t < 60.0) {
    auto fits = [&](std::uint64_t k) { return f_weight(static_cast<double>(k) / 3.0) >= t * (1.0 - 1e-15); };
    auto k = static_cast<std::uint64_t>(std::ceil(3.0 * (std::exp2(t) - 1.0)));
    while (k > 1 && fits(k - 1)) --k;
    while (!fits(k)) ++k;
    return exact_count(std::max<std::uint64_t>(k, floor + 1));
  }
  // k = ceil(3 (2^t - 1)) is beyond 64 bits; the floor is irrelevant here.
  BigCount b;
  b.log2 = t + std::log2(3.0);
  const bool integral = t == std::floor(t);
  if (integral) {
    std::ostringstream os;
    os << "3*(2^" << static_cast<std::int64_t>(t) << "-1)";
    b.expression = os.str();
    if (t <= 4096.0) {
      boost::multiprecision::cpp_int k = 1;
      k <<= static_cast<unsigned>(t);
      k = 3 * (k - 1);
      b.decimal = k.str();
    }
  } else {
    b.expression = "ceil(3*(2^" + fmt(t) + "-1))";
  }
  return b;
}

double EpsSchedule::at(std::size_t n) const {
  switch (kind) {
    case Kind::kGeometric:
      return std::exp2(-static_cast<double>(n));
    case Kind::kHarmonic:
      return 1.0 / static_cast<double>(n);
    case Kind::kExplicit:
      if (n == 0 || n > values.size()) throw_input("explicit eps schedule is shorter than the budget");
      return values[n - 1];
  }
  return 0.0;
}

std::string EpsSchedule::describe() const {
  switch (kind) {
    case Kind::kGeometric:
      return "geometric 2^-n";
    case Kind::kHarmonic:
      return "harmonic 1/n";
    case Kind::kExplicit:
      return "explicit";
  }
  return "";
}

SelectReport minimal_block_select(const Engine& engine, const SelectOptions& opts) {
  if (opts.budget < 1) throw_input("select needs budget >= 1");
  if (opts.source_length < 1) throw_input("source block length must be >= 1");
  if (opts.start < 1) throw_input("start index must be >= 1");
  if (opts.schedule.kind == EpsSchedule::Kind::kExplicit) {
    if (opts.schedule.values.size() < opts.budget) throw_input("explicit eps schedule is shorter than the budget");
    for (double e : opts.schedule.values)
      if (!(e > 0.0) || !std::isfinite(e)) throw_input("eps values must be positive");
  }

  const double tol = engine.options().tolerance;
  ConstantPath& cp = engine.constant_path();
  const std::int64_t q = opts.source_length;

  SelectReport rep;
  rep.schedule_summable = opts.schedule.summable();
  if (!rep.schedule_summable)
    rep.diagnostics.push_back("eps schedule " + opts.schedule.describe() +
                              " is not summable; the equivalence conclusion does not apply");

  BigCount k_prev = exact_count(1);
  Index next = opts.start;
  for (std::size_t n = 1; n <= opts.budget; ++n) {
    const double eps = opts.schedule.at(n);
    const std::int64_t kp =
        k_prev.exact && *k_prev.exact < static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())
            ? static_cast<std::int64_t>(*k_prev.exact)
            : std::numeric_limits<std::int64_t>::max();
    // Condition (A) for the normalized average of r consecutive source blocks.
    auto ratio = [&](std::int64_t r) {
      const std::int64_t len = q * r;
      return cp.best_sum(len, std::min(kp, len)) / cp.norm(len);
    };
    auto fits = [&](std::int64_t r) { return ratio(r) <= 1.0 + eps + tol; };

    std::int64_t r = 1;
    if (n > 1 || !fits(1)) {
      // Averages of at least two source blocks: doubling, then bisection.
      const std::int64_t r_cap = opts.max_length / q;
      std::int64_t lo = 1, hi = 2;
      while (hi <= r_cap && !fits(hi)) {
        lo = hi;
        hi *= 2;
      }
      if (hi > r_cap) {
        if (r_cap > lo && fits(r_cap)) {
          hi = r_cap;
        } else {
          std::ostringstream os;
          os << "step " << n << ": no average of at most " << r_cap << " source blocks satisfies condition (A) at k = "
             << k_prev.expression << "; the averaging lemma needs m = 2^" << fmt(std::log2(4.0 / eps) + k_prev.log2)
             << " blocks of length 2^" << fmt(lemma_log2_n(std::log2(4.0 / eps) + k_prev.log2, eps));
          rep.diagnostics.push_back(os.str());
          return rep;
        }
      }
      while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        (fits(mid) ? hi : lo) = mid;
      }
      r = std::max<std::int64_t>(hi, 2);
    }

    SelectStep st;
    st.n = n;
    st.eps = eps;
    st.source_blocks = r;
    const std::int64_t len = q * r;
    st.block = FinVector::constant(next, len, 1.0 / cp.norm(len));
    st.norm = engine.norm_value(st.block);
    st.k_prev = k_prev;
    st.cond_a_lhs = engine.best_sum(st.block, std::min(kp, len));
    st.cond_a_rhs = 1.0 + eps;
    st.cond_a = st.cond_a_lhs <= st.cond_a_rhs + tol && std::fabs(st.norm - 1.0) <= tol;
    st.lemma_log2_m = std::log2(4.0 / eps) + k_prev.log2;
    st.lemma_log2_n = lemma_log2_n(st.lemma_log2_m, eps);
    st.k = duo_threshold(st.block.max_index(), eps, k_prev.exact.value_or(0));
    st.cond_b_rhs = eps * f_third(st.k);
    st.cond_b = static_cast<double>(st.block.max_index()) <= st.cond_b_rhs * (1.0 + 1e-15);
    if (!st.cond_a) rep.diagnostics.push_back("step " + std::to_string(n) + ": condition (A) failed verification");
    if (!st.cond_b) rep.diagnostics.push_back("step " + std::to_string(n) + ": condition (B) failed verification");
    next = st.block.max_index() + 1;
    k_prev = st.k;
    rep.steps.push_back(std::move(st));
  }
  rep.complete = true;
  return rep;
}

}  // namespace snorm
