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
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "snorm/auditor.hpp"
#include "snorm/engine.hpp"
#include "snorm/error.hpp"

using namespace snorm;

namespace {

double f(double x) { return std::log2(x + 1.0); }

const AuditRow* row_at(const AuditReport& r, double xi, double xi2) {
  for (const AuditRow& row : r.rows)
    if (std::fabs(row.xi - std::log2(xi)) < 1e-12 && std::fabs(row.xi2 - std::log2(xi2)) < 1e-12) return &row;
  return nullptr;
}

template <class Fn>
ErrorCode error_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInput;
}

}  // namespace

TEST_SUITE("inequality-auditor") {
  TEST_CASE("E1") {
    AuditReport r = audit_e1(3, Grid::from_values({2}));
    CHECK(r.min_margin == doctest::Approx(std::log2(3.0) * 2 / 3 - 1).epsilon(1e-12));
    CHECK_FALSE(r.counterexample);
    r = audit_e1(2, Grid::from_values({2}));
    CHECK(r.min_margin == doctest::Approx(f(2) / 2 - 1).epsilon(1e-12));
    CHECK(r.min_margin < 0);
    REQUIRE(r.counterexample);
    CHECK(r.counterexample->margin == r.min_margin);
    r = audit_e1(3, Grid::from_values({std::exp2(30)}));
    CHECK(r.min_margin == doctest::Approx(f(std::exp2(30)) * 2 / 3 - 1).epsilon(1e-12));
    CHECK(r.min_margin > 0);
  }

  TEST_CASE("printed E2 and its counterexample") {
    const double big = std::exp2(40);
    const AuditReport r = audit_e2_printed(4, Grid::from_values({4, big}));
    const AuditRow* bad = row_at(r, 4, big);
    REQUIRE(bad);
    CHECK(bad->margin == doctest::Approx(4 * f(4) - (f(4 * big) - f(4))).epsilon(1e-12));
    CHECK(bad->margin < 0);
    const AuditRow* same = row_at(r, 4, 4);
    REQUIRE(same);
    CHECK(same->margin == doctest::Approx(4 * f(4) - (f(16) - f(4))).epsilon(1e-12));
    CHECK(same->margin > 0);
    const AuditRow* flip = row_at(r, big, 4);
    REQUIRE(flip);
    CHECK(flip->margin > 0);
    REQUIRE(r.counterexample);
    CHECK(r.counterexample->xi == 2.0);
    CHECK(r.counterexample->xi2 == 40.0);
    CHECK(printed_e2_expects_counterexample(4, Grid::from_values({4, big})));
    CHECK_FALSE(printed_e2_expects_counterexample(4, Grid::from_values({4, 8})));
  }

  TEST_CASE("corrected E2 is subadditivity") {
    // f(1) + f(1) - f(1 * 1) = 1 + 1 - 1
    AuditReport r = audit_e2_corrected(Grid::from_values({1}));
    CHECK(r.min_margin == doctest::Approx(1.0).epsilon(1e-12));
    r = audit_e2_corrected(Grid::from_values({4, std::exp2(40)}));
    const AuditRow* row = row_at(r, 4, std::exp2(40));
    REQUIRE(row);
    CHECK(row->margin == doctest::Approx(f(4) + f(std::exp2(40)) - f(std::exp2(42))).epsilon(1e-9));
    CHECK(row->margin == doctest::Approx(std::log2(5.0) - 2).epsilon(1e-9));
    r = audit_e2_corrected(Grid::geometric(0, 256, 4));
    CHECK(r.min_margin >= 0);
    CHECK_FALSE(r.counterexample);
    r = audit_e2_corrected(Grid::from_values({std::exp2(200), 1}));
    row = row_at(r, std::exp2(200), 1);
    REQUIRE(row);
    CHECK(row->margin > 0);
    CHECK(row->margin <= 1);
  }

  TEST_CASE("E3 and E4") {
    AuditReport r = audit_e3(2, Grid::from_values({2}));
    const double s = std::sqrt(f(2));
    CHECK(r.min_margin == doctest::Approx(2 * s - std::log2(std::pow(2.0, 1 / s) + 1)).epsilon(1e-12));
    r = audit_e4(2, Grid::from_values({1}), Grid::from_values({2}));
    CHECK(r.min_margin == doctest::Approx(f(2)).epsilon(1e-12));
    r = audit_e4(2, Grid::from_values({10}), Grid::from_values({4}));
    CHECK(r.min_margin == doctest::Approx(20 * f(4) - std::log2(std::pow(4.0, 10) + 1)).epsilon(1e-12));
  }

  TEST_CASE("empty domains are rejected") {
    CHECK(error_of([] { (void)audit_e1(3, Grid::from_values({1.5})); }) == ErrorCode::kInput);
    CHECK(error_of([] { (void)find_min_c(Grid::from_values({}), default_nu_grid()); }) == ErrorCode::kInput);
  }

  TEST_CASE("smallest admissible constant") {
    const double c = find_min_c(default_xi_grid(), default_nu_grid());
    CHECK(c >= 2.71);
    CHECK(c <= 4.0);
    CHECK(c >= f(2) / (f(2) - 1));
    CHECK(audit_e1(c, default_xi_grid()).min_margin >= 0);
    CHECK(audit_e1(c - 0.01, default_xi_grid()).min_margin < 0);
    const double huge = find_min_c(Grid::from_values({std::exp2(64)}), default_nu_grid());
    CHECK(huge < 1.1);
  }

  TEST_CASE("gamma") {
    CHECK(gamma_factor(20, 2) == doctest::Approx(1 / (1 - 2 / std::sqrt(f(std::exp2(20))))).epsilon(1e-12));
    CHECK(error_of([] { (void)gamma_factor(std::log2(15.0), 2); }) == ErrorCode::kDomain);
    CHECK(gamma_factor(3, 0) == 1.0);
    double prev = gamma_factor(20, 2);
    for (double l : {40.0, 80.0, 1000.0, 1e6}) {
      const double g = gamma_factor(l, 2);
      CHECK(g < prev);
      CHECK(g > 1);
      prev = g;
    }
  }

  TEST_CASE("beta against the tower oracle") {
    BetaResult b = beta(20, 2);
    CHECK(b.converged);
    CHECK(b.tail <= 1e-12);
    REQUIRE(b.factors.size() >= 3);
    CHECK(b.factors[0] == doctest::Approx(2.096).epsilon(1e-3));
    CHECK(b.factors[1] == doctest::Approx(1.120).epsilon(1e-3));
    CHECK(b.factors[2] == doctest::Approx(1.005).epsilon(1e-3));
    CHECK(b.value == doctest::Approx(static_cast<double>(oracle::tower_product(20, 2, false, 8))).epsilon(1e-12));
    for (std::size_t k = 0; k + 1 < b.lambdas.size(); ++k) CHECK(b.lambdas[k + 1] >= b.lambdas[k] * b.lambdas[k]);

    const BetaResult zero = beta(20, 0);
    CHECK(zero.value == doctest::Approx(static_cast<double>(oracle::tower_product(20, 0, false, 8))).epsilon(1e-12));
    for (double x : zero.factors) CHECK(x > 1);

    const BetaResult t = beta_tilde(30, 2);
    CHECK(t.converged);
    CHECK(t.value == doctest::Approx(static_cast<double>(oracle::tower_product(30, 2, true, 8))).epsilon(1e-12));
    CHECK(beta_tilde(30, 0).value ==
          doctest::Approx(static_cast<double>(oracle::tower_product(30, 0, true, 8))).epsilon(1e-12));
  }

  TEST_CASE("beta tail bounds are rigorous and beta decreases in r") {
    for (double d : {0.0, 1.0, 2.0}) {
      const BetaResult full = beta(20, d);
      const BetaResult coarse = beta(20, d, 1e-2);
      CHECK(coarse.terms <= full.terms);
      CHECK(std::fabs(full.value - coarse.value) <= coarse.tail);
    }
    CHECK(beta(20, 2).value >= beta(40, 2).value);
    CHECK(beta(40, 2).value >= beta(80, 2).value);
    CHECK(beta(80, 2).value >= 1.0);
  }

  TEST_CASE("beta for large constants") {
    const double d = 4 * std::pow(2.71, 3);
    const BetaResult b = beta(8000, d);
    CHECK(b.converged);
    CHECK(b.terms <= 10);
    CHECK(b.tail <= 1e-12);
    // With d = 108 the first factor is undefined: f(2^8000) = 8000 < 108^2.
    CHECK(error_of([] { (void)beta(8000, 108); }) == ErrorCode::kDomain);
  }

  TEST_CASE("layer descent margin") {
    const Engine e(NormSystem::f_system());
    const FinVector x = FinVector::constant(1, 4, 1.0);
    const PenteResult p = pente_margin(e, x, 2, 1.1);
    CHECK(p.lhs == doctest::Approx(e.triple_norm(x, 2)).epsilon(1e-12));
    CHECK(p.gamma == doctest::Approx(1 / (1 - 1.1 / std::sqrt(f(2)))).epsilon(1e-12));
    CHECK(p.rhs == doctest::Approx(p.gamma * p.sup).epsilon(1e-12));
    CHECK(p.margin == doctest::Approx(p.rhs - p.lhs).epsilon(1e-12));
    CHECK(error_of([&] { (void)pente_margin(e, FinVector::unit(1), 2, 1.1); }) == ErrorCode::kInput);
    CHECK(error_of([&] { (void)pente_margin(e, FinVector::constant(1, 17, 1.0), 2, 1.1); }) == ErrorCode::kGuard);
  }

  TEST_CASE("g-norm dominates f-norm") {
    const ScalarFgCheck s = scalar_fg_check(1000000);
    CHECK(s.f_ge_g_shift);
    CHECK(s.g_double_eq_f);
    CHECK_FALSE(s.first_failure);
    for (std::int64_t l : {2, 3, 10, 999, 1000000}) {
      CHECK(oracle::g(2.0 * l) == oracle::f(l));
      CHECK(oracle::f(l) >= oracle::g(l + 1.0));
    }
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> val(-2, 2);
    std::vector<FinVector> xs;
    for (int t = 0; t < 40; ++t) {
      std::vector<double> d(1 + t % 7);
      for (double& v : d) v = val(rng);
      xs.push_back(FinVector::from_dense(d));
    }
    for (const GNormRow& r : gnorm_compare(xs)) CHECK(r.margin >= -1e-9);
  }
}
