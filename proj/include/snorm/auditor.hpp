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

// Numeric audits of the analytic inequalities behind the norm estimates.
// Scale parameters are carried as lambda = log2(xi) so that towers such as
// 2^8000 stay representable; f(2^lambda) = softplus2(lambda).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "snorm/engine.hpp"
#include "snorm/vector.hpp"

namespace snorm {

/// log2(1 + 2^lambda), i.e. f(2^lambda), stable for any lambda.
double softplus2(double lambda);

/// Points are stored as lambda = log2(xi).
struct Grid {
  std::vector<double> lambdas;
  std::string description;

  /// xi = 2^(j/per_octave) for j = j_lo..j_hi.
  static Grid geometric(int j_lo, int j_hi, int per_octave);
  static Grid from_values(std::vector<double> xis, std::string description = "explicit");
  bool empty() const { return lambdas.empty(); }
};

/// xi = 2^(j/4), 2 <= xi <= 2^64.
Grid default_xi_grid();
/// nu = 2^(j/2), j = 0..20.
Grid default_nu_grid();

struct AuditRow {
  double xi = 0.0;        // as lambda
  double xi2 = 0.0;       // second parameter (xi' or nu), as lambda; NaN when unused
  double margin = 0.0;
};

struct Counterexample {
  double xi = 0.0, xi2 = 0.0;  // as lambda
  double margin = 0.0;
};

struct AuditReport {
  std::string id;
  std::string grid;
  double c = 0.0;
  std::size_t points = 0;
  double min_margin = 0.0;
  std::optional<Counterexample> counterexample;  // present iff min_margin < 0
  std::vector<AuditRow> rows;
};

/// (f(xi) - 1) - f(xi)/c over xi >= 2.
AuditReport audit_e1(double c, const Grid& xi, unsigned threads = 1);
/// c f(xi) - (f(xi xi') - f(xi)) over xi, xi' >= c.
AuditReport audit_e2_printed(double c, const Grid& xi, unsigned threads = 1);
/// f(xi) + f(xi') - f(xi xi') over xi, xi' >= 1.
AuditReport audit_e2_corrected(const Grid& xi, unsigned threads = 1);
/// c sqrt(f(xi)) - f(xi^(1/sqrt(f(xi)))) over xi >= c.
AuditReport audit_e3(double c, const Grid& xi, unsigned threads = 1);
/// c nu f(xi) - f(xi^nu) over xi >= c, nu >= 1.
AuditReport audit_e4(double c, const Grid& nu, const Grid& xi, unsigned threads = 1);

/// Whether the grid holds a pair with xi <= 2^c and xi' >= 2^(c f(xi) + f(xi) + 1),
/// where the printed second inequality must fail.
bool printed_e2_expects_counterexample(double c, const Grid& xi);

/// Smallest c = k/100 >= 1.01 passing E1, E3, E4 and corrected E2.
double find_min_c(const Grid& xi, const Grid& nu, unsigned threads = 1);

/// 1 / (1 - d / sqrt(f(2^lambda))); Error(kDomain) when f <= d^2.
double gamma_factor(double lambda, double d);

struct BetaResult {
  double value = 0.0;  // truncated product
  std::size_t terms = 0;
  double tail = 0.0;   // |beta - value| <= tail
  bool converged = false;
  std::vector<double> lambdas;  // tower, log2 r_k
  std::vector<double> factors;
};

/// prod_k gamma(r_k) f(9 r_k)/f(r_k) with r_{k+1} = r_k^{f(r_k)}.
BetaResult beta(double lambda0, double d, double tail_tol = 1e-12, std::size_t max_terms = 64);
/// prod_k 1/(1 - d/sqrt(g(r_k))) g(2 r_k)/g(r_k) with r_{k+1} = r_k^{g(r_k)}.
BetaResult beta_tilde(double lambda0, double d, double tail_tol = 1e-12, std::size_t max_terms = 64);

struct PenteResult {
  double r = 0.0;
  double d = 0.0;
  double gamma = 0.0;
  double lhs = 0.0;  // |||x|||_r
  double sup = 0.0;  // sup_{l >= r} (1/f(l)) sum |||E_i x|||_{r^{f(r)}}
  double rhs = 0.0;  // gamma * sup
  double margin = 0.0;
};

inline constexpr std::size_t kPenteSupportCap = 16;

/// Both sides of the layer-descent inequality on the F system. Refused when
/// |||x|||_r equals |x|_inf or the support exceeds kPenteSupportCap.
PenteResult pente_margin(const Engine& f_engine, const FinVector& x, double r, double d);

struct ScalarFgCheck {
  std::int64_t max_l = 0;
  bool f_ge_g_shift = true;   // f(l) >= g(l + 1), l in [2, max_l]
  bool g_double_eq_f = true;  // g(2l) == f(l) bitwise
  std::optional<std::int64_t> first_failure;
};

ScalarFgCheck scalar_fg_check(std::int64_t max_l);

struct GNormRow {
  double f_norm = 0.0;
  double g_norm = 0.0;
  double margin = 0.0;  // g - f
};

/// norm(G, x) - norm(F, x) per vector; the bound requires margin >= -tol.
std::vector<GNormRow> gnorm_compare(const std::vector<FinVector>& xs, const EngineOptions& opts = {},
                                    unsigned threads = 1);

}  // namespace snorm
