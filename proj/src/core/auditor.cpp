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
#include "snorm/auditor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "snorm/error.hpp"
#include "snorm/parallel.hpp"

namespace snorm {

double softplus2(double lambda) {
  if (lambda > 0) return lambda + std::log2(1.0 + std::exp2(-lambda));
  return std::log2(1.0 + std::exp2(lambda));
}

Grid Grid::geometric(int j_lo, int j_hi, int per_octave) {
  if (per_octave < 1) throw_input("grid needs at least one point per octave");
  Grid g;
  for (int j = j_lo; j <= j_hi; ++j) g.lambdas.push_back(static_cast<double>(j) / per_octave);
  std::ostringstream os;
  os << "2^(j/" << per_octave << "), j=" << j_lo << ".." << j_hi;
  g.description = os.str();
  return g;
}

Grid Grid::from_values(std::vector<double> xis, std::string description) {
  Grid g;
  for (double x : xis) {
    if (!(x > 0.0) || !std::isfinite(x)) throw_input("grid values must be positive and finite");
    g.lambdas.push_back(std::log2(x));
  }
  g.description = std::move(description);
  return g;
}

Grid default_xi_grid() { return Grid::geometric(4, 256, 4); }
Grid default_nu_grid() { return Grid::geometric(0, 20, 2); }

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool at_least(double lambda, double value) { return lambda >= std::log2(value) - 1e-12; }

std::vector<double> domain(const Grid& g, double lower) {
  std::vector<double> out;
  for (double l : g.lambdas)
    if (at_least(l, lower)) out.push_back(l);
  return out;
}

AuditReport finish(std::string id, std::string grid, double c, std::vector<std::vector<AuditRow>> chunks) {
  AuditReport rep;
  rep.id = std::move(id);
  rep.grid = std::move(grid);
  rep.c = c;
  for (auto& ch : chunks)
    for (AuditRow& r : ch) rep.rows.push_back(r);
  rep.points = rep.rows.size();
  if (rep.rows.empty()) throw_input("audit " + rep.id + ": no grid points inside the domain");
  const auto it = std::min_element(rep.rows.begin(), rep.rows.end(),
                                   [](const AuditRow& a, const AuditRow& b) { return a.margin < b.margin; });
  rep.min_margin = it->margin;
  if (rep.min_margin < 0) rep.counterexample = Counterexample{it->xi, it->xi2, it->margin};
  return rep;
}

void require_c(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw_input("c must be positive");
}

double e1(double c, double l) {
  const double f = softplus2(l);
  return (f - 1.0) - f / c;
}
double e2p(double c, double l, double l2) {
  const double f = softplus2(l);
  return c * f - (softplus2(l + l2) - f);
}
double e2c(double l, double l2) { return softplus2(l) + softplus2(l2) - softplus2(l + l2); }
double e3(double c, double l) {
  const double s = std::sqrt(softplus2(l));
  return c * s - softplus2(l / s);
}
double e4(double c, double lnu, double l) {
  const double nu = std::exp2(lnu);
  return c * nu * softplus2(l) - softplus2(nu * l);
}

}  // namespace

AuditReport audit_e1(double c, const Grid& xi, unsigned threads) {
  require_c(c);
  const std::vector<double> pts = domain(xi, 2.0);
  auto rows = parallel_map(pts.size(), threads, [&](std::size_t i) {
    return std::vector<AuditRow>{{pts[i], kNaN, e1(c, pts[i])}};
  });
  return finish("E1", xi.description, c, std::move(rows));
}

AuditReport audit_e2_printed(double c, const Grid& xi, unsigned threads) {
  require_c(c);
  const std::vector<double> pts = domain(xi, c);
  auto rows = parallel_map(pts.size(), threads, [&](std::size_t i) {
    std::vector<AuditRow> out;
    for (double l2 : pts) out.push_back({pts[i], l2, e2p(c, pts[i], l2)});
    return out;
  });
  return finish("E2-printed", xi.description + " squared", c, std::move(rows));
}

AuditReport audit_e2_corrected(const Grid& xi, unsigned threads) {
  const std::vector<double> pts = domain(xi, 1.0);
  auto rows = parallel_map(pts.size(), threads, [&](std::size_t i) {
    std::vector<AuditRow> out;
    for (double l2 : pts) out.push_back({pts[i], l2, e2c(pts[i], l2)});
    return out;
  });
  return finish("E2-corrected", xi.description + " squared", 0.0, std::move(rows));
}

AuditReport audit_e3(double c, const Grid& xi, unsigned threads) {
  require_c(c);
  const std::vector<double> pts = domain(xi, c);
  auto rows = parallel_map(pts.size(), threads, [&](std::size_t i) {
    return std::vector<AuditRow>{{pts[i], kNaN, e3(c, pts[i])}};
  });
  return finish("E3", xi.description, c, std::move(rows));
}

AuditReport audit_e4(double c, const Grid& nu, const Grid& xi, unsigned threads) {
  require_c(c);
  const std::vector<double> pts = domain(xi, c);
  const std::vector<double> nus = domain(nu, 1.0);
  auto rows = parallel_map(pts.size(), threads, [&](std::size_t i) {
    std::vector<AuditRow> out;
    for (double ln : nus) out.push_back({pts[i], ln, e4(c, ln, pts[i])});
    return out;
  });
  return finish("E4", "nu " + nu.description + " x xi " + xi.description, c, std::move(rows));
}

bool printed_e2_expects_counterexample(double c, const Grid& xi) {
  const std::vector<double> pts = domain(xi, c);
  for (double l : pts) {
    if (l > c) continue;
    const double f = softplus2(l);
    for (double l2 : pts)
      if (l2 >= c * f + f + 1.0) return true;
  }
  return false;
}

double find_min_c(const Grid& xi, const Grid& nu, unsigned threads) {
  if (xi.empty() || nu.empty()) throw_input("find_min_c needs nonempty grids");
  const std::vector<double> corrected = domain(xi, 1.0);
  for (double a : corrected)
    for (double b : corrected)
      if (e2c(a, b) < 0) throw_property("corrected E2 fails on the grid; no c can help");
  const std::vector<double> nus = domain(nu, 1.0);
  for (int k = 101; k <= 10000; ++k) {
    const double c = k / 100.0;
    const std::vector<double> e1pts = domain(xi, 2.0);
    const std::vector<double> pts = domain(xi, c);
    const auto ok = parallel_map(std::max(e1pts.size(), pts.size()), threads, [&](std::size_t i) {
      if (i < e1pts.size() && e1(c, e1pts[i]) < 0) return false;
      if (i < pts.size()) {
        if (e3(c, pts[i]) < 0) return false;
        for (double ln : nus)
          if (e4(c, ln, pts[i]) < 0) return false;
      }
      return true;
    });
    if (std::all_of(ok.begin(), ok.end(), [](bool b) { return b; })) return c;
  }
  throw_property("no c <= 100 satisfies the inequalities on the grid");
}

double gamma_factor(double lambda, double d) {
  if (!(d >= 0.0) || !std::isfinite(d)) throw_input("d must be >= 0");
  if (std::isnan(lambda)) throw_input("log2 r must be a number");
  if (d == 0.0) return 1.0;
  const double f = softplus2(lambda);
  if (!(f > d * d)) {
    std::ostringstream os;
    os.precision(17);
    os << "gamma needs f(r) > d^2 (f(r) = " << f << ", d^2 = " << d * d << ")";
    throw_domain(os.str());
  }
  return 1.0 / (1.0 - d / std::sqrt(f));
}

namespace {

struct TowerKind {
  double sigma;  // weight(lambda) >= lambda - sigma
  double shift;  // log2 of the ratio numerator bound: w(a r) - w(r) <= shift
  double (*weight)(double);
  double (*log_ratio)(double w);  // ln(w(a r) / w(r)) given w(r)
};

double f_of_lambda(double l) { return softplus2(l); }
double g_of_lambda(double l) { return softplus2(l - 1.0); }
// f(9r) - f(r) = log2(9 - 8 / (r + 1)), r + 1 = 2^w.
double f_log_ratio(double w) { return std::log1p(std::log2(9.0 - 8.0 * std::exp2(-w)) / w); }
// g(2r) - g(r) = log2(2 - 1 / (1 + r/2)), 1 + r/2 = 2^w.
double g_log_ratio(double w) { return std::log1p(std::log2(2.0 - std::exp2(-w)) / w); }

BetaResult tower_product(const TowerKind& kind, double lambda0, double d, double tail_tol, std::size_t max_terms,
                         const char* name) {
  if (!(d >= 0.0) || !std::isfinite(d)) throw_input("d must be >= 0");
  if (!std::isfinite(lambda0)) throw_input("log2 r must be finite");
  if (!(tail_tol > 0.0)) throw_input("tail tolerance must be positive");
  BetaResult res;
  double logsum = 0.0;
  double lambda = lambda0;
  for (std::size_t k = 0; k < max_terms; ++k) {
    const double w = kind.weight(lambda);
    if (!(w > d * d)) {
      std::ostringstream os;
      os.precision(17);
      os << name << " needs w(r_" << k << ") > d^2 (w = " << w << ", d^2 = " << d * d << ")";
      throw_domain(os.str());
    }
    const double u = d / std::sqrt(w);
    const double lf = -std::log1p(-u) + kind.log_ratio(w);
    logsum += lf;
    res.lambdas.push_back(lambda);
    res.factors.push_back(std::exp(lf));
    res.terms = k + 1;
    lambda = w * lambda;

    // Tail over k' >= terms: w grows at least geometrically with ratio
    // rho = lambda_K - sigma, so both log-series are dominated by geometric ones.
    double t;
    if (!std::isfinite(lambda)) {
      t = 0.0;
    } else {
      const double wk = kind.weight(lambda);
      const double uk = d / std::sqrt(wk);
      const double rho = lambda - kind.sigma;
      if (!(rho > 1.0) || !(uk < 1.0)) continue;
      t = d / std::sqrt(wk) / ((1.0 - 1.0 / std::sqrt(rho)) * (1.0 - uk)) + kind.shift / wk / (1.0 - 1.0 / rho);
    }
    res.value = std::exp(logsum);
    res.tail = res.value * std::expm1(t);
    if (res.tail <= tail_tol) {
      res.converged = true;
      break;
    }
  }
  res.value = std::exp(logsum);
  return res;
}

}  // namespace

BetaResult beta(double lambda0, double d, double tail_tol, std::size_t max_terms) {
  static const TowerKind kind{0.0, std::log2(9.0), f_of_lambda, f_log_ratio};
  return tower_product(kind, lambda0, d, tail_tol, max_terms, "beta");
}

BetaResult beta_tilde(double lambda0, double d, double tail_tol, std::size_t max_terms) {
  static const TowerKind kind{1.0, 1.0, g_of_lambda, g_log_ratio};
  return tower_product(kind, lambda0, d, tail_tol, max_terms, "beta_tilde");
}

PenteResult pente_margin(const Engine& f_engine, const FinVector& x, double r, double d) {
  if (!(r >= 2.0) || !std::isfinite(r)) throw_input("pente needs a finite r >= 2");
  if (x.support_size() > kPenteSupportCap) {
    std::ostringstream os;
    os << "pente supports are capped at " << kPenteSupportCap;
    throw_guard(os.str());
  }
  if (x.empty()) throw_input("pente needs a nonzero vector");
  const double tol = f_engine.options().tolerance;
  PenteResult res;
  res.r = r;
  res.d = d;
  res.lhs = f_engine.triple_norm(x, r);
  const double linf = elementary_norms(x).linf;
  if (std::fabs(res.lhs - linf) <= tol * std::max(1.0, linf)) throw_input("hypothesis fails: |||x|||_r equals |x|_inf");
  res.gamma = gamma_factor(std::log2(r), d);
  const double r_inner = std::exp2(std::log2(r) * f_weight(r));

  const auto coords = x.coords();
  const std::size_t n = coords.size();
  std::vector<double> inner(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      inner[i * n + j] = f_engine.triple_norm(
          FinVector::from_coords({coords.begin() + static_cast<std::ptrdiff_t>(i),
                                  coords.begin() + static_cast<std::ptrdiff_t>(j + 1)}),
          r_inner);
  // best[k][j]: exactly k runs covering positions 0..j
  const double neg = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> best(n + 1, std::vector<double>(n, neg));
  for (std::size_t j = 0; j < n; ++j) best[1][j] = inner[j];
  for (std::size_t k = 2; k <= n; ++k)
    for (std::size_t j = k - 1; j < n; ++j)
      for (std::size_t s = k - 2; s < j; ++s)
        best[k][j] = std::max(best[k][j], best[k - 1][s] + inner[(s + 1) * n + j]);
  const std::int64_t lo = ceil_order(r);
  res.sup = 0.0;
  for (std::size_t k = 1; k <= n; ++k)
    res.sup = std::max(res.sup, best[k][n - 1] / f_weight(static_cast<double>(std::max<std::int64_t>(
                                                     static_cast<std::int64_t>(k), lo))));
  res.rhs = res.gamma * res.sup;
  res.margin = res.rhs - res.lhs;
  return res;
}

ScalarFgCheck scalar_fg_check(std::int64_t max_l) {
  if (max_l < 2) throw_input("scalar check needs max l >= 2");
  ScalarFgCheck out;
  out.max_l = max_l;
  for (std::int64_t l = 2; l <= max_l; ++l) {
    const auto dl = static_cast<double>(l);
    const bool a = f_weight(dl) >= g_weight(dl + 1.0);
    const bool b = g_weight(2.0 * dl) == f_weight(dl);
    if (!a) out.f_ge_g_shift = false;
    if (!b) out.g_double_eq_f = false;
    if ((!a || !b) && !out.first_failure) out.first_failure = l;
  }
  return out;
}

std::vector<GNormRow> gnorm_compare(const std::vector<FinVector>& xs, const EngineOptions& opts, unsigned threads) {
  const Engine fe(NormSystem::f_system(), opts);
  const Engine ge(NormSystem::g_system(), opts);
  return parallel_map(xs.size(), threads, [&](std::size_t i) {
    GNormRow row;
    row.f_norm = fe.norm_value(xs[i]);
    row.g_norm = ge.norm_value(xs[i]);
    row.margin = row.g_norm - row.f_norm;
    return row;
  });
}

}  // namespace snorm
