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
#include "snorm/sequence_lab.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "snorm/error.hpp"
#include "snorm/parallel.hpp"

namespace snorm {
namespace {

bool near(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

std::int64_t ceil_div_eps(double numerator, double eps) {
  return static_cast<std::int64_t>(std::ceil(numerator / eps - 1e-12));
}

}  // namespace

BlockSequence::BlockSequence(std::vector<FinVector> blocks) : blocks_(std::move(blocks)) {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].empty()) {
      std::ostringstream os;
      os << "block " << i + 1 << " is zero";
      throw_input(os.str());
    }
    if (i > 0 && blocks_[i - 1].max_index() >= blocks_[i].min_index()) {
      std::ostringstream os;
      os << "blocks " << i << " and " << i + 1 << " are not successive";
      throw_input(os.str());
    }
  }
}

FinVector BlockSequence::combine(std::span<const double> coeffs) const {
  if (coeffs.size() != blocks_.size()) throw_input("coefficient tuple length differs from the block count");
  return linear_combination(blocks_, coeffs);
}

BlockSequence BlockSequence::unit_basis(std::size_t n) {
  std::vector<FinVector> e;
  e.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) e.push_back(FinVector::unit(static_cast<Index>(i)));
  return BlockSequence(std::move(e));
}

void require_normalized(const Engine& engine, const BlockSequence& ys) {
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double v = engine.norm_value(ys[i]);
    if (!near(v, 1.0, engine.options().tolerance)) {
      std::ostringstream os;
      os.precision(17);
      os << "block " << i + 1 << " is not normalized (norm " << v << ")";
      throw_input(os.str());
    }
  }
}

// --- greedy splitting -------------------------------------------------------

SplitProfile greedy_split(const Engine& engine, const FinVector& y, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw_input("greedy_split needs eps > 0");
  const double tol = engine.options().tolerance;
  const double cap = eps + tol * std::max(1.0, eps);
  const auto coords = y.coords();
  for (const Coord& c : coords) {
    if (std::fabs(c.value) > cap) {
      std::ostringstream os;
      os.precision(17);
      os << "coordinate exceeds eps at index " << c.index << " (|y_i| = " << std::fabs(c.value) << ")";
      throw_input(os.str());
    }
  }
  SplitProfile out;
  out.eps = eps;
  if (y.empty()) return out;

  const std::size_t n = coords.size();
  const bool flat = n >= 2 && y.is_constant_modulus();
  std::optional<NormTable> table;
  if (!flat) table.emplace(engine.table(y));
  const double c = std::fabs(coords.front().value);
  auto run_norm = [&](std::size_t i, std::size_t j) {
    if (flat) return engine.constant_path().norm(static_cast<std::int64_t>(j - i + 1), c);
    return table->norm(i, j);
  };

  std::size_t start = 0;
  while (start < n) {
    // Prefix norms are nondecreasing (bimonotone basis): binary search the last
    // end whose run still fits.
    std::size_t lo = start, hi = n - 1;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo + 1) / 2;
      if (run_norm(start, mid) <= cap)
        lo = mid;
      else
        hi = mid - 1;
    }
    const double v = run_norm(start, lo);
    out.pieces.push_back(FinVector::from_coords({coords.begin() + static_cast<std::ptrdiff_t>(start),
                                                 coords.begin() + static_cast<std::ptrdiff_t>(lo + 1)}));
    out.piece_norms.push_back(v);
    if (near(v, eps, tol)) out.boundary_hit = true;
    start = lo + 1;
  }
  return out;
}

SplitBounds split_bounds(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw_input("split_bounds needs 0 < eps <= 1");
  SplitBounds b;
  b.h = std::max<std::int64_t>(1, ceil_div_eps(1.0, eps));
  const double bound = 2.0 / eps + 1e-12;
  auto ok = [&](std::int64_t l) { return static_cast<double>(l - 1) / f_weight(static_cast<double>(l)) <= bound; };
  std::int64_t lo = 1, hi = 2;
  while (ok(hi)) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? lo : hi) = mid;
  }
  b.H = lo;
  return b;
}

// --- l1-average blocks --------------------------------------------------------

double l1_certificate(std::int64_t m, std::int64_t n_len) {
  if (m < 1 || n_len < 1) throw_input("l1 blocks need m >= 1 and n >= 1");
  if (m == 1) return 1.0;
  return f_weight(static_cast<double>(m) * static_cast<double>(n_len)) / f_weight(static_cast<double>(n_len));
}

L1Block l1_average_block(const Engine& engine, std::int64_t m, std::int64_t n_len, Index start) {
  const double cert = l1_certificate(m, n_len);
  if (start < 1) throw_input("l1 blocks need start >= 1");
  L1Block out;
  out.m = m;
  out.n_len = n_len;
  out.start = start;
  out.certificate = cert;
  out.coefficient = n_len == 1 ? 1.0 : f_weight(static_cast<double>(n_len)) / static_cast<double>(n_len);
  std::vector<FinVector> blocks;
  blocks.reserve(static_cast<std::size_t>(m));
  for (std::int64_t k = 0; k < m; ++k) blocks.push_back(FinVector::constant(start + k * n_len, n_len, out.coefficient));
  out.blocks = BlockSequence(std::move(blocks));
  const double v = engine.norm_value(out.blocks[0]);
  if (!near(v, 1.0, engine.options().tolerance)) {
    std::ostringstream os;
    os.precision(17);
    os << "flat block of length " << n_len << " has norm " << v << ", expected 1";
    throw_property(os.str());
  }
  return out;
}

LemmaDuoResult lemma_duo_experiment(const Engine& engine, double eps, std::int64_t ell, std::int64_t m,
                                    std::int64_t n_len) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw_input("lemma-duo needs eps > 0");
  if (ell < 1) throw_input("lemma-duo needs l >= 1");
  const double cert = l1_certificate(m, n_len);
  const double tol = engine.options().tolerance;
  if (cert > 1.0 + eps / 2.0 + tol) {
    std::ostringstream os;
    os.precision(17);
    os << "precondition f(m n)/f(n) <= 1 + eps/2 violated: " << cert << " > " << 1.0 + eps / 2.0;
    throw_input(os.str());
  }
  const std::int64_t m_min = ceil_div_eps(4.0 * static_cast<double>(ell), eps);
  if (m < m_min) {
    std::ostringstream os;
    os << "precondition m >= ceil(4 l / eps) violated: " << m << " < " << m_min;
    throw_input(os.str());
  }
  const L1Block blk = l1_average_block(engine, m, n_len, 1);
  LemmaDuoResult r;
  r.eps = eps;
  r.ell = ell;
  r.m = m;
  r.n_len = n_len;
  r.certificate = cert;
  const FinVector y = FinVector::constant(1, m * n_len, blk.coefficient / static_cast<double>(m));
  r.y_norm = engine.norm_value(y);
  r.lhs = engine.best_sum(y, ell);
  r.rhs = r.y_norm + eps;
  r.pass = r.lhs <= r.rhs + tol;
  return r;
}

// --- equivalence, domination --------------------------------------------------

std::vector<std::vector<double>> binary_tuples(std::size_t length) {
  if (length > 20) throw_guard("binary tuple family limited to length 20");
  std::vector<std::vector<double>> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << length); ++mask) {
    std::vector<double> t(length);
    for (std::size_t i = 0; i < length; ++i) t[i] = (mask >> i) & 1u ? 1.0 : 0.0;
    out.push_back(std::move(t));
  }
  return out;
}

namespace {

std::vector<double> abs_tuple(const std::vector<double>& a) {
  std::vector<double> out(a.size());
  std::transform(a.begin(), a.end(), out.begin(), [](double v) { return std::fabs(v); });
  return out;
}

}  // namespace

EquivalenceResult equivalence_constant(const Engine& engine, const BlockSequence& xs, const BlockSequence& ys,
                                       const std::vector<std::vector<double>>& coeffs, unsigned threads) {
  if (xs.size() != ys.size()) throw_input("equivalence needs sequences of equal length");
  if (coeffs.empty()) throw_input("equivalence needs a nonempty coefficient family");
  struct Pair {
    double x = 0.0, y = 0.0;
  };
  const auto pairs = parallel_map(coeffs.size(), threads, [&](std::size_t t) {
    const std::vector<double> a = abs_tuple(coeffs[t]);
    return Pair{engine.norm_value(xs.combine(a)), engine.norm_value(ys.combine(a))};
  });
  EquivalenceResult r;
  r.tuples = coeffs.size();
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    const Pair& p = pairs[t];
    if (p.x == 0.0 && p.y == 0.0) continue;
    if (p.x == 0.0 || p.y == 0.0) {
      r.equivalent_on_family = false;
      if (!r.offending_tuple) r.offending_tuple = t;
      continue;
    }
    r.constant = std::max({r.constant, p.x / p.y, p.y / p.x});
  }
  return r;
}

double dominates_basis_check(const Engine& engine, const BlockSequence& ys,
                             const std::vector<std::vector<double>>& coeffs, unsigned threads) {
  if (coeffs.empty()) throw_input("domination check needs a nonempty coefficient family");
  require_normalized(engine, ys);
  const BlockSequence e = BlockSequence::unit_basis(ys.size());
  const auto margins = parallel_map(coeffs.size(), threads, [&](std::size_t t) {
    const std::vector<double> a = abs_tuple(coeffs[t]);
    return engine.norm_value(ys.combine(a)) - engine.norm_value(e.combine(a));
  });
  return *std::min_element(margins.begin(), margins.end());
}

// --- projection -------------------------------------------------------------

std::vector<double> ProjectionOp::coordinates(const FinVector& x) const {
  std::vector<double> a(functionals.size());
  for (std::size_t n = 0; n < functionals.size(); ++n) a[n] = functionals[n].apply(x);
  return a;
}

FinVector ProjectionOp::apply(const FinVector& x) const {
  const std::vector<double> a = coordinates(x);
  return blocks.combine(a);
}

ProjectionOp build_projection(const Engine& engine, const BlockSequence& ys) {
  require_normalized(engine, ys);
  ProjectionOp p;
  p.blocks = ys;
  Index lo = 1;
  for (std::size_t n = 0; n < ys.size(); ++n) {
    p.functionals.push_back(engine.norming_functional(ys[n]));
    p.frames.push_back(Interval::make(lo, ys[n].max_index()));
    lo = ys[n].max_index() + 1;
  }
  return p;
}

ProjectionReport projection_norm_estimate(const Engine& engine, const ProjectionOp& p,
                                          const std::vector<FinVector>& samples, std::optional<double> c_e,
                                          unsigned threads) {
  struct Sample {
    double ratio = 0.0;
    std::vector<double> tuple;
  };
  const auto evals = parallel_map(samples.size(), threads, [&](std::size_t s) {
    Sample out;
    const FinVector& x = samples[s];
    const double nx = engine.norm_value(x);
    if (nx == 0.0) return out;
    out.tuple = abs_tuple(p.coordinates(x));
    out.ratio = engine.norm_value(p.apply(x)) / nx;
    return out;
  });
  ProjectionReport r;
  r.samples = samples.size();
  std::vector<std::vector<double>> tuples;
  for (const Sample& s : evals) {
    r.estimate = std::max(r.estimate, s.ratio);
    if (std::any_of(s.tuple.begin(), s.tuple.end(), [](double v) { return v != 0.0; })) tuples.push_back(s.tuple);
  }
  if (c_e) {
    r.c_e = *c_e;
  } else {
    r.c_e_measured = true;
    if (!tuples.empty())
      r.c_e = equivalence_constant(engine, p.blocks, BlockSequence::unit_basis(p.blocks.size()), tuples, threads)
                  .constant;
  }
  r.bound = r.c_u * r.c_e * r.c_d;
  r.within_bound = r.estimate <= r.bound + 1e-6;
  return r;
}

}  // namespace snorm
