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

// Constructive procedures on block sequences: greedy splitting, l1-average
// blocks, equivalence and domination checks, and the block projection.

#include <cstdint>
#include <optional>
#include <vector>

#include "snorm/engine.hpp"
#include "snorm/vector.hpp"
#include "snorm/witness.hpp"

namespace snorm {

/// Vectors x_1 < x_2 < ... (max supp x_i < min supp x_{i+1}).
class BlockSequence {
 public:
  BlockSequence() = default;
  /// Throws Error(kInput) on an empty block or overlapping supports.
  explicit BlockSequence(std::vector<FinVector> blocks);

  const std::vector<FinVector>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  const FinVector& operator[](std::size_t i) const { return blocks_[i]; }

  /// sum a_i x_i
  FinVector combine(std::span<const double> coeffs) const;

  /// e_1, ..., e_n
  static BlockSequence unit_basis(std::size_t n);

 private:
  std::vector<FinVector> blocks_;
};

/// Throws Error(kInput) unless every block has norm 1 within the engine
/// tolerance.
void require_normalized(const Engine& engine, const BlockSequence& ys);

// --- greedy splitting -------------------------------------------------------

struct SplitProfile {
  double eps = 0.0;
  std::vector<FinVector> pieces;
  std::vector<double> piece_norms;
  std::size_t count() const { return pieces.size(); }
  /// True when some piece norm equals eps within tolerance (and was kept).
  bool boundary_hit = false;
};

/// Maximal-support decomposition y = y(1) + ... + y(l): each piece is the
/// longest run from the current start whose norm is <= eps (ties with eps
/// included). Throws Error(kInput) if eps <= 0 or some |y_i| > eps.
SplitProfile greedy_split(const Engine& engine, const FinVector& y, double eps);

struct SplitBounds {
  std::int64_t h = 0;  // smallest l with l * eps >= 1
  std::int64_t H = 0;  // largest l with (l - 1) / f(l) <= 2 / eps
};

/// Requires 0 < eps <= 1.
SplitBounds split_bounds(double eps);

// --- l1-average blocks --------------------------------------------------------

struct L1Block {
  BlockSequence blocks;  // u_k = (f(n)/n) * (sum of e_i over block k)
  std::int64_t m = 0;
  std::int64_t n_len = 0;
  Index start = 1;
  double coefficient = 0.0;  // f(n)/n
  double certificate = 1.0;  // f(m n) / f(n)
};

/// m consecutive normalized flat blocks of length n_len. The certificate c
/// satisfies (1/c) sum|a_k| <= |sum a_k u_k| <= sum|a_k|: the flat functional
/// (1/f(mn)) sum +-e_i* gives the lower bound. The block normalization is
/// checked against the engine; Error(kPropertyViolation) if it fails.
L1Block l1_average_block(const Engine& engine, std::int64_t m, std::int64_t n_len, Index start = 1);

/// Certificate f(m n) / f(n) alone.
double l1_certificate(std::int64_t m, std::int64_t n_len);

struct LemmaDuoResult {
  double eps = 0.0;
  std::int64_t ell = 0;
  std::int64_t m = 0;
  std::int64_t n_len = 0;
  double certificate = 0.0;
  double y_norm = 0.0;
  double lhs = 0.0;  // best sum of |E_i y| over at most ell parts
  double rhs = 0.0;  // |y| + eps
  bool pass = false;
};

/// y = (1/m) sum u_k for the l1-average block; compares the best ell-part sum
/// against |y| + eps. Throws Error(kInput) naming the violated precondition
/// when f(mn)/f(n) > 1 + eps/2 or m < ceil(4 ell / eps).
LemmaDuoResult lemma_duo_experiment(const Engine& engine, double eps, std::int64_t ell, std::int64_t m,
                                    std::int64_t n_len);

// --- equivalence, domination --------------------------------------------------

struct EquivalenceResult {
  double constant = 1.0;  // empirical lower bound on the equivalence constant
  bool equivalent_on_family = true;
  std::optional<std::size_t> offending_tuple;
  std::size_t tuples = 0;
};

/// max over tuples of max(|sum a x| / |sum a y|, |sum a y| / |sum a x|), on
/// |a| (sign reduction). Only certified over the supplied family.
EquivalenceResult equivalence_constant(const Engine& engine, const BlockSequence& xs, const BlockSequence& ys,
                                       const std::vector<std::vector<double>>& coeffs, unsigned threads = 1);

/// min over tuples of |sum a y| - |sum a e|; blocks must be normalized.
double dominates_basis_check(const Engine& engine, const BlockSequence& ys,
                             const std::vector<std::vector<double>>& coeffs, unsigned threads = 1);

/// All 0/1 tuples of the given length except the zero tuple.
std::vector<std::vector<double>> binary_tuples(std::size_t length);

// --- projection -------------------------------------------------------------

struct ProjectionOp {
  BlockSequence blocks;
  std::vector<Functional> functionals;  // y*_n, support inside frame n
  std::vector<Interval> frames;         // [1 + max supp y_{n-1}, max supp y_n]

  /// T(x) = sum y_n y*_n(x)
  FinVector apply(const FinVector& x) const;
  /// (y*_n(x))_n
  std::vector<double> coordinates(const FinVector& x) const;
};

/// Throws Error(kInput) on a non-normalized block.
ProjectionOp build_projection(const Engine& engine, const BlockSequence& ys);

struct ProjectionReport {
  double estimate = 0.0;  // max |T x| / |x| over nonzero samples
  std::size_t samples = 0;
  double c_u = 1.0;
  double c_e = 1.0;
  double c_d = 1.0;
  bool c_e_measured = false;
  double bound = 1.0;  // c_u c_e c_d
  bool within_bound = true;
};

/// When c_e is not supplied it is measured by equivalence_constant against the
/// unit basis on the coefficient tuples (|y*_n(x)|) of the samples.
ProjectionReport projection_norm_estimate(const Engine& engine, const ProjectionOp& p,
                                          const std::vector<FinVector>& samples,
                                          std::optional<double> c_e = std::nullopt, unsigned threads = 1);

}  // namespace snorm
