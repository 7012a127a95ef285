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

#include "snorm/engine.hpp"
#include "snorm/error.hpp"
#include "snorm/sequence_lab.hpp"

using namespace snorm;

namespace {

const Engine& F() {
  static const Engine e(NormSystem::f_system());
  return e;
}

double f(double x) { return std::log2(x + 1.0); }

FinVector normalized(const FinVector& x) { return x.scaled(1.0 / F().norm_value(x)); }

// Successive normalized blocks with random lengths, gaps and values.
BlockSequence random_blocks(std::mt19937_64& rng, std::size_t count, int max_len, Index max_gap = 2) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<Index> gap(0, max_gap);
  std::uniform_real_distribution<double> val(0.2, 2.0);
  std::bernoulli_distribution neg(0.3);
  std::vector<FinVector> out;
  Index next = 1;
  for (std::size_t b = 0; b < count; ++b) {
    next += gap(rng);
    std::vector<Coord> c;
    const int l = len(rng);
    for (int i = 0; i < l; ++i) c.push_back({next++, neg(rng) ? -val(rng) : val(rng)});
    out.push_back(normalized(FinVector::from_coords(c)));
  }
  return BlockSequence(out);
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

TEST_SUITE("sequence-lab") {
  TEST_CASE("block sequences must be successive") {
    CHECK_NOTHROW(BlockSequence({FinVector::unit(1), FinVector::unit(2)}));
    CHECK_THROWS_AS(BlockSequence({FinVector::unit(2), FinVector::unit(2)}), Error);
    CHECK_THROWS_AS(BlockSequence({FinVector::unit(1), FinVector{}}), Error);
    const BlockSequence e = BlockSequence::unit_basis(3);
    const std::vector<double> a{1, -2, 0.5};
    CHECK(e.combine(a) == FinVector::from_coords({{1, 1}, {2, -2}, {3, 0.5}}));
  }

  TEST_CASE("greedy split of four equal coordinates") {
    const FinVector y = normalized(FinVector::constant(1, 4, 1.0));
    const SplitProfile p = greedy_split(F(), y, 0.7);
    REQUIRE(p.count() == 4);
    const double a = f(4) / 4;
    for (double n : p.piece_norms) CHECK(n == doctest::Approx(a).epsilon(1e-12));
    CHECK(2 * a / f(2) > 0.7);
  }

  TEST_CASE("greedy split keeps a vector that already fits") {
    const FinVector y = FinVector::from_coords({{2, 0.3}, {5, -0.2}});
    const SplitProfile p = greedy_split(F(), y, 1.0);
    REQUIRE(p.count() == 1);
    CHECK(p.pieces[0] == y);
  }

  TEST_CASE("greedy split includes the exact boundary") {
    const FinVector y = normalized(FinVector::constant(1, 8, 1.0));
    const SplitProfile p = greedy_split(F(), y, 0.5);
    REQUIRE(p.count() == 4);
    for (const FinVector& piece : p.pieces) CHECK(piece.support_size() == 2);
    for (double n : p.piece_norms) CHECK(n == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p.boundary_hit);
  }

  TEST_CASE("greedy split reconstructs the vector with successive pieces") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> val(-1, 1);
    for (int t = 0; t < 20; ++t) {
      std::vector<double> d(14);
      for (double& x : d) x = val(rng);
      const FinVector y = normalized(FinVector::from_dense(d));
      const double eps = 0.5;
      if (elementary_norms(y).linf > eps) continue;
      const SplitProfile p = greedy_split(F(), y, eps);
      FinVector sum;
      for (std::size_t i = 0; i < p.count(); ++i) {
        if (i > 0) CHECK(p.pieces[i - 1].max_index() < p.pieces[i].min_index());
        CHECK(p.piece_norms[i] <= eps + 1e-9);
        sum = sum + p.pieces[i];
      }
      CHECK(sum == y);
      const SplitProfile again = greedy_split(F(), y, eps);
      CHECK(again.piece_norms == p.piece_norms);
    }
  }

  TEST_CASE("greedy split refuses an oversized coordinate") {
    CHECK(error_of([] { (void)greedy_split(F(), FinVector::unit(1, 2.0), 1.0); }) == ErrorCode::kInput);
    CHECK(error_of([] { (void)greedy_split(F(), FinVector::unit(1), 0.0); }) == ErrorCode::kInput);
  }

  TEST_CASE("split bounds") {
    SplitBounds b = split_bounds(1.0);
    CHECK(b.h == 1);
    CHECK(b.H == 7);
    b = split_bounds(0.5);
    CHECK(b.h == 2);
    CHECK(b.H == 17);
    // Independent scan of the defining inequalities.
    for (double eps : {0.25, 0.3, 0.9}) {
      b = split_bounds(eps);
      CHECK(b.h == static_cast<std::int64_t>(std::ceil(1.0 / eps)));
      CHECK((b.H - 1) / f(b.H) <= 2 / eps);
      CHECK(b.H / f(b.H + 1) > 2 / eps);
    }
    CHECK(error_of([] { (void)split_bounds(2.0); }) == ErrorCode::kInput);
    CHECK(error_of([] { (void)split_bounds(0.0); }) == ErrorCode::kInput);
  }

  TEST_CASE("l1 averages and their certificates") {
    CHECK(l1_certificate(1, 37) == 1.0);
    CHECK(l1_certificate(4, 15) == doctest::Approx(std::log2(61.0) / std::log2(16.0)).epsilon(1e-12));
    CHECK(l1_certificate(8, 31) == doctest::Approx(std::log2(249.0) / std::log2(32.0)).epsilon(1e-12));
    const L1Block b = l1_average_block(F(), 4, 15, 3);
    REQUIRE(b.blocks.size() == 4);
    CHECK(b.blocks[0].min_index() == 3);
    for (const FinVector& u : b.blocks.blocks()) CHECK(F().norm_value(u) == doctest::Approx(1.0).epsilon(1e-9));
    // (1/c) sum a_k <= |sum a_k u_k| <= sum a_k on a simplex grid.
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; j <= 4 - i; ++j)
        for (int k = 0; k <= 4 - i - j; ++k) {
          const std::vector<double> a{i / 4.0, j / 4.0, k / 4.0, (4 - i - j - k) / 4.0};
          const double n = F().norm_value(b.blocks.combine(a));
          CHECK(n <= 1.0 + 1e-9);
          CHECK(n >= 1.0 / b.certificate - 1e-9);
        }
  }

  TEST_CASE("averaging lemma experiment") {
    LemmaDuoResult r = lemma_duo_experiment(F(), 1.0, 2, 8, 127);
    CHECK(r.pass);
    CHECK(r.lhs <= r.y_norm + 1.0 + 1e-9);
    CHECK(r.certificate == doctest::Approx(std::log2(1017.0) / std::log2(128.0)).epsilon(1e-12));
    CHECK(error_of([] { (void)lemma_duo_experiment(F(), 1.0, 2, 4, 127); }) == ErrorCode::kInput);
    CHECK(error_of([] { (void)lemma_duo_experiment(F(), 1.0, 2, 8, 31); }) == ErrorCode::kInput);
    r = lemma_duo_experiment(F(), 0.5, 2, 16, 1 << 16);
    CHECK(r.pass);
  }

  TEST_CASE("equivalence constants") {
    const BlockSequence e = BlockSequence::unit_basis(4);
    const auto tuples = binary_tuples(4);
    CHECK(equivalence_constant(F(), e, e, tuples).constant == 1.0);
    const BlockSequence even(
        {FinVector::unit(2), FinVector::unit(4), FinVector::unit(6), FinVector::unit(8)});
    CHECK(equivalence_constant(F(), e, even, tuples).constant == 1.0);
    std::vector<FinVector> pairs;
    for (Index i = 0; i < 3; ++i) pairs.push_back(normalized(FinVector::constant(2 * i + 1, 2, 1.0)));
    const EquivalenceResult r = equivalence_constant(F(), BlockSequence::unit_basis(3), BlockSequence(pairs), binary_tuples(3));
    CHECK(r.constant >= 1.0);
    CHECK(r.equivalent_on_family);
    CHECK(r.tuples == 7);
    CHECK(error_of([] { (void)binary_tuples(21); }) == ErrorCode::kGuard);
    CHECK(error_of([&] { (void)equivalence_constant(F(), e, BlockSequence::unit_basis(3), tuples); }) ==
          ErrorCode::kInput);
  }

  TEST_CASE("domination of the unit basis") {
    const BlockSequence e = BlockSequence::unit_basis(5);
    CHECK(dominates_basis_check(F(), e, binary_tuples(5)) == 0.0);
    std::vector<FinVector> pairs;
    for (Index i = 0; i < 3; ++i) pairs.push_back(normalized(FinVector::constant(2 * i + 1, 2, 1.0)));
    CHECK(dominates_basis_check(F(), BlockSequence(pairs), {{1, 1, 0}, {0, 1, 1}, {1, 1, 1}}) >= 0.0);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> val(-1, 1);
    const BlockSequence ys = random_blocks(rng, 4, 4);
    std::vector<std::vector<double>> coeffs(100, std::vector<double>(4));
    for (auto& c : coeffs)
      for (double& a : c) a = val(rng);
    CHECK(dominates_basis_check(F(), ys, coeffs) >= -1e-9);
    const BlockSequence unnormalized({FinVector::constant(1, 3, 1.0)});
    CHECK(error_of([&] { (void)dominates_basis_check(F(), unnormalized, {{1}}); }) == ErrorCode::kInput);
  }

  TEST_CASE("block projection") {
    std::mt19937_64 rng(31);
    const BlockSequence ys = random_blocks(rng, 4, 3, 2);
    const ProjectionOp p = build_projection(F(), ys);
    REQUIRE(p.functionals.size() == 4);
    for (std::size_t n = 0; n < ys.size(); ++n) {
      const FinVector t = p.apply(ys[n]);
      for (Index i : ys[n].support()) CHECK(t.at(i) == doctest::Approx(ys[n].at(i)).epsilon(1e-12));
      CHECK(t.support_size() == ys[n].support_size());
      CHECK(p.functionals[n].min_index() >= p.frames[n].lo);
      CHECK(p.functionals[n].max_index() <= p.frames[n].hi);
    }
    std::uniform_real_distribution<double> val(-1, 1);
    const Index top = ys[ys.size() - 1].max_index();
    for (int t = 0; t < 10; ++t) {
      std::vector<double> d(static_cast<std::size_t>(top));
      for (double& v : d) v = val(rng);
      const FinVector x = FinVector::from_dense(d);
      const FinVector tx = p.apply(x);
      const FinVector ttx = p.apply(tx);
      for (Index i = 1; i <= top; ++i) CHECK(ttx.at(i) == doctest::Approx(tx.at(i)).epsilon(1e-9).scale(1.0));
    }
    CHECK(p.apply(FinVector::unit(top + 5)).empty());
    const ProjectionReport rep = projection_norm_estimate(F(), p, {FinVector::unit(top + 5)});
    CHECK(rep.estimate == 0.0);
    CHECK(error_of([] { (void)build_projection(F(), BlockSequence({FinVector::constant(1, 2, 1.0)})); }) ==
          ErrorCode::kInput);
  }

  TEST_CASE("projection onto a unit-basis prefix is a coordinate projection") {
    const BlockSequence e = BlockSequence::unit_basis(5);
    const ProjectionOp p = build_projection(F(), e);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> val(-1, 1);
    std::vector<FinVector> samples;
    for (int t = 0; t < 20; ++t) {
      std::vector<double> d(8);
      for (double& v : d) v = val(rng);
      samples.push_back(FinVector::from_dense(d));
    }
    for (Index i = 1; i <= 5; ++i) samples.push_back(FinVector::unit(i));
    const ProjectionReport r = projection_norm_estimate(F(), p, samples);
    CHECK(r.estimate == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.within_bound);
    CHECK(r.c_e_measured);
  }
}
