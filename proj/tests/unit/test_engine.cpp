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
#include <cstdio>
#include <fstream>
#include <memory>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "snorm/brute.hpp"
#include "snorm/engine.hpp"
#include "snorm/error.hpp"
#include "snorm/memo.hpp"

using namespace snorm;

namespace {

const Engine& F() {
  static const Engine e(NormSystem::f_system());
  return e;
}
const Engine& G() {
  static const Engine e(NormSystem::g_system());
  return e;
}

FinVector ones(Index n) { return FinVector::constant(1, n, 1.0); }

FinVector random_vector(std::mt19937_64& rng, std::size_t max_support, Index max_index = 20) {
  std::uniform_int_distribution<std::size_t> size(1, max_support);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  std::vector<Index> idx(static_cast<std::size_t>(max_index));
  for (Index i = 0; i < max_index; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(size(rng));
  std::sort(idx.begin(), idx.end());
  std::vector<Coord> c;
  for (Index i : idx) c.push_back({i, val(rng)});
  return FinVector::from_coords(c);
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

TEST_SUITE("norm-engine") {
  TEST_CASE("norm of small vectors") {
    NormResult r = F().norm(FinVector::unit(7));
    CHECK(r.value == 1.0);
    CHECK(r.character->infinite);
    CHECK(F().norm_value(ones(2)) == doctest::Approx(2.0 / std::log2(3.0)).epsilon(1e-12));
    CHECK(F().norm_value(ones(4)) == doctest::Approx(4.0 / std::log2(5.0)).epsilon(1e-12));
    const FinVector alt = FinVector::from_coords({{1, 1}, {2, -1}});
    CHECK(F().norm_value(alt) == F().norm_value(ones(2)));
    CHECK(F().norm_value(FinVector{}) == 0.0);
  }

  TEST_CASE("best sums") {
    CHECK(F().best_sum(ones(2), 2) == doctest::Approx(2.0));
    CHECK(F().best_sum(ones(4), 2) == doctest::Approx(4.0 / std::log2(3.0)).epsilon(1e-12));
    CHECK(F().best_sum(FinVector::unit(1), 5) == 1.0);
    CHECK(F().best_sum(ones(4), 1) == F().norm_value(ones(4)));
    std::mt19937_64 rng(11);
    for (int t = 0; t < 40; ++t) {
      const FinVector x = random_vector(rng, 7);
      oracle::IntervalNorm o(x.values(), 2, oracle::f);
      double prev = 0.0;
      for (std::int64_t k = 1; k <= 8; ++k) {
        const double s = F().best_sum(x, k);
        CHECK(s == doctest::Approx(o.best_sum(static_cast<std::size_t>(k))).epsilon(1e-12));
        CHECK(s >= prev);
        prev = s;
      }
    }
  }

  TEST_CASE("layer norms") {
    CHECK(norm_l(FinVector::unit(1), 2) == doctest::Approx(1.0 / std::log2(3.0)).epsilon(1e-12));
    CHECK(norm_l(ones(4), 2) == doctest::Approx(4.0 / (std::log2(3.0) * std::log2(3.0))).epsilon(1e-12));
    CHECK(norm_l(ones(2), 3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(norm_l(ones(2), 1), Error);
  }

  TEST_CASE("triple norm") {
    CHECK(triple_norm(ones(2), 2) == doctest::Approx(2.0 / std::log2(3.0)).epsilon(1e-12));
    CHECK(triple_norm(ones(2), 3) == doctest::Approx(1.0).epsilon(1e-12));
    for (double r : {2.0, 2.5, 7.0, 100.0}) CHECK(triple_norm(FinVector::unit(4, -1), r) == 1.0);
    CHECK(error_of([] { (void)triple_norm(ones(2), 1.5); }) == ErrorCode::kInput);
  }

  TEST_CASE("character") {
    CHECK(character(FinVector::unit(3)).infinite);
    Character c = character(ones(2));
    CHECK_FALSE(c.infinite);
    CHECK(c.ell == 2);
    c = character(ones(3));
    CHECK(c.ell == 3);
    CHECK_FALSE(c.tie);
    CHECK(error_of([] { (void)character(FinVector{}); }) == ErrorCode::kInput);
  }

  TEST_CASE("character flags a tie with the sup-norm branch") {
    // Under w(n) = log2(2n) the pair (1, 1) has |x|_2 = 2/w(2) = 1 = |x|_inf.
    const Engine e(NormSystem::log2_affine("w", 2, 0.0, 2.0));
    const Character c = e.character(ones(2));
    CHECK_FALSE(c.infinite);
    CHECK(c.ell == 2);
    CHECK(c.tie);
    // A large entry next to a tiny one: only the sup-norm attains the norm.
    const Character d = F().character(FinVector::from_coords({{1, 1}, {2, 0.01}}));
    CHECK(d.infinite);
  }

  TEST_CASE("norming functionals") {
    Functional phi = F().norming_functional(ones(2));
    std::vector<Coord> c = phi.coefficients();
    REQUIRE(c.size() == 2);
    CHECK(c[0].value == doctest::Approx(1.0 / std::log2(3.0)).epsilon(1e-12));
    CHECK(c[1].value == doctest::Approx(1.0 / std::log2(3.0)).epsilon(1e-12));
    CHECK(phi.apply(ones(2)) == doctest::Approx(2.0 / std::log2(3.0)).epsilon(1e-12));

    phi = F().norming_functional(FinVector::unit(6, -2));
    c = phi.coefficients();
    REQUIRE(c.size() == 1);
    CHECK(c[0].index == 6);
    CHECK(c[0].value == -1.0);

    phi = F().norming_functional(FinVector::from_coords({{1, 1}, {2, -1}}));
    c = phi.coefficients();
    REQUIRE(c.size() == 2);
    CHECK(c[0].value > 0);
    CHECK(c[1].value < 0);
    CHECK(std::fabs(c[0].value) == std::fabs(c[1].value));
    CHECK_THROWS_AS(F().norming_functional(FinVector{}), Error);
  }

  TEST_CASE("witness trees evaluate to the norm and functionals stay in the dual ball") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 60; ++t) {
      const FinVector x = random_vector(rng, 9);
      const NormResult r = F().norm(x);
      REQUIRE(r.witness.has_value());
      CHECK(r.witness->evaluate(x) == doctest::Approx(r.value).epsilon(1e-12));
      const Functional phi = Functional::from_witness(*r.witness, x);
      CHECK(phi.apply(x) == doctest::Approx(r.value).epsilon(1e-12));
      for (const Coord& c : phi.coefficients()) CHECK(x.at(c.index) != 0.0);
      for (int s = 0; s < 5; ++s) {
        const FinVector y = random_vector(rng, 9);
        CHECK(phi.apply(y) <= F().norm_value(y) + 1e-9);
      }
    }
  }

  TEST_CASE("brute-force enumeration") {
    CHECK(brute_norm(NormSystem::f_system(), ones(2)) == doctest::Approx(1.2618595071429148).epsilon(1e-12));
    CHECK(brute_norm(NormSystem::f_system(), FinVector::unit(5)) == 1.0);
    CHECK(brute_norm(NormSystem::g_system(), ones(2)) == doctest::Approx(2.0 / std::log2(2.5)).epsilon(1e-12));
    CHECK(error_of([] { (void)brute_norm(NormSystem::f_system(), ones(9)); }) == ErrorCode::kGuard);
  }

  TEST_CASE("engine, brute force and the reference recursion agree") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 80; ++t) {
      const FinVector x = random_vector(rng, 7);
      const double fo = oracle::f_norm(x.values());
      const double go = oracle::g_norm(x.values());
      CHECK(F().norm_value(x) == doctest::Approx(fo).epsilon(1e-12));
      CHECK(G().norm_value(x) == doctest::Approx(go).epsilon(1e-12));
      CHECK(brute_norm(NormSystem::f_system(), x) == doctest::Approx(fo).epsilon(1e-12));
      CHECK(brute_norm(NormSystem::g_system(), x) == doctest::Approx(go).epsilon(1e-12));
    }
  }

  TEST_CASE("flat vectors") {
    CHECK(constant_vector_norm(NormSystem::f_system(), 4, 1.0) == doctest::Approx(4.0 / std::log2(5.0)).epsilon(1e-12));
    CHECK(constant_vector_norm(NormSystem::f_system(), 1, -2.0) == 2.0);
    CHECK(constant_vector_norm(NormSystem::f_system(), 48, 1.0) == doctest::Approx(48.0 / std::log2(49.0)).epsilon(1e-10));
    // The flat path must agree with the generic table on the same vector.
    for (Index n : {2, 3, 5, 8, 13, 21}) {
      const std::vector<double> a(static_cast<std::size_t>(n), 0.75);
      const NormTable t(a, NormSystem::f_system());
      CHECK(constant_vector_norm(NormSystem::f_system(), n, 0.75) == doctest::Approx(t.norm(0, a.size() - 1)).epsilon(1e-12));
      const NormTable tg(a, NormSystem::g_system());
      CHECK(constant_vector_norm(NormSystem::g_system(), n, 0.75) == doctest::Approx(tg.norm(0, a.size() - 1)).epsilon(1e-12));
    }
  }

  TEST_CASE("flat path beyond the exact range") {
    ConstantPath f(NormSystem::f_system(), 64);
    CHECK(f.concave());
    CHECK(f.norm(200) == doctest::Approx(200.0 / std::log2(201.0)).epsilon(1e-9));
    ConstantPath g(NormSystem::g_system(), 64);
    CHECK(error_of([&] { (void)g.norm(200); }) == ErrorCode::kGuard);
  }

  TEST_CASE("support guard") {
    EngineOptions o;
    o.support_guard = 5;
    const Engine e(NormSystem::f_system(), o);
    const std::vector<double> a{1, 2, 3, 4, 5, 6};
    CHECK(error_of([&] { (void)e.norm_value(FinVector::from_dense(a)); }) == ErrorCode::kGuard);
    CHECK_NOTHROW((void)e.norm_value(ones(400)));  // flat vectors take the constant path
  }

  TEST_CASE("norm axioms on random vectors") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 60; ++t) {
      const FinVector x = random_vector(rng, 8);
      const FinVector y = random_vector(rng, 8);
      const double nx = F().norm_value(x);
      const ElementaryNorms en = elementary_norms(x);
      CHECK(en.linf <= nx + 1e-12);
      CHECK(nx <= en.l1 + 1e-12);
      CHECK(F().norm_value(x + y) <= nx + F().norm_value(y) + 1e-9);
      CHECK(F().norm_value(x.scaled(-3.5)) == doctest::Approx(3.5 * nx).epsilon(1e-12));
      CHECK(F().norm_value(spread(x, [](Index i) { return 3 * i + 2; })) == nx);
      const Interval e = Interval::make(x.min_index(), std::max(x.min_index(), x.max_index() - 1));
      CHECK(F().norm_value(restrict(x, e)) <= nx + 1e-12);
      for (std::int64_t l = 2; l <= 9; ++l) {
        const double xl = F().layer_norm(x, l);
        CHECK(xl <= nx + 1e-12);
        CHECK(nx / std::log2(l + 1.0) <= xl + 1e-12);
      }
    }
  }

  TEST_CASE("custom systems") {
    const NormSystem f2 = NormSystem::log2_affine("f-again", 2, 1.0, 1.0);
    const Engine e(f2);
    CHECK(e.norm_value(ones(5)) == F().norm_value(ones(5)));
    CHECK(f2.id() != NormSystem::f_system().id());
    CHECK_THROWS_AS(NormSystem::log2_affine("bad", 2, 1.0, -1.0), Error);
    CHECK_THROWS_AS(NormSystem::log2_affine("bad", 1, 1.0, 1.0), Error);
    const NormSystem t = NormSystem::from_table("t", 2, {std::log2(3.0), 2.0, std::log2(5.0)});
    const Engine et(t);
    const FinVector four = FinVector::from_coords({{1, 1}, {2, 0.9}, {4, 0.8}, {6, 0.7}});
    CHECK(et.norm_value(four) == doctest::Approx(F().norm_value(four)).epsilon(1e-12));
    CHECK(error_of([&] { (void)et.norm_value(FinVector::from_coords({{1, 1}, {2, 0.9}, {3, 0.8}, {4, 0.7}, {5, 0.6}})); }) ==
          ErrorCode::kGuard);
    CHECK_THROWS_AS(NormSystem::from_table("t", 2, {2.0, 1.5}), Error);
    CHECK(NormSystem::builtin("G").min_parts() == 3);
    CHECK_THROWS_AS(NormSystem::builtin("h"), Error);
  }

  TEST_CASE("memo table caches values bitwise and persists") {
    auto memo = std::make_shared<MemoTable>();
    EngineOptions o;
    o.memo = memo;
    const Engine cached(NormSystem::f_system(), o);
    std::mt19937_64 rng(3);
    std::vector<FinVector> xs;
    for (int t = 0; t < 20; ++t) xs.push_back(random_vector(rng, 8));
    std::vector<double> cold, warm;
    for (const FinVector& x : xs) cold.push_back(cached.norm_value(x));
    CHECK(memo->size() > 0);
    for (const FinVector& x : xs) warm.push_back(cached.norm_value(x));
    CHECK(cold == warm);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(cold[i] == F().norm_value(xs[i]));

    const std::string path = "memo_roundtrip.bin";
    memo->save(path);
    MemoTable loaded;
    std::string warning;
    CHECK(loaded.load(path, &warning));
    CHECK(loaded.size() == memo->size());
    {
      std::ofstream(path, std::ios::binary | std::ios::trunc) << "not a cache";
    }
    MemoTable broken;
    CHECK_FALSE(broken.load(path, &warning));
    CHECK_FALSE(warning.empty());
    CHECK(broken.size() == 0);
    std::remove(path.c_str());
  }

  TEST_CASE("interval table ties prefer the sup-norm branch") {
    // (1, 1) under weights where the split gives exactly 1: w(2) = 2.
    const NormSystem s = NormSystem::log2_affine("w", 2, 0.0, 2.0);  // w(n) = log2(2n), w(2) = 2
    const std::vector<double> a{1, 1};
    const NormTable t(a, s);
    CHECK(t.norm(0, 1) == 1.0);
    CHECK(t.choice(0, 1) == 0);
  }
}
