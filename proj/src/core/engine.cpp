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
#include "snorm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "snorm/error.hpp"

namespace snorm {

namespace {

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(a)); }

std::vector<double> prefix_max(const std::vector<double>& sums) {
  std::vector<double> out(sums);
  for (std::size_t k = 2; k < out.size(); ++k) out[k] = std::max(out[k], out[k - 1]);
  return out;
}

}  // namespace

std::int64_t ceil_order(double r) {
  const double nearest = std::round(r);
  if (std::fabs(r - nearest) <= 1e-9 * std::max(1.0, std::fabs(r))) return static_cast<std::int64_t>(nearest);
  return static_cast<std::int64_t>(std::ceil(r));
}

Engine::Engine(NormSystem sys, EngineOptions opts)
    : sys_(std::move(sys)),
      opts_(std::move(opts)),
      constant_(std::make_shared<ConstantPath>(sys_, opts_.constant_exact_limit)) {
  if (!(opts_.tolerance > 0.0)) throw_input("tolerance must be positive");
  if (opts_.support_guard < 1) throw_input("support guard must be at least 1");
}

void Engine::guard(const FinVector& x) const {
  if (x.support_size() > opts_.support_guard) {
    std::ostringstream os;
    os << "support size " << x.support_size() << " exceeds the guard " << opts_.support_guard;
    throw_guard(os.str());
  }
}

NormTable Engine::table(const FinVector& x) const {
  guard(x);
  return NormTable(x.abs_values(), sys_, opts_.dp_tolerance);
}

double Engine::norm_value(const FinVector& x) const {
  if (x.empty()) return 0.0;
  if (x.support_size() == 1) return std::fabs(x.coords().front().value);
  const std::vector<double> canonical = x.abs_values();
  if (opts_.memo) {
    if (auto hit = opts_.memo->find(sys_.id(), canonical)) return *hit;
  }
  double value;
  if (flat(x)) {
    value = constant_->norm(static_cast<std::int64_t>(x.support_size()), canonical.front());
  } else {
    guard(x);
    NormTable t(canonical, sys_, opts_.dp_tolerance);
    value = t.norm(0, t.size() - 1);
  }
  if (opts_.memo) opts_.memo->insert(sys_.id(), canonical, value);
  return value;
}

NormResult Engine::norm(const FinVector& x, bool with_witness, bool with_character) const {
  NormResult r;
  r.value = norm_value(x);
  if (x.empty()) return r;
  if (with_witness) r.witness = witness(x);
  if (with_character) r.character = character(x);
  return r;
}

WitnessTree Engine::witness(const FinVector& x) const {
  if (x.empty()) throw_input("the zero vector has no witness");
  const auto coords = x.coords();
  if (flat(x)) {
    std::function<WitnessTree(std::size_t, std::int64_t)> build = [&](std::size_t start, std::int64_t len) {
      const ConstantPath::Plan plan = constant_->plan(len);
      if (plan.parts == 0) return WitnessTree::leaf(coords[start].index);
      std::vector<WitnessTree> kids;
      std::size_t pos = start;
      for (std::int64_t piece : plan.lengths) {
        kids.push_back(build(pos, piece));
        pos += static_cast<std::size_t>(piece);
      }
      return WitnessTree::split(std::max<std::int64_t>(plan.parts, sys_.min_parts()),
                                sys_.padded_weight(plan.parts), std::move(kids));
    };
    return build(0, static_cast<std::int64_t>(x.support_size()));
  }
  const NormTable t = table(x);
  std::function<WitnessTree(std::size_t, std::size_t)> build = [&](std::size_t i, std::size_t j) {
    const std::int64_t k = t.choice(i, j);
    if (k == 0) return WitnessTree::leaf(coords[t.linf_position(i, j)].index);
    const NormTable::Partition p = t.best_partition(i, j, static_cast<std::size_t>(k));
    std::vector<WitnessTree> kids;
    std::size_t lo = i;
    for (std::size_t end : p.ends) {
      kids.push_back(build(lo, end));
      lo = end + 1;
    }
    return WitnessTree::split(std::max<std::int64_t>(k, sys_.min_parts()), t.weight(k), std::move(kids));
  };
  return build(0, t.size() - 1);
}

std::vector<double> Engine::exact_part_sums(const FinVector& x) const {
  const auto n = static_cast<std::int64_t>(x.support_size());
  if (flat(x)) {
    std::vector<double> sums = constant_->part_sums(n);
    const double c = std::fabs(x.coords().front().value);
    for (double& s : sums) s *= c;
    return sums;
  }
  if (n == 1) return {0.0, std::fabs(x.coords().front().value)};
  const NormTable t = table(x);
  return t.best_sums(0, t.size() - 1);
}

double Engine::best_sum(const FinVector& x, std::int64_t k) const {
  if (k < 1) throw_input("best_sum needs k >= 1");
  if (x.empty()) return 0.0;
  if (flat(x))
    return std::fabs(x.coords().front().value) *
           constant_->best_sum(static_cast<std::int64_t>(x.support_size()), k);
  const std::vector<double> sums = exact_part_sums(x);
  const auto kmax = static_cast<std::size_t>(std::min<std::int64_t>(k, static_cast<std::int64_t>(x.support_size())));
  return *std::max_element(sums.begin() + 1, sums.begin() + static_cast<std::ptrdiff_t>(kmax + 1));
}

double Engine::layer_norm(const FinVector& x, std::int64_t ell) const {
  if (ell < sys_.min_parts()) {
    std::ostringstream os;
    os << "layer norm needs l >= " << sys_.min_parts() << ", got " << ell;
    throw_input(os.str());
  }
  const auto n = static_cast<std::int64_t>(x.support_size());
  return best_sum(x, std::max<std::int64_t>(1, std::min(ell, n))) / sys_.weight(static_cast<double>(ell));
}

double Engine::triple_norm(const FinVector& x, double r) const {
  if (!(r >= 2.0)) throw_input("triple norm needs r >= 2");
  const ElementaryNorms el = elementary_norms(x);
  if (x.empty()) return 0.0;
  const std::int64_t lo = std::max<std::int64_t>(ceil_order(r), sys_.min_parts());
  const auto n = static_cast<std::int64_t>(x.support_size());
  const std::vector<double> pm = prefix_max(exact_part_sums(x));
  double best = el.linf;
  for (std::int64_t ell = lo; ell <= std::max(lo, n); ++ell) {
    const double layer = pm[static_cast<std::size_t>(std::min(ell, n))] / sys_.weight(static_cast<double>(ell));
    best = std::max(best, layer);
  }
  return best;
}

Character Engine::character(const FinVector& x) const {
  if (x.empty()) throw_input("the zero vector has no character");
  const double value = norm_value(x);
  const double linf = elementary_norms(x).linf;
  const auto n = static_cast<std::int64_t>(x.support_size());
  const std::vector<double> pm = prefix_max(exact_part_sums(x));
  Character c;
  const bool linf_attains = close(value, linf, opts_.tolerance);
  const std::int64_t lo = sys_.min_parts();
  for (std::int64_t ell = lo; ell <= std::max(lo, n); ++ell) {
    const double layer = pm[static_cast<std::size_t>(std::min(ell, n))] / sys_.weight(static_cast<double>(ell));
    if (close(value, layer, opts_.tolerance)) {
      c.ell = ell;
      c.tie = linf_attains;
      return c;
    }
  }
  if (!linf_attains) throw_property("no layer attains the norm");
  c.infinite = true;
  return c;
}

Functional Engine::norming_functional(const FinVector& x) const {
  if (x.empty()) throw_input("the zero vector has no norming functional");
  return Functional::from_witness(witness(x), x);
}

double norm_l(const FinVector& x, std::int64_t ell) { return Engine(NormSystem::f_system()).layer_norm(x, ell); }
double triple_norm(const FinVector& x, double r) { return Engine(NormSystem::f_system()).triple_norm(x, r); }
Character character(const FinVector& x) { return Engine(NormSystem::f_system()).character(x); }

double constant_vector_norm(const NormSystem& sys, std::int64_t length, double coefficient) {
  if (length < 1) throw_input("constant_vector_norm needs L >= 1");
  return ConstantPath(sys).norm(length, coefficient);
}

}  // namespace snorm
