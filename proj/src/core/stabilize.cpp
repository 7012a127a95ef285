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
#include "snorm/stabilize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "snorm/error.hpp"
#include "snorm/parallel.hpp"

namespace snorm {
namespace {

// 0/1 test tuples: all of them for short lengths, otherwise units, prefixes,
// suffixes and the all-ones tuple.
std::vector<std::vector<double>> test_family(std::size_t len) {
  if (len <= 10) return binary_tuples(len);
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<double> t(len, 0.0);
    t[i] = 1.0;
    out.push_back(t);
  }
  for (std::size_t i = 2; i <= len; ++i) {
    std::vector<double> pre(len, 0.0), suf(len, 0.0);
    std::fill(pre.begin(), pre.begin() + static_cast<std::ptrdiff_t>(i), 1.0);
    std::fill(suf.end() - static_cast<std::ptrdiff_t>(i), suf.end(), 1.0);
    out.push_back(pre);
    if (i < len) out.push_back(suf);
  }
  return out;
}

std::vector<FinVector> pieces_of(const std::vector<SplitProfile>& prof, const std::vector<std::size_t>& members) {
  std::vector<FinVector> out;
  for (std::size_t m : members)
    for (const FinVector& piece : prof[m - 1].pieces) out.push_back(piece);
  return out;
}

}  // namespace

double stabilization_eps(const EpsSchedule& schedule, std::size_t n) {
  if (n == 0) throw_input("levels start at 1");
  return n == 1 ? 1.0 : schedule.at(n - 1);
}

double c_coefficient(std::size_t n, std::size_t N, const EpsSchedule& schedule) {
  if (n == 0) throw_input("c(n) needs n >= 1");
  double c = 0.0;
  for (std::size_t i = n; i <= N; ++i) c += std::exp2(-static_cast<double>(i)) + stabilization_eps(schedule, i);
  return c;
}

StabilizationState stabilize_subsequence(const Engine& engine, const BlockSequence& family,
                                         const StabilizeOptions& opts) {
  if (opts.depth < 1) throw_input("stabilize needs depth >= 1");
  const double tol = engine.options().tolerance;
  const std::size_t count = family.size();

  std::vector<FinVector> xs;
  xs.reserve(count);
  for (const FinVector& x : family.blocks()) xs.push_back(x.scaled(1.0 / engine.norm_value(x)));

  StabilizationState st;
  std::vector<std::size_t> prev;
  for (std::size_t m = 1; m <= count; ++m) prev.push_back(m);
  double l1_selected = 0.0;
  std::int64_t p_prev = 0;

  for (std::size_t n = 1; n <= opts.depth; ++n) {
    StabilizationLevel lv;
    lv.n = n;
    lv.eps = stabilization_eps(opts.schedule, n);
    lv.k = n <= opts.ks.size() ? opts.ks[n - 1] : static_cast<std::int64_t>(n);
    if (lv.k < 0) throw_input("k schedule entries must be >= 0");

    std::vector<std::size_t> cand = prev;
    if (n > 1 && !cand.empty()) cand.erase(cand.begin());
    if (n > 1) {
      const auto keep = std::stable_partition(cand.begin(), cand.end(), [&](std::size_t m) {
        return elementary_norms(xs[m - 1]).linf <= lv.eps / 2.0 + tol;
      });
      lv.filtered_linf = static_cast<std::size_t>(cand.end() - keep);
      cand.erase(keep, cand.end());
    }
    if (cand.empty()) {
      std::ostringstream os;
      os << "level " << n << ": no members left (" << lv.filtered_linf << " removed by |x|_inf <= eps/2)";
      st.diagnostics.push_back(os.str());
      return st;
    }

    std::vector<SplitProfile> prof(count);
    const auto computed = parallel_map(cand.size(), opts.threads,
                                       [&](std::size_t i) { return greedy_split(engine, xs[cand[i] - 1], lv.eps); });
    for (std::size_t i = 0; i < cand.size(); ++i) prof[cand[i] - 1] = computed[i];

    // Cluster by piece count, then by (1 + eps) agreement with a representative.
    std::vector<std::vector<std::size_t>> clusters;
    for (std::size_t m : cand) {
      bool placed = false;
      for (auto& cl : clusters) {
        const std::size_t rep = cl.front();
        if (prof[rep - 1].count() != prof[m - 1].count()) continue;
        const BlockSequence a(prof[rep - 1].pieces), b(prof[m - 1].pieces);
        const EquivalenceResult eq = equivalence_constant(engine, a, b, test_family(a.size()), opts.threads);
        if (eq.equivalent_on_family && eq.constant <= 1.0 + lv.eps + tol) {
          cl.push_back(m);
          placed = true;
          break;
        }
      }
      if (!placed) clusters.push_back({m});
    }
    lv.clusters = clusters.size();
    const auto best = std::max_element(clusters.begin(), clusters.end(),
                                       [](const auto& a, const auto& b) { return a.size() < b.size(); });
    lv.members = *best;
    lv.p = static_cast<std::int64_t>(prof[lv.members.front() - 1].count());

    if (n > 1) {
      GrowthCheck g;
      g.l1_sum = l1_selected;
      g.l1_bound = f_weight(static_cast<double>(split_bounds(std::min(lv.eps, 1.0)).h)) * std::exp2(-static_cast<double>(n));
      g.l1_ok = g.l1_sum < g.l1_bound;
      g.piece_term = static_cast<double>(p_prev) * lv.eps;
      g.piece_bound = std::exp2(-static_cast<double>(n));
      g.piece_ok = g.piece_term < g.piece_bound;
      lv.growth = g;
    }

    // Joint agreement of k_n + 2 members against another k_n + 2 members.
    const std::size_t need = static_cast<std::size_t>(lv.k) + 2;
    if (lv.members.size() < need + 1) {
      lv.joint.note = "too few members for a joint check";
    } else {
      lv.joint.s.assign(lv.members.begin(), lv.members.begin() + static_cast<std::ptrdiff_t>(need));
      lv.joint.t.assign(lv.members.end() - static_cast<std::ptrdiff_t>(need), lv.members.end());
      const BlockSequence a(pieces_of(prof, lv.joint.s)), b(pieces_of(prof, lv.joint.t));
      auto total = [](const BlockSequence& seq) {
        std::size_t sum = 0;
        for (const FinVector& v : seq.blocks()) sum += v.support_size();
        return sum;
      };
      if (std::max(total(a), total(b)) > opts.joint_support_cap) {
        lv.joint.note = "combined support exceeds the joint check cap";
      } else {
        const EquivalenceResult eq = equivalence_constant(engine, a, b, test_family(a.size()), opts.threads);
        lv.joint.performed = true;
        lv.joint.constant = eq.constant;
        lv.joint.ok = eq.equivalent_on_family && eq.constant <= 1.0 + lv.eps + tol;
      }
    }

    st.selected.push_back(lv.members.front());
    l1_selected += elementary_norms(xs[lv.members.front() - 1]).l1;
    p_prev = lv.p;
    prev = lv.members;
    st.level_reached = n;
    st.levels.push_back(std::move(lv));
  }
  st.complete = true;
  return st;
}

}  // namespace snorm
