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
#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <initializer_list>
#include <map>
#include <random>
#include <set>

#include "snorm/auditor.hpp"
#include "snorm/error.hpp"
#include "snorm/json_io.hpp"

namespace snorm::cmd {
namespace {

// Typed access to a command's argument object; unknown keys are rejected so
// that typos do not silently fall back to defaults.
class Args {
 public:
  Args(const Json& j, std::initializer_list<const char*> allowed) : j_(j.is_null() ? Json::object() : j) {
    if (!j_.is_object()) throw_input("command arguments must be a JSON object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, v] : j_.items())
      if (!ok.count(key)) throw_input("unknown argument \"" + key + "\"");
  }

  bool has(const char* key) const { return j_.contains(key) && !j_.at(key).is_null(); }
  const Json& raw(const char* key) const {
    if (!has(key)) throw_input(std::string("missing argument \"") + key + "\"");
    return j_.at(key);
  }
  double num(const char* key) const {
    const Json& v = raw(key);
    if (!v.is_number()) throw_input(std::string("argument \"") + key + "\" must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw_input(std::string("argument \"") + key + "\" must be finite");
    return d;
  }
  double num(const char* key, double dflt) const { return has(key) ? num(key) : dflt; }
  std::int64_t integer(const char* key) const {
    const Json& v = raw(key);
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (d == std::floor(d) && std::fabs(d) < 9.0e15) return static_cast<std::int64_t>(d);
    }
    throw_input(std::string("argument \"") + key + "\" must be an integer");
  }
  std::int64_t integer(const char* key, std::int64_t dflt) const { return has(key) ? integer(key) : dflt; }
  bool flag(const char* key, bool dflt) const {
    if (!has(key)) return dflt;
    if (!raw(key).is_boolean()) throw_input(std::string("argument \"") + key + "\" must be true or false");
    return raw(key).get<bool>();
  }
  const Json& json() const { return j_; }

 private:
  Json j_;
};

struct Env {
  const Config& cfg;
  EngineOptions opts;
  unsigned threads;
};

Engine engine_for(const Env& env, const Args& a) {
  return Engine(a.has("system") ? system_from_json(a.raw("system")) : system_from_json(env.cfg.system), env.opts);
}

std::string g17(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Grid grid_arg(const Args& a, const char* key, Grid dflt) {
  if (!a.has(key)) return dflt;
  const Json& g = a.raw(key);
  if (g.is_array()) {
    std::vector<double> vals;
    for (const Json& v : g) {
      if (!v.is_number()) throw_input(std::string(key) + " values must be numbers");
      vals.push_back(v.get<double>());
    }
    if (vals.empty()) throw_input(std::string(key) + " is empty");
    return Grid::from_values(std::move(vals));
  }
  if (g.is_object()) {
    const Args ga(g, {"from", "to", "per_octave"});
    const auto lo = ga.integer("from"), hi = ga.integer("to"), per = ga.integer("per_octave", 4);
    if (hi < lo) throw_input(std::string(key) + " is empty");
    return Grid::geometric(static_cast<int>(lo), static_cast<int>(hi), static_cast<int>(per));
  }
  throw_input(std::string(key) + " must be an array of values or {from, to, per_octave}");
}

EpsSchedule schedule_arg(const Args& a) {
  EpsSchedule s;
  if (!a.has("schedule")) return s;
  const Json& v = a.raw("schedule");
  if (v.is_string()) {
    const std::string k = v.get<std::string>();
    if (k == "geometric") return s;
    if (k == "harmonic") {
      s.kind = EpsSchedule::Kind::kHarmonic;
      return s;
    }
    throw_input("schedule must be \"geometric\", \"harmonic\" or an array");
  }
  if (!v.is_array()) throw_input("schedule must be \"geometric\", \"harmonic\" or an array");
  s.kind = EpsSchedule::Kind::kExplicit;
  for (const Json& e : v) {
    if (!e.is_number()) throw_input("schedule entries must be numbers");
    s.values.push_back(e.get<double>());
  }
  return s;
}

Output finish(Json body, const Args& a, int outcome, std::string csv = {}) {
  body["params"] = a.json();
  body["outcome_expected"] = outcome == 0;
  return Output{dump(body), std::move(csv), outcome};
}

// --- norm -------------------------------------------------------------------

Output cmd_norm(const Env& env, const Json& j) {
  const Args a(j, {"vector", "system", "witness", "character", "functional"});
  const Engine e = engine_for(env, a);
  const FinVector x = vector_from_json(a.raw("vector"));
  const bool want_char = a.flag("character", true);
  const bool want_witness = a.flag("witness", false);
  const bool want_functional = a.flag("functional", false);
  const NormResult r = e.norm(x, want_witness && !x.empty(), want_char && !x.empty());
  const ElementaryNorms el = elementary_norms(x);
  Json body{{"system", system_to_json(e.system())},
            {"support", x.support_size()},
            {"value", r.value},
            {"linf", el.linf},
            {"l1", el.l1}};
  if (want_char) body["character"] = r.character ? to_json(*r.character) : Json(nullptr);
  if (want_witness) body["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  if (want_functional) body["functional"] = x.empty() ? Json(nullptr) : to_json(e.norming_functional(x));
  return finish(std::move(body), a, 0);
}

// --- seq --------------------------------------------------------------------

Output seq_split(const Env& env, const Json& j) {
  const Args a(j, {"vector", "eps", "normalize", "system"});
  const Engine e = engine_for(env, a);
  FinVector y = vector_from_json(a.raw("vector"));
  const double eps = a.num("eps");
  const double input_norm = e.norm_value(y);
  const bool normalize = a.flag("normalize", false);
  if (normalize) {
    if (input_norm == 0.0) throw_input("cannot normalize the zero vector");
    y = y.scaled(1.0 / input_norm);
  }
  const SplitProfile p = greedy_split(e, y, eps);
  const double tol = env.opts.tolerance;
  const double norm = normalize ? e.norm_value(y) : input_norm;
  const double linf = elementary_norms(y).linf;
  int outcome = 0;
  for (double v : p.piece_norms)
    if (v > eps + tol * std::max(1.0, eps)) outcome = 1;
  Json body{{"input_norm", input_norm}, {"norm", norm}, {"linf", linf}, {"profile", to_json(p)}};
  const bool applicable = eps <= 1.0 && std::fabs(norm - 1.0) <= tol && linf <= eps / 2.0 + tol;
  Json bounds{{"applicable", applicable}};
  if (applicable) {
    const SplitBounds b = split_bounds(eps);
    bool lower = true;
    for (std::size_t i = 0; i + 1 < p.count(); ++i)
      if (p.piece_norms[i] < eps / 2.0 - tol) lower = false;
    const bool within = b.h <= static_cast<std::int64_t>(p.count()) && static_cast<std::int64_t>(p.count()) <= b.H;
    bounds["h"] = b.h;
    bounds["H"] = b.H;
    bounds["count_within"] = within;
    bounds["pieces_at_least_half_eps"] = lower;
    if (!within || !lower) outcome = 1;
  }
  body["bounds"] = bounds;
  std::string csv = "piece,min,max,support,norm\n";
  for (std::size_t i = 0; i < p.count(); ++i)
    csv += std::to_string(i + 1) + "," + std::to_string(p.pieces[i].min_index()) + "," +
           std::to_string(p.pieces[i].max_index()) + "," + std::to_string(p.pieces[i].support_size()) + "," +
           g17(p.piece_norms[i]) + "\n";
  return finish(std::move(body), a, outcome, std::move(csv));
}

Output seq_bounds(const Env&, const Json& j) {
  const Args a(j, {"eps"});
  return finish(to_json(split_bounds(a.num("eps"))), a, 0);
}

Output seq_l1(const Env& env, const Json& j) {
  const Args a(j, {"m", "n", "start", "emit_blocks"});
  const Engine e(NormSystem::f_system(), env.opts);
  const L1Block b = l1_average_block(e, a.integer("m"), a.integer("n"), a.integer("start", 1));
  return finish(to_json(b, a.flag("emit_blocks", false)), a, 0);
}

Output seq_lemma_duo(const Env& env, const Json& j) {
  const Args a(j, {"eps", "l", "m", "nlen"});
  const Engine e(NormSystem::f_system(), env.opts);
  const LemmaDuoResult r = lemma_duo_experiment(e, a.num("eps"), a.integer("l"), a.integer("m"), a.integer("nlen"));
  return finish(to_json(r), a, r.pass ? 0 : 1);
}

std::vector<std::vector<double>> coeffs_or_binary(const Args& a, std::size_t len) {
  if (a.has("coeffs")) {
    auto t = tuples_from_json(a.raw("coeffs"));
    if (t.empty()) throw_input("coefficient family is empty");
    for (const auto& row : t)
      if (row.size() != len) throw_input("coefficient tuple length differs from the block count");
    return t;
  }
  return binary_tuples(len);
}

Output seq_equiv(const Env& env, const Json& j) {
  const Args a(j, {"xs", "ys", "coeffs", "system"});
  const Engine e = engine_for(env, a);
  const BlockSequence xs = blocks_from_json(a.raw("xs"));
  const BlockSequence ys = blocks_from_json(a.raw("ys"));
  const EquivalenceResult r = equivalence_constant(e, xs, ys, coeffs_or_binary(a, xs.size()), env.threads);
  return finish(to_json(r), a, r.equivalent_on_family ? 0 : 1);
}

Output seq_dominate(const Env& env, const Json& j) {
  const Args a(j, {"ys", "coeffs"});
  const Engine e(NormSystem::f_system(), env.opts);
  const BlockSequence ys = blocks_from_json(a.raw("ys"));
  const double margin = dominates_basis_check(e, ys, coeffs_or_binary(a, ys.size()), env.threads);
  const bool ok = margin >= -env.opts.tolerance;
  return finish(Json{{"margin", margin}, {"dominates", ok}}, a, ok ? 0 : 1);
}

Output seq_project(const Env& env, const Json& j) {
  const Args a(j, {"ys", "samples", "c_e", "system"});
  const Engine e = engine_for(env, a);
  const BlockSequence ys = blocks_from_json(a.raw("ys"));
  const ProjectionOp p = build_projection(e, ys);
  std::vector<FinVector> samples;
  if (a.has("samples")) {
    const Json& s = a.raw("samples");
    if (!s.is_array()) throw_input("samples must be an array of vectors");
    for (const Json& v : s) samples.push_back(vector_from_json(v));
  } else {
    const Index top = ys.size() ? ys[ys.size() - 1].max_index() : 0;
    for (Index i = 1; i <= top; ++i) samples.push_back(FinVector::unit(i));
    for (const FinVector& y : ys.blocks()) samples.push_back(y);
  }
  const std::optional<double> ce = a.has("c_e") ? std::optional<double>(a.num("c_e")) : std::nullopt;
  const ProjectionReport rep = projection_norm_estimate(e, p, samples, ce, env.threads);

  double identity_err = 0.0, idempotence_err = 0.0;
  for (const FinVector& y : ys.blocks()) identity_err = std::max(identity_err, elementary_norms(p.apply(y) - y).linf);
  for (const FinVector& x : samples) {
    const FinVector tx = p.apply(x);
    idempotence_err = std::max(idempotence_err, elementary_norms(p.apply(tx) - tx).linf);
  }
  Json frames = Json::array();
  for (const Interval& f : p.frames) frames.push_back(Json::array({f.lo, f.hi}));
  const double tol = env.opts.tolerance;
  const bool ok = rep.within_bound && identity_err <= tol && idempotence_err <= tol;
  Json body = to_json(rep);
  body["frames"] = frames;
  body["identity_error"] = identity_err;
  body["idempotence_error"] = idempotence_err;
  return finish(std::move(body), a, ok ? 0 : 1);
}

Output seq_select(const Env& env, const Json& j) {
  const Args a(j, {"budget", "schedule", "source_length", "start", "max_length"});
  const Engine e(NormSystem::f_system(), env.opts);
  SelectOptions o;
  const std::int64_t budget = a.integer("budget", 2);
  if (budget < 1) throw_input("budget must be >= 1");
  o.budget = static_cast<std::size_t>(budget);
  o.schedule = schedule_arg(a);
  o.source_length = a.integer("source_length", 1);
  o.start = a.integer("start", 1);
  o.max_length = a.integer("max_length", o.max_length);
  const SelectReport r = minimal_block_select(e, o);
  bool ok = r.complete;
  for (const SelectStep& s : r.steps) ok = ok && s.cond_a && s.cond_b;
  Json body = to_json(r);
  body["schedule"] = o.schedule.describe();
  return finish(std::move(body), a, ok ? 0 : 1);
}

Output seq_stabilize(const Env& env, const Json& j) {
  const Args a(j, {"family", "depth", "schedule", "ks", "joint_support_cap"});
  const Engine e(NormSystem::f_system(), env.opts);
  StabilizeOptions o;
  const std::int64_t depth = a.integer("depth", 3);
  if (depth < 1) throw_input("depth must be >= 1");
  o.depth = static_cast<std::size_t>(depth);
  o.schedule = schedule_arg(a);
  if (a.has("ks")) {
    const Json& ks = a.raw("ks");
    if (!ks.is_array()) throw_input("ks must be an array of integers");
    for (const Json& k : ks) {
      if (!k.is_number_integer()) throw_input("ks must be an array of integers");
      o.ks.push_back(k.get<std::int64_t>());
    }
  }
  o.joint_support_cap = static_cast<std::size_t>(a.integer("joint_support_cap", 192));
  o.threads = env.threads;
  const StabilizationState s = stabilize_subsequence(e, blocks_from_json(a.raw("family")), o);
  Json body = to_json(s);
  Json cs = Json::array();
  for (std::size_t n = 1; n <= s.levels.size(); ++n) cs.push_back(c_coefficient(n, s.levels.size(), o.schedule));
  body["c"] = Json{{"values", cs}, {"interpretation", "sum_{i=n}^{N} (2^-i + eps(i)), N = levels reached"}};
  return finish(std::move(body), a, s.complete ? 0 : 1);
}

// --- audit ------------------------------------------------------------------

Output audit_ineq(const Env& env, const Json& j) {
  const Args a(j, {"c", "xi_grid", "nu_grid"});
  const double c = a.num("c", 3.0);
  const Grid xi = grid_arg(a, "xi_grid", default_xi_grid());
  const Grid nu = grid_arg(a, "nu_grid", default_nu_grid());
  // The corrected form is checked from xi = 1, where it is tightest.
  Grid xi1 = xi;
  if (!a.has("xi_grid")) xi1 = Grid::geometric(0, 256, 4);
  const std::vector<AuditReport> reps{audit_e1(c, xi, env.threads), audit_e2_printed(c, xi, env.threads),
                                      audit_e2_corrected(xi1, env.threads), audit_e3(c, xi, env.threads),
                                      audit_e4(c, nu, xi, env.threads)};
  const bool expect_cx = printed_e2_expects_counterexample(c, xi);
  bool ok = true;
  Json list = Json::array();
  for (const AuditReport& r : reps) {
    Json rj = to_json(r);
    if (r.id == "E2-printed") {
      rj["expected_counterexample"] = expect_cx;
      if (expect_cx && !r.counterexample) ok = false;
    } else if (r.counterexample) {
      ok = false;
    }
    list.push_back(std::move(rj));
  }
  std::string csv = "inequality,xi,xi2,margin\n";
  for (const AuditReport& r : reps)
    for (const AuditRow& row : r.rows)
      csv += r.id + "," + g17(std::exp2(row.xi)) + "," + g17(std::isnan(row.xi2) ? row.xi2 : std::exp2(row.xi2)) +
             "," + g17(row.margin) + "\n";
  return finish(Json{{"c", c}, {"reports", list}}, a, ok ? 0 : 1, std::move(csv));
}

Output audit_minc(const Env& env, const Json& j) {
  const Args a(j, {"xi_grid", "nu_grid"});
  const double c = find_min_c(grid_arg(a, "xi_grid", default_xi_grid()), grid_arg(a, "nu_grid", default_nu_grid()),
                              env.threads);
  return finish(Json{{"c", c}, {"step", 0.01}}, a, 0);
}

Output audit_gamma(const Env&, const Json& j) {
  const Args a(j, {"d", "log2r"});
  return finish(Json{{"gamma", gamma_factor(a.num("log2r"), a.num("d"))}}, a, 0);
}

Output audit_beta(const Env&, const Json& j) {
  const Args a(j, {"d", "log2r", "tail_tol", "tilde", "max_terms"});
  const double tol = a.num("tail_tol", 1e-12);
  const auto terms = a.integer("max_terms", 64);
  if (terms < 1) throw_input("max_terms must be >= 1");
  const bool tilde = a.flag("tilde", false);
  const BetaResult r = tilde ? beta_tilde(a.num("log2r"), a.num("d"), tol, static_cast<std::size_t>(terms))
                             : beta(a.num("log2r"), a.num("d"), tol, static_cast<std::size_t>(terms));
  std::string csv = "k,log2_r,factor\n";
  for (std::size_t k = 0; k < r.factors.size(); ++k)
    csv += std::to_string(k) + "," + g17(r.lambdas[k]) + "," + g17(r.factors[k]) + "\n";
  Json body = to_json(r);
  body["product"] = tilde ? "beta_tilde" : "beta";
  return finish(std::move(body), a, r.converged ? 0 : 1, std::move(csv));
}

Output audit_gnorm(const Env& env, const Json& j) {
  const Args a(j, {"vectors", "random", "seed", "max_support", "scalar_max_l"});
  std::vector<FinVector> xs;
  if (a.has("vectors")) {
    const Json& v = a.raw("vectors");
    if (!v.is_array()) throw_input("vectors must be an array");
    for (const Json& x : v) xs.push_back(vector_from_json(x));
  }
  const auto count = a.integer("random", a.has("vectors") ? 0 : 200);
  const auto max_support = a.integer("max_support", 7);
  if (count < 0 || max_support < 1) throw_input("random count must be >= 0 and max_support >= 1");
  std::mt19937_64 rng(static_cast<std::uint64_t>(a.integer("seed", 1)));
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  std::uniform_int_distribution<std::int64_t> len(1, max_support), gap(1, 3);
  for (std::int64_t t = 0; t < count; ++t) {
    std::vector<Coord> c;
    Index i = 0;
    for (std::int64_t k = len(rng); k > 0; --k) c.push_back({i += gap(rng), val(rng)});
    xs.push_back(FinVector::from_coords(std::move(c)));
  }
  const auto rows = gnorm_compare(xs, env.opts, env.threads);
  double worst = 0.0;
  std::size_t at = 0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (i == 0 || rows[i].margin < worst) {
      worst = rows[i].margin;
      at = i;
    }
  const ScalarFgCheck sc = scalar_fg_check(a.integer("scalar_max_l", 1000000));
  const bool ok = worst >= -env.opts.tolerance && sc.f_ge_g_shift && sc.g_double_eq_f;
  std::string csv = "vector,f_norm,g_norm,margin\n";
  for (std::size_t i = 0; i < rows.size(); ++i)
    csv += std::to_string(i + 1) + "," + g17(rows[i].f_norm) + "," + g17(rows[i].g_norm) + "," + g17(rows[i].margin) +
           "\n";
  Json body{{"vectors", rows.size()}, {"min_margin", rows.empty() ? Json(nullptr) : Json(worst)}, {"scalar", to_json(sc)}};
  body["worst_vector"] = rows.empty() ? Json(nullptr) : vector_to_json(xs[at]);
  return finish(std::move(body), a, ok ? 0 : 1, std::move(csv));
}

Output audit_pente(const Env& env, const Json& j) {
  const Args a(j, {"vector", "r", "d"});
  const Engine e(NormSystem::f_system(), env.opts);
  const PenteResult r = pente_margin(e, vector_from_json(a.raw("vector")), a.num("r", 2.0), a.num("d", 1.1));
  Json body = to_json(r);
  body["note"] = "report only: the stated constants need f(r) > d^2 with d = 4c^3";
  return finish(std::move(body), a, 0);
}

using Handler = std::function<Output(const Env&, const Json&)>;

const std::map<std::string, Handler>& table() {
  static const std::map<std::string, Handler> t{
      {"norm/", cmd_norm},
      {"seq/split", seq_split},
      {"seq/bounds", seq_bounds},
      {"seq/l1", seq_l1},
      {"seq/lemma-duo", seq_lemma_duo},
      {"seq/equiv", seq_equiv},
      {"seq/dominate", seq_dominate},
      {"seq/project", seq_project},
      {"seq/select", seq_select},
      {"seq/stabilize", seq_stabilize},
      {"audit/ineq", audit_ineq},
      {"audit/minc", audit_minc},
      {"audit/gamma", audit_gamma},
      {"audit/beta", audit_beta},
      {"audit/lemma-duo", seq_lemma_duo},
      {"audit/gnorm", audit_gnorm},
      {"audit/pente", audit_pente},
  };
  return t;
}

}  // namespace

Output run(const Config& cfg, const std::shared_ptr<MemoTable>& memo, const std::string& verb, const std::string& sub,
           const Json& args) {
  cfg.validate();
  const auto it = table().find(verb + "/" + sub);
  if (it == table().end()) throw_input("unknown command \"" + verb + (sub.empty() ? "" : " " + sub) + "\"");
  EngineOptions opts;
  opts.tolerance = cfg.tolerance;
  opts.support_guard = cfg.support_guard;
  opts.memo = memo;
  return it->second(Env{cfg, opts, cfg.parallelism}, args);
}

}  // namespace snorm::cmd
