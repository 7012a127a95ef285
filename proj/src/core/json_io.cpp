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
#include "snorm/json_io.hpp"

#include <cmath>

#include "snorm/error.hpp"

namespace snorm {
namespace {

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw_input(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw_input(std::string(what) + " must be finite");
  return v;
}

Json lambda_pair(double lambda) {
  if (std::isnan(lambda)) return nullptr;
  return Json{{"log2", lambda}, {"value", std::exp2(lambda)}};
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw_input(std::string("malformed JSON: ") + e.what());
  }
}

FinVector vector_from_json(const Json& j) {
  if (!j.is_object()) throw_input("a vector must be a JSON object with \"coords\" or \"dense\"");
  if (j.contains("coords") == j.contains("dense")) throw_input("a vector needs exactly one of \"coords\" or \"dense\"");
  if (j.contains("dense")) {
    const Json& d = j.at("dense");
    if (!d.is_array()) throw_input("\"dense\" must be an array");
    std::vector<double> v;
    for (const Json& e : d) v.push_back(number(e, "dense entry"));
    return FinVector::from_dense(v);
  }
  const Json& c = j.at("coords");
  if (!c.is_array()) throw_input("\"coords\" must be an array");
  std::vector<Coord> coords;
  for (const Json& e : c) {
    if (!e.is_array() || e.size() != 2) throw_input("each coordinate must be [index, value]");
    if (!e[0].is_number_integer()) throw_input("coordinate index must be an integer");
    coords.push_back({e[0].get<Index>(), number(e[1], "coordinate value")});
  }
  return FinVector::from_coords(std::move(coords));
}

Json vector_to_json(const FinVector& x) {
  Json c = Json::array();
  for (const Coord& k : x.coords()) c.push_back(Json::array({k.index, k.value}));
  return Json{{"coords", c}};
}

BlockSequence blocks_from_json(const Json& j) {
  const Json& arr = j.is_object() && j.contains("blocks") ? j.at("blocks") : j;
  if (!arr.is_array()) throw_input("a block sequence must be an array of vectors");
  std::vector<FinVector> blocks;
  for (const Json& v : arr) blocks.push_back(vector_from_json(v));
  return BlockSequence(std::move(blocks));
}

Json blocks_to_json(const BlockSequence& ys) {
  Json arr = Json::array();
  for (const FinVector& y : ys.blocks()) arr.push_back(vector_to_json(y));
  return arr;
}

std::vector<std::vector<double>> tuples_from_json(const Json& j) {
  if (!j.is_array()) throw_input("coefficient tuples must be an array of arrays");
  std::vector<std::vector<double>> out;
  for (const Json& t : j) {
    if (!t.is_array()) throw_input("coefficient tuples must be an array of arrays");
    std::vector<double> row;
    for (const Json& v : t) row.push_back(number(v, "coefficient"));
    out.push_back(std::move(row));
  }
  return out;
}

NormSystem system_from_json(const Json& j) {
  if (j.is_string()) return NormSystem::builtin(j.get<std::string>());
  if (!j.is_object()) throw_input("a weight system must be \"f\", \"g\" or an object");
  const std::string name = j.value("name", "custom");
  if (!j.contains("min_parts") || !j.at("min_parts").is_number_integer())
    throw_input("custom system needs integer \"min_parts\"");
  const int l0 = j.at("min_parts").get<int>();
  for (const auto& [key, value] : j.items())
    if (key != "name" && key != "min_parts" && key != "log2_affine" && key != "table")
      throw_input("custom system: unknown key \"" + key + "\"");
  if (j.contains("log2_affine") && j.contains("table"))
    throw_input("custom system takes \"log2_affine\" or \"table\", not both");
  if (j.contains("log2_affine")) {
    const Json& ab = j.at("log2_affine");
    if (!ab.is_array() || ab.size() != 2) throw_input("\"log2_affine\" must be [a, b]");
    return NormSystem::log2_affine(name, l0, number(ab[0], "a"), number(ab[1], "b"));
  }
  if (j.contains("table")) {
    std::vector<double> w;
    for (const Json& v : j.at("table")) w.push_back(number(v, "weight"));
    return NormSystem::from_table(name, l0, std::move(w));
  }
  throw_input("custom system needs \"log2_affine\" or \"table\"");
}

Json system_to_json(const NormSystem& sys) {
  return Json{{"name", sys.name()}, {"min_parts", sys.min_parts()}, {"id", sys.id()}};
}

Json to_json(const WitnessTree& t) {
  if (t.is_leaf()) return Json{{"leaf", t.leaf_index()}};
  Json kids = Json::array();
  for (const WitnessTree& c : t.children()) kids.push_back(to_json(c));
  return Json{{"parts", t.parts()}, {"weight", t.weight()}, {"children", kids}};
}

Json to_json(const Functional& f) {
  Json c = Json::array();
  for (const Coord& k : f.coefficients()) c.push_back(Json::array({k.index, k.value}));
  return Json{{"coefficients", c}};
}

Json to_json(const Character& c) {
  Json j{{"tie", c.tie}};
  j["ell"] = c.infinite ? Json("inf") : Json(c.ell);
  return j;
}

Json to_json(const SplitProfile& p) {
  Json pieces = Json::array();
  for (std::size_t i = 0; i < p.pieces.size(); ++i)
    pieces.push_back(Json{{"min", p.pieces[i].min_index()},
                          {"max", p.pieces[i].max_index()},
                          {"support", p.pieces[i].support_size()},
                          {"norm", p.piece_norms[i]}});
  return Json{{"eps", p.eps}, {"count", p.count()}, {"pieces", pieces}, {"boundary_hit", p.boundary_hit}};
}

Json to_json(const SplitBounds& b) { return Json{{"h", b.h}, {"H", b.H}}; }

Json to_json(const L1Block& b, bool with_blocks) {
  Json j{{"m", b.m},
         {"n", b.n_len},
         {"start", b.start},
         {"coefficient", b.coefficient},
         {"certificate", b.certificate},
         {"normalized", true}};
  if (with_blocks) j["blocks"] = blocks_to_json(b.blocks);
  return j;
}

Json to_json(const LemmaDuoResult& r) {
  return Json{{"eps", r.eps},       {"l", r.ell}, {"m", r.m},     {"nlen", r.n_len},
              {"certificate", r.certificate}, {"y_norm", r.y_norm}, {"lhs", r.lhs}, {"rhs", r.rhs},
              {"pass", r.pass}};
}

Json to_json(const EquivalenceResult& r) {
  Json j{{"constant", r.constant}, {"equivalent_on_family", r.equivalent_on_family}, {"tuples", r.tuples},
         {"certified", "lower bound over the supplied tuples only"}};
  j["offending_tuple"] = r.offending_tuple ? Json(*r.offending_tuple) : Json(nullptr);
  return j;
}

Json to_json(const ProjectionReport& r) {
  return Json{{"estimate", r.estimate}, {"samples", r.samples},        {"c_u", r.c_u},
              {"c_e", r.c_e},           {"c_e_measured", r.c_e_measured}, {"c_d", r.c_d},
              {"bound", r.bound},       {"within_bound", r.within_bound}};
}

Json to_json(const BigCount& k) {
  Json j{{"log2", k.log2}, {"expression", k.expression}, {"materialized", k.materialized()}};
  j["decimal"] = k.decimal ? Json(*k.decimal) : Json(nullptr);
  return j;
}

Json to_json(const SelectReport& r) {
  Json steps = Json::array();
  for (const SelectStep& s : r.steps) {
    steps.push_back(Json{{"n", s.n},
                         {"eps", s.eps},
                         {"min", s.block.min_index()},
                         {"max", s.block.max_index()},
                         {"length", s.block.support_size()},
                         {"coefficient", s.block.coords().front().value},
                         {"source_blocks", s.source_blocks},
                         {"norm", s.norm},
                         {"k_prev", to_json(s.k_prev)},
                         {"cond_a", Json{{"lhs", s.cond_a_lhs}, {"rhs", s.cond_a_rhs}, {"ok", s.cond_a}}},
                         {"k", to_json(s.k)},
                         {"cond_b", Json{{"max_supp", s.block.max_index()}, {"rhs", s.cond_b_rhs}, {"ok", s.cond_b}}},
                         {"lemma_route", Json{{"log2_m", s.lemma_log2_m}, {"log2_n", s.lemma_log2_n}}}});
  }
  return Json{{"steps", steps},
              {"complete", r.complete},
              {"schedule_summable", r.schedule_summable},
              {"diagnostics", r.diagnostics}};
}

Json to_json(const StabilizationState& s) {
  Json levels = Json::array();
  for (const StabilizationLevel& lv : s.levels) {
    Json j{{"n", lv.n},
           {"eps", lv.eps},
           {"k", lv.k},
           {"p", lv.p},
           {"members", lv.members},
           {"filtered_linf", lv.filtered_linf},
           {"clusters", lv.clusters}};
    if (lv.growth) {
      const GrowthCheck& g = *lv.growth;
      j["growth"] = Json{{"l1_sum", g.l1_sum},         {"l1_bound", g.l1_bound},       {"l1_ok", g.l1_ok},
                         {"piece_term", g.piece_term}, {"piece_bound", g.piece_bound}, {"piece_ok", g.piece_ok}};
    } else {
      j["growth"] = nullptr;
    }
    j["joint"] = Json{{"performed", lv.joint.performed}, {"note", lv.joint.note}, {"s", lv.joint.s},
                      {"t", lv.joint.t},                 {"constant", lv.joint.constant}, {"ok", lv.joint.ok}};
    levels.push_back(std::move(j));
  }
  return Json{{"levels", levels},
              {"selected", s.selected},
              {"complete", s.complete},
              {"level_reached", s.level_reached},
              {"diagnostics", s.diagnostics}};
}

Json to_json(const AuditReport& r) {
  Json j{{"id", r.id}, {"grid", r.grid}, {"c", r.c}, {"points", r.points}, {"min_margin", r.min_margin}};
  if (r.counterexample)
    j["counterexample"] = Json{{"xi", lambda_pair(r.counterexample->xi)},
                               {"xi2", lambda_pair(r.counterexample->xi2)},
                               {"margin", r.counterexample->margin}};
  else
    j["counterexample"] = nullptr;
  return j;
}

Json to_json(const BetaResult& r) {
  return Json{{"value", r.value},         {"terms", r.terms},     {"tail", r.tail},
              {"converged", r.converged}, {"log2_tower", r.lambdas}, {"factors", r.factors}};
}

Json to_json(const PenteResult& r) {
  return Json{{"r", r.r},     {"d", r.d},     {"gamma", r.gamma},  {"lhs", r.lhs},
              {"sup", r.sup}, {"rhs", r.rhs}, {"margin", r.margin}};
}

Json to_json(const ScalarFgCheck& c) {
  Json j{{"max_l", c.max_l}, {"f_ge_g_shift", c.f_ge_g_shift}, {"g_double_eq_f", c.g_double_eq_f}};
  j["first_failure"] = c.first_failure ? Json(*c.first_failure) : Json(nullptr);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace snorm
