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
// snorm command-line front end. Everything goes through the C API: flags are
// collected into a JSON argument object and handed to snorm_run.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "snorm/snorm.h"

namespace {

using Json = nlohmann::json;

enum class Kind { kNumber, kInteger, kJson, kText, kFlag };

struct Field {
  std::string key;
  Kind kind;
  std::string value;
  bool flag = false;
  CLI::Option* opt = nullptr;
};

struct Command {
  std::string verb, sub;
  CLI::App* app = nullptr;
  std::vector<std::unique_ptr<Field>> fields;

  void add(const std::string& name, const std::string& key, Kind kind, const std::string& help, bool required = false) {
    auto f = std::make_unique<Field>();
    f->key = key;
    f->kind = kind;
    if (kind == Kind::kFlag)
      f->opt = app->add_flag(name, f->flag, help);
    else
      f->opt = app->add_option(name, f->value, help);
    if (required) f->opt->required();
    fields.push_back(std::move(f));
  }
};

std::string read_source(const std::string& text) {
  if (text == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  if (!text.empty() && text.front() == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw std::runtime_error("cannot read " + text.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return text;
}

Json field_value(const Field& f) {
  switch (f.kind) {
    case Kind::kFlag:
      return true;
    case Kind::kText:
      return f.value;
    case Kind::kNumber: {
      std::size_t pos = 0;
      const double v = std::stod(f.value, &pos);
      if (pos != f.value.size()) throw std::invalid_argument(f.value);
      return v;
    }
    case Kind::kInteger: {
      std::size_t pos = 0;
      const long long v = std::stoll(f.value, &pos);
      if (pos != f.value.size()) throw std::invalid_argument(f.value);
      return v;
    }
    case Kind::kJson:
      return Json::parse(read_source(f.value));
  }
  return nullptr;
}

// "geometric", "harmonic" or a JSON array.
Json schedule_value(const std::string& s) {
  if (s == "geometric" || s == "harmonic") return s;
  return Json::parse(read_source(s));
}

int exit_code(snorm_status s) {
  switch (s) {
    case SNORM_OK:
      return 0;
    case SNORM_PROPERTY_VIOLATION:
      return 1;
    case SNORM_INPUT_ERROR:
      return 2;
    case SNORM_GUARD_EXCEEDED:
      return 3;
    default:
      return 1;
  }
}

struct ContextGuard {
  snorm_context* ctx = nullptr;
  ~ContextGuard() { snorm_context_destroy(ctx); }
};

bool write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"snorm: exact evaluation of an implicitly defined sequence-space norm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(snorm_version()));
  app.fallthrough();

  std::string config_path, system, cache_path, record_path, out_path;
  double tolerance = 0.0;
  std::size_t guard = 0;
  unsigned threads = 0;
  bool want_csv = false, want_json = false;
  app.add_option("--config", config_path, "config file (default: $SNORM_CONFIG)");
  app.add_option("--system", system, "weight system: f, g, or a JSON object / @file");
  app.add_option("--tolerance", tolerance, "equality tolerance");
  app.add_option("--guard", guard, "maximum support size for the generic evaluator");
  app.add_option("--threads", threads, "worker threads for batch evaluations");
  app.add_option("--cache", cache_path, "persistent memo file");
  app.add_option("--record", record_path, "write a replayable run record here");
  app.add_option("--out", out_path, "write output here instead of stdout");
  auto* csv_flag = app.add_flag("--csv", want_csv, "emit the CSV table");
  app.add_flag("--json", want_json, "emit the JSON report (default)")->excludes(csv_flag);

  std::vector<std::unique_ptr<Command>> commands;
  auto make = [&](CLI::App* parent, const std::string& verb, const std::string& sub, const std::string& help) {
    auto c = std::make_unique<Command>();
    c->verb = verb;
    c->sub = sub;
    c->app = parent->add_subcommand(sub.empty() ? verb : sub, help);
    commands.push_back(std::move(c));
    return commands.back().get();
  };

  Command* c = make(&app, "norm", "", "norm of a vector, with character, witness and functional");
  c->add("vector", "vector", Kind::kJson, "vector JSON, @file or - for stdin", true);
  c->add("--witness", "witness", Kind::kFlag, "include the witness tree");
  c->add("--functional", "functional", Kind::kFlag, "include the norming functional");
  bool no_character = false;
  c->app->add_flag("--no-character", no_character, "omit the character");

  CLI::App* seq = app.add_subcommand("seq", "block-sequence procedures");
  seq->require_subcommand(1);
  c = make(seq, "seq", "split", "greedy splitting into pieces of norm <= eps");
  c->add("vector", "vector", Kind::kJson, "vector JSON, @file or -", true);
  c->add("--eps", "eps", Kind::kNumber, "piece norm bound", true);
  c->add("--normalize", "normalize", Kind::kFlag, "divide the vector by its norm first");
  c = make(seq, "seq", "bounds", "piece-count bounds h(eps), H(eps)");
  c->add("--eps", "eps", Kind::kNumber, "0 < eps <= 1", true);
  c = make(seq, "seq", "l1", "l1-average blocks and their equivalence certificate");
  c->add("--m", "m", Kind::kInteger, "number of blocks", true);
  c->add("--n", "n", Kind::kInteger, "block length", true);
  c->add("--start", "start", Kind::kInteger, "first index");
  c->add("--emit-blocks", "emit_blocks", Kind::kFlag, "include the blocks");
  c = make(seq, "seq", "lemma-duo", "best l-part sum of an l1 average against its norm + eps");
  c->add("--eps", "eps", Kind::kNumber, "eps", true);
  c->add("--l", "l", Kind::kInteger, "number of parts", true);
  c->add("--m", "m", Kind::kInteger, "number of averaged blocks", true);
  c->add("--nlen", "nlen", Kind::kInteger, "block length", true);
  c = make(seq, "seq", "equiv", "empirical equivalence constant of two block sequences");
  c->add("--xs", "xs", Kind::kJson, "first block sequence", true);
  c->add("--ys", "ys", Kind::kJson, "second block sequence", true);
  c->add("--coeffs", "coeffs", Kind::kJson, "coefficient tuples (default: all 0/1 tuples)");
  c = make(seq, "seq", "dominate", "margin of |sum a y| - |sum a e| for normalized blocks");
  c->add("--ys", "ys", Kind::kJson, "normalized block sequence", true);
  c->add("--coeffs", "coeffs", Kind::kJson, "coefficient tuples (default: all 0/1 tuples)");
  c = make(seq, "seq", "project", "block projection and its norm estimate");
  c->add("--ys", "ys", Kind::kJson, "normalized block sequence", true);
  c->add("--samples", "samples", Kind::kJson, "sample vectors (default: unit vectors and the blocks)");
  c->add("--ce", "c_e", Kind::kNumber, "equivalence constant (default: measured)");
  c = make(seq, "seq", "select", "greedy block selection with growth conditions");
  c->add("--budget", "budget", Kind::kInteger, "number of blocks");
  std::string select_schedule;
  CLI::Option* select_schedule_opt =
      c->app->add_option("--schedule", select_schedule, "geometric, harmonic or a JSON array");
  c->add("--source-length", "source_length", Kind::kInteger, "length of the flat source blocks");
  c->add("--start", "start", Kind::kInteger, "first index");
  c->add("--max-length", "max_length", Kind::kInteger, "largest block to materialize");
  Command* select_cmd = c;
  c = make(seq, "seq", "stabilize", "finite subsequence stabilization demo");
  c->add("--family", "family", Kind::kJson, "block sequence", true);
  c->add("--depth", "depth", Kind::kInteger, "levels");
  std::string stab_schedule;
  CLI::Option* stab_schedule_opt = c->app->add_option("--schedule", stab_schedule, "geometric, harmonic or a JSON array");
  c->add("--ks", "ks", Kind::kJson, "k schedule as a JSON array");
  c->add("--joint-cap", "joint_support_cap", Kind::kInteger, "support cap for joint checks");
  Command* stab_cmd = c;

  CLI::App* audit = app.add_subcommand("audit", "inequality audits and experiments");
  audit->require_subcommand(1);
  c = make(audit, "audit", "ineq", "audit E1-E4 on grids");
  c->add("--c", "c", Kind::kNumber, "constant c");
  c->add("--xi-grid", "xi_grid", Kind::kJson, "xi grid: JSON array or {from, to, per_octave}");
  c->add("--nu-grid", "nu_grid", Kind::kJson, "nu grid");
  c = make(audit, "audit", "minc", "smallest c on the 0.01 lattice");
  c->add("--xi-grid", "xi_grid", Kind::kJson, "xi grid");
  c->add("--nu-grid", "nu_grid", Kind::kJson, "nu grid");
  c = make(audit, "audit", "gamma", "gamma(r) = 1/(1 - d/sqrt(f(r)))");
  c->add("--d", "d", Kind::kNumber, "d", true);
  c->add("--log2r", "log2r", Kind::kNumber, "log2 r", true);
  c = make(audit, "audit", "beta", "tower product with certified tail");
  c->add("--d", "d", Kind::kNumber, "d", true);
  c->add("--log2r", "log2r", Kind::kNumber, "log2 r", true);
  c->add("--tail-tol", "tail_tol", Kind::kNumber, "tail tolerance");
  c->add("--max-terms", "max_terms", Kind::kInteger, "factor budget");
  c->add("--tilde", "tilde", Kind::kFlag, "use the g weight");
  c = make(audit, "audit", "lemma-duo", "same as seq lemma-duo");
  c->add("--eps", "eps", Kind::kNumber, "eps", true);
  c->add("--l", "l", Kind::kInteger, "number of parts", true);
  c->add("--m", "m", Kind::kInteger, "number of averaged blocks", true);
  c->add("--nlen", "nlen", Kind::kInteger, "block length", true);
  c = make(audit, "audit", "gnorm", "g-norm against f-norm and the scalar identities");
  c->add("--vectors", "vectors", Kind::kJson, "vectors to compare");
  c->add("--random", "random", Kind::kInteger, "number of random vectors");
  c->add("--seed", "seed", Kind::kInteger, "random seed");
  c->add("--max-support", "max_support", Kind::kInteger, "random support bound");
  c->add("--scalar-max-l", "scalar_max_l", Kind::kInteger, "range of the scalar checks");
  c = make(audit, "audit", "pente", "both sides of the layer-descent inequality");
  c->add("vector", "vector", Kind::kJson, "vector JSON, @file or -", true);
  c->add("--r", "r", Kind::kNumber, "r >= 2");
  c->add("--d", "d", Kind::kNumber, "d");

  CLI::App* replay = app.add_subcommand("replay", "re-run a run record and compare outputs bitwise");
  std::string replay_path;
  replay->add_option("record", replay_path, "record file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (replay->parsed()) {
    std::string text;
    try {
      text = read_source("@" + replay_path);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 2;
    }
    int identical = 0;
    char* report = nullptr;
    const snorm_status s = snorm_replay(text.c_str(), &identical, &report);
    if (s != SNORM_OK) {
      std::fprintf(stderr, "error: %s\n", snorm_last_error());
      return exit_code(s);
    }
    write_text(out_path, report);
    snorm_string_free(report);
    return identical ? 0 : 1;
  }

  Command* chosen = nullptr;
  for (auto& cmd : commands)
    if (cmd->app->parsed()) chosen = cmd.get();
  if (!chosen) return 2;

  Json args = Json::object();
  try {
    for (const auto& f : chosen->fields) {
      if (f->kind == Kind::kFlag ? !f->flag : f->opt->count() == 0) continue;
      args[f->key] = field_value(*f);
    }
    if (chosen->verb == "norm" && no_character) args["character"] = false;
    if (chosen == select_cmd && select_schedule_opt->count()) args["schedule"] = schedule_value(select_schedule);
    if (chosen == stab_cmd && stab_schedule_opt->count()) args["schedule"] = schedule_value(stab_schedule);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: bad argument: %s\n", e.what());
    return 2;
  }

  ContextGuard ctx;
  auto check = [](snorm_status s) {
    if (s != SNORM_OK) {
      std::fprintf(stderr, "error: %s\n", snorm_last_error());
      std::exit(exit_code(s));
    }
  };
  check(snorm_context_create(&ctx.ctx));
  if (config_path.empty())
    if (const char* env = std::getenv("SNORM_CONFIG")) config_path = env;
  if (!config_path.empty()) check(snorm_context_load_config(ctx.ctx, config_path.c_str()));
  if (!system.empty()) {
    std::string descriptor = system;
    try {
      descriptor = read_source(system);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 2;
    }
    check(snorm_context_set_system(ctx.ctx, descriptor.c_str()));
  }
  if (tolerance != 0.0) check(snorm_context_set_tolerance(ctx.ctx, tolerance));
  if (guard != 0) check(snorm_context_set_guard(ctx.ctx, guard));
  if (threads != 0) check(snorm_context_set_parallelism(ctx.ctx, threads));
  if (!cache_path.empty()) {
    char* warning = nullptr;
    check(snorm_context_set_cache(ctx.ctx, cache_path.c_str(), &warning));
    if (warning) {
      std::fprintf(stderr, "warning: %s\n", warning);
      snorm_string_free(warning);
    }
  }

  const std::string args_text = args.dump();
  char* json = nullptr;
  char* csv = nullptr;
  char* record = nullptr;
  int outcome = 0;
  const snorm_status s =
      record_path.empty()
          ? snorm_run(ctx.ctx, chosen->verb.c_str(), chosen->sub.c_str(), args_text.c_str(), &json, &csv, &outcome)
          : snorm_record_run(ctx.ctx, chosen->verb.c_str(), chosen->sub.c_str(), args_text.c_str(), &json, &csv,
                             &outcome, &record);
  if (s != SNORM_OK) {
    std::fprintf(stderr, "error: %s\n", snorm_last_error());
    return exit_code(s);
  }
  bool ok = write_text(out_path, want_csv ? std::string(csv) : std::string(json));
  if (record) {
    ok = write_text(record_path, record) && ok;
    snorm_string_free(record);
  }
  snorm_string_free(json);
  snorm_string_free(csv);
  if (!cache_path.empty()) check(snorm_context_save_cache(ctx.ctx));
  if (!ok) {
    std::fprintf(stderr, "error: cannot write output\n");
    return 2;
  }
  return outcome == 0 ? 0 : 1;
}
