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
#include "snorm/snorm.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "commands.hpp"
#include "snorm/brute.hpp"
#include "snorm/config.hpp"
#include "snorm/engine.hpp"
#include "snorm/error.hpp"
#include "snorm/json_io.hpp"
#include "snorm/memo.hpp"

struct snorm_context {
  snorm::Config cfg;
  std::shared_ptr<snorm::MemoTable> memo;
};

struct snorm_system {
  snorm::NormSystem sys;
};

struct snorm_vector {
  snorm::FinVector x;
};

namespace {

thread_local std::string g_last_error;

snorm_status fail(snorm_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs fn, translating exceptions into status codes.
template <class Fn>
snorm_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return SNORM_OK;
  } catch (const snorm::Error& e) {
    switch (e.code()) {
      case snorm::ErrorCode::kPropertyViolation:
        return fail(SNORM_PROPERTY_VIOLATION, e.what());
      case snorm::ErrorCode::kGuard:
        return fail(SNORM_GUARD_EXCEEDED, e.what());
      case snorm::ErrorCode::kInput:
      case snorm::ErrorCode::kDomain:
        return fail(SNORM_INPUT_ERROR, e.what());
    }
    return fail(SNORM_INTERNAL_ERROR, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(SNORM_INPUT_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SNORM_GUARD_EXCEEDED, "out of memory");
  } catch (const std::exception& e) {
    return fail(SNORM_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(SNORM_INTERNAL_ERROR, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) snorm::throw_input(std::string(what) + " is NULL");
}

snorm::EngineOptions options(const snorm_context* ctx) {
  snorm::EngineOptions o;
  o.tolerance = ctx->cfg.tolerance;
  o.support_guard = ctx->cfg.support_guard;
  o.memo = ctx->memo;
  return o;
}

snorm::Engine engine(const snorm_context* ctx, const snorm_system* sys) {
  need(ctx, "context");
  return snorm::Engine(sys ? sys->sys : snorm::system_from_json(ctx->cfg.system), options(ctx));
}

snorm::Json parse_args(const char* args) {
  if (!args || !*args) return snorm::Json::object();
  return snorm::parse_json_text(args);
}

// The memo carried by a fresh context: attached only when a cache path is set.
void attach_cache(snorm_context* ctx, std::string* warning) {
  ctx->memo.reset();
  if (!ctx->cfg.cache_path) return;
  ctx->memo = std::make_shared<snorm::MemoTable>();
  std::string w;
  if (!ctx->memo->load(*ctx->cfg.cache_path, &w) && warning) *warning = w;
}

}  // namespace

extern "C" {

const char* snorm_version(void) { return snorm::kEngineVersion; }
const char* snorm_last_error(void) { return g_last_error.c_str(); }
void snorm_string_free(char* s) { std::free(s); }

snorm_status snorm_context_create(snorm_context** out) {
  return guarded([&] {
    need(out, "out");
    *out = new snorm_context{};
  });
}

void snorm_context_destroy(snorm_context* ctx) { delete ctx; }

snorm_status snorm_context_load_config(snorm_context* ctx, const char* path) {
  return guarded([&] {
    need(ctx, "context");
    need(path, "path");
    ctx->cfg = snorm::Config::load(path);
    attach_cache(ctx, nullptr);
  });
}

snorm_status snorm_context_set_config_json(snorm_context* ctx, const char* json) {
  return guarded([&] {
    need(ctx, "context");
    need(json, "json");
    ctx->cfg = snorm::Config::from_json(snorm::parse_json_text(json));
    attach_cache(ctx, nullptr);
  });
}

snorm_status snorm_context_config_json(const snorm_context* ctx, char** out) {
  return guarded([&] {
    need(ctx, "context");
    need(out, "out");
    *out = copy_string(snorm::dump(ctx->cfg.to_json()));
  });
}

snorm_status snorm_context_set_tolerance(snorm_context* ctx, double tolerance) {
  return guarded([&] {
    need(ctx, "context");
    if (!(tolerance > 0.0)) snorm::throw_input("tolerance must be > 0");
    ctx->cfg.tolerance = tolerance;
  });
}

snorm_status snorm_context_set_guard(snorm_context* ctx, size_t guard) {
  return guarded([&] {
    need(ctx, "context");
    if (guard < 1) snorm::throw_input("support guard must be >= 1");
    ctx->cfg.support_guard = guard;
  });
}

snorm_status snorm_context_set_parallelism(snorm_context* ctx, unsigned threads) {
  return guarded([&] {
    need(ctx, "context");
    if (threads < 1) snorm::throw_input("parallelism must be >= 1");
    ctx->cfg.parallelism = threads;
  });
}

snorm_status snorm_context_set_system(snorm_context* ctx, const char* descriptor) {
  return guarded([&] {
    need(ctx, "context");
    need(descriptor, "descriptor");
    const std::string s(descriptor);
    const snorm::Json j = !s.empty() && s.front() == '{' ? snorm::parse_json_text(s) : snorm::Json(s);
    (void)snorm::system_from_json(j);
    ctx->cfg.system = j;
  });
}

snorm_status snorm_context_set_cache(snorm_context* ctx, const char* path, char** warning) {
  return guarded([&] {
    need(ctx, "context");
    need(path, "path");
    ctx->cfg.cache_path = std::string(path);
    std::string w;
    attach_cache(ctx, &w);
    if (warning) *warning = w.empty() ? nullptr : copy_string(w);
  });
}

snorm_status snorm_context_save_cache(const snorm_context* ctx) {
  return guarded([&] {
    need(ctx, "context");
    if (!ctx->memo || !ctx->cfg.cache_path) snorm::throw_input("no cache attached");
    ctx->memo->save(*ctx->cfg.cache_path);
  });
}

snorm_status snorm_system_create(const char* descriptor, snorm_system** out) {
  return guarded([&] {
    need(descriptor, "descriptor");
    need(out, "out");
    const std::string s(descriptor);
    const snorm::Json j = !s.empty() && s.front() == '{' ? snorm::parse_json_text(s) : snorm::Json(s);
    *out = new snorm_system{snorm::system_from_json(j)};
  });
}

void snorm_system_destroy(snorm_system* sys) { delete sys; }

snorm_status snorm_vector_from_json(const char* json, snorm_vector** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new snorm_vector{snorm::vector_from_json(snorm::parse_json_text(json))};
  });
}

snorm_status snorm_vector_from_coords(const int64_t* indices, const double* values, size_t count, snorm_vector** out) {
  return guarded([&] {
    need(out, "out");
    if (count > 0) {
      need(indices, "indices");
      need(values, "values");
    }
    std::vector<snorm::Coord> c;
    c.reserve(count);
    for (size_t i = 0; i < count; ++i) c.push_back({indices[i], values[i]});
    *out = new snorm_vector{snorm::FinVector::from_coords(std::move(c))};
  });
}

void snorm_vector_destroy(snorm_vector* x) { delete x; }

size_t snorm_vector_support_size(const snorm_vector* x) { return x ? x->x.support_size() : 0; }

snorm_status snorm_norm(const snorm_context* ctx, const snorm_system* sys, const snorm_vector* x, double* out) {
  return guarded([&] {
    need(x, "vector");
    need(out, "out");
    *out = engine(ctx, sys).norm_value(x->x);
  });
}

snorm_status snorm_best_sum(const snorm_context* ctx, const snorm_system* sys, const snorm_vector* x, int64_t k,
                            double* out) {
  return guarded([&] {
    need(x, "vector");
    need(out, "out");
    *out = engine(ctx, sys).best_sum(x->x, k);
  });
}

snorm_status snorm_norm_l(const snorm_context* ctx, const snorm_vector* x, int64_t ell, double* out) {
  return guarded([&] {
    need(ctx, "context");
    need(x, "vector");
    need(out, "out");
    *out = snorm::Engine(snorm::NormSystem::f_system(), options(ctx)).layer_norm(x->x, ell);
  });
}

snorm_status snorm_triple_norm(const snorm_context* ctx, const snorm_vector* x, double r, double* out) {
  return guarded([&] {
    need(ctx, "context");
    need(x, "vector");
    need(out, "out");
    *out = snorm::Engine(snorm::NormSystem::f_system(), options(ctx)).triple_norm(x->x, r);
  });
}

snorm_status snorm_character(const snorm_context* ctx, const snorm_system* sys, const snorm_vector* x, int64_t* ell,
                             int* tie) {
  return guarded([&] {
    need(x, "vector");
    need(ell, "ell");
    const snorm::Character c = engine(ctx, sys).character(x->x);
    *ell = c.infinite ? -1 : c.ell;
    if (tie) *tie = c.tie ? 1 : 0;
  });
}

snorm_status snorm_brute_norm(const snorm_system* sys, const snorm_vector* x, double* out) {
  return guarded([&] {
    need(sys, "system");
    need(x, "vector");
    need(out, "out");
    *out = snorm::brute_norm(sys->sys, x->x);
  });
}

snorm_status snorm_constant_norm(const snorm_system* sys, int64_t length, double coefficient, double* out) {
  return guarded([&] {
    need(sys, "system");
    need(out, "out");
    *out = snorm::constant_vector_norm(sys->sys, length, coefficient);
  });
}

snorm_status snorm_norm_json(const snorm_context* ctx, const snorm_system* sys, const snorm_vector* x, char** out) {
  return guarded([&] {
    need(ctx, "context");
    need(x, "vector");
    need(out, "out");
    const snorm::Engine e = engine(ctx, sys);
    const snorm::NormResult r = e.norm(x->x, !x->x.empty(), !x->x.empty());
    snorm::Json body{{"value", r.value}, {"system", snorm::system_to_json(e.system())}};
    body["character"] = r.character ? snorm::to_json(*r.character) : snorm::Json(nullptr);
    body["witness"] = r.witness ? snorm::to_json(*r.witness) : snorm::Json(nullptr);
    body["functional"] = x->x.empty() ? snorm::Json(nullptr) : snorm::to_json(e.norming_functional(x->x));
    *out = copy_string(snorm::dump(body));
  });
}

snorm_status snorm_run(const snorm_context* ctx, const char* verb, const char* sub, const char* args, char** json,
                       char** csv, int* outcome) {
  return guarded([&] {
    need(ctx, "context");
    need(verb, "verb");
    need(json, "json");
    const snorm::cmd::Output o = snorm::cmd::run(ctx->cfg, ctx->memo, verb, sub ? sub : "", parse_args(args));
    *json = copy_string(o.json);
    if (csv) *csv = copy_string(o.csv);
    if (outcome) *outcome = o.outcome;
  });
}

snorm_status snorm_record_run(const snorm_context* ctx, const char* verb, const char* sub, const char* args,
                              char** json, char** csv, int* outcome, char** record) {
  return guarded([&] {
    need(ctx, "context");
    need(verb, "verb");
    need(json, "json");
    need(record, "record");
    snorm::RunRecord rec;
    rec.verb = verb;
    rec.sub = sub ? sub : "";
    rec.args = parse_args(args);
    rec.config = ctx->cfg;
    rec.engine_version = snorm::kEngineVersion;
    rec.inputs_digest = snorm::inputs_digest(rec.verb, rec.sub, rec.args, rec.config);
    const auto t0 = std::chrono::steady_clock::now();
    const snorm::cmd::Output o = snorm::cmd::run(ctx->cfg, ctx->memo, rec.verb, rec.sub, rec.args);
    rec.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rec.output_json = o.json;
    rec.output_csv = o.csv;
    rec.outcome = o.outcome;
    *json = copy_string(o.json);
    if (csv) *csv = copy_string(o.csv);
    if (outcome) *outcome = o.outcome;
    *record = copy_string(snorm::dump(rec.to_json()));
  });
}

snorm_status snorm_replay(const char* record, int* identical, char** report) {
  return guarded([&] {
    need(record, "record");
    need(identical, "identical");
    const snorm::RunRecord rec = snorm::RunRecord::from_json(snorm::parse_json_text(record));
    // Replays run without the cache: outputs must not depend on it.
    const snorm::cmd::Output o = snorm::cmd::run(rec.config, nullptr, rec.verb, rec.sub, rec.args);
    const bool same_json = o.json == rec.output_json;
    const bool same_csv = o.csv == rec.output_csv;
    const bool same_outcome = o.outcome == rec.outcome;
    const bool same_digest = snorm::inputs_digest(rec.verb, rec.sub, rec.args, rec.config) == rec.inputs_digest;
    *identical = same_json && same_csv && same_outcome && same_digest ? 1 : 0;
    if (report) {
      snorm::Json r{{"identical", *identical == 1},
                    {"json_identical", same_json},
                    {"csv_identical", same_csv},
                    {"outcome_identical", same_outcome},
                    {"digest_identical", same_digest},
                    {"recorded_version", rec.engine_version},
                    {"engine_version", snorm::kEngineVersion}};
      *report = copy_string(snorm::dump(r));
    }
  });
}

}  // extern "C"
