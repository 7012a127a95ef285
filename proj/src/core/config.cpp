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
#include "snorm/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "snorm/error.hpp"
#include "snorm/memo.hpp"

namespace snorm {

void Config::validate() const {
  if (!(tolerance > 0.0)) throw_input("config: tolerance must be > 0");
  if (support_guard < 1) throw_input("config: support guard must be >= 1");
  if (parallelism < 1) throw_input("config: parallelism must be >= 1");
  (void)system_from_json(system);
}

Json Config::to_json() const {
  Json j{{"tolerance", tolerance}, {"support_guard", support_guard}, {"system", system}, {"parallelism", parallelism}};
  j["cache_path"] = cache_path ? Json(*cache_path) : Json(nullptr);
  return j;
}

Config Config::from_json(const Json& j) {
  if (!j.is_object()) throw_input("config must be a JSON object");
  Config c;
  for (const auto& [key, v] : j.items()) {
    if (key == "tolerance") {
      if (!v.is_number()) throw_input("config: tolerance must be a number");
      c.tolerance = v.get<double>();
    } else if (key == "support_guard") {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 1) throw_input("config: support_guard must be >= 1");
      c.support_guard = v.get<std::size_t>();
    } else if (key == "system") {
      c.system = v;
    } else if (key == "cache_path") {
      if (!v.is_null() && !v.is_string()) throw_input("config: cache_path must be a string");
      if (v.is_string()) c.cache_path = v.get<std::string>();
    } else if (key == "parallelism") {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 1) throw_input("config: parallelism must be >= 1");
      c.parallelism = v.get<unsigned>();
    } else {
      throw_input("config: unknown key \"" + key + "\"");
    }
  }
  c.validate();
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_input("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(parse_json_text(ss.str()));
}

std::string inputs_digest(const std::string& verb, const std::string& sub, const Json& args, const Config& cfg) {
  Json c = cfg.to_json();
  c.erase("cache_path");
  c.erase("parallelism");
  const Json canon{{"verb", verb}, {"sub", sub}, {"args", args}, {"config", c}};
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest(canon.dump())));
  return buf;
}

Json RunRecord::to_json() const {
  return Json{{"engine_version", engine_version},
              {"command", Json{{"verb", verb}, {"sub", sub}, {"args", args}}},
              {"config", config.to_json()},
              {"inputs_digest", inputs_digest},
              {"outputs", Json{{"json", output_json}, {"csv", output_csv}, {"outcome", outcome}}},
              {"timing_ms", timing_ms}};
}

RunRecord RunRecord::from_json(const Json& j) {
  try {
    for (const auto& [key, value] : j.items())
      if (key != "engine_version" && key != "command" && key != "config" && key != "inputs_digest" &&
          key != "outputs" && key != "timing_ms")
        throw_input("run record: unknown key \"" + key + "\"");
    RunRecord r;
    r.engine_version = j.at("engine_version").get<std::string>();
    const Json& cmd = j.at("command");
    r.verb = cmd.at("verb").get<std::string>();
    r.sub = cmd.at("sub").get<std::string>();
    r.args = cmd.at("args");
    r.config = Config::from_json(j.at("config"));
    r.inputs_digest = j.at("inputs_digest").get<std::string>();
    const Json& out = j.at("outputs");
    r.output_json = out.at("json").get<std::string>();
    r.output_csv = out.at("csv").get<std::string>();
    r.outcome = out.at("outcome").get<int>();
    r.timing_ms = j.value("timing_ms", 0.0);
    return r;
  } catch (const Json::exception& e) {
    throw_input(std::string("malformed run record: ") + e.what());
  }
}

}  // namespace snorm
