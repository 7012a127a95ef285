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

#include <cstdio>
#include <fstream>
#include <string>

#include "snorm/config.hpp"
#include "snorm/error.hpp"
#include "snorm/json_io.hpp"

using namespace snorm;

TEST_SUITE("cli") {
  TEST_CASE("config defaults and validation") {
    Config c;
    CHECK(c.tolerance == 1e-9);
    CHECK(c.support_guard == 4096);
    CHECK_NOTHROW(c.validate());
    c.tolerance = 0;
    CHECK_THROWS_AS(c.validate(), Error);
    c = Config{};
    c.support_guard = 0;
    CHECK_THROWS_AS(c.validate(), Error);
    CHECK_THROWS_AS(Config::from_json(Json::parse(R"({"tolerance":1e-9,"extra":1})")), Error);
    CHECK_THROWS_AS(Config::from_json(Json::parse(R"({"system":"h"})")), Error);
  }

  TEST_CASE("config round-trips through JSON and files") {
    Config c;
    c.tolerance = 1e-7;
    c.system = Json::parse(R"({"name":"w","min_parts":2,"log2_affine":[1,2]})");
    c.parallelism = 3;
    const Config back = Config::from_json(c.to_json());
    CHECK(back.to_json() == c.to_json());
    const std::string path = "config_roundtrip.json";
    std::ofstream(path) << c.to_json().dump();
    CHECK(Config::load(path).to_json() == c.to_json());
    std::remove(path.c_str());
    CHECK_THROWS_AS(Config::load("no/such/config.json"), Error);
  }

  TEST_CASE("systems from JSON") {
    CHECK(system_from_json("f").min_parts() == 2);
    CHECK(system_from_json("g").min_parts() == 3);
    const NormSystem s = system_from_json(Json::parse(R"({"name":"t","min_parts":2,"table":[1.5,2,2.5]})"));
    CHECK(s.kind() == NormSystem::Kind::kTable);
    CHECK(s.weight(3) == 2.0);
    CHECK_THROWS_AS(system_from_json(Json::parse(R"({"name":"t","min_parts":2})")), Error);
    CHECK_THROWS_AS(system_from_json(Json::parse(R"({"name":"t","min_parts":2,"table":[2],"log2_affine":[1,1]})")),
                    Error);
  }

  TEST_CASE("run records and input digests") {
    Config c;
    const Json args = Json::parse(R"({"vector":{"dense":[1,1]}})");
    const std::string d = inputs_digest("norm", "", args, c);
    c.parallelism = 4;
    c.cache_path = "somewhere.bin";
    CHECK(inputs_digest("norm", "", args, c) == d);
    c.tolerance = 1e-8;
    CHECK(inputs_digest("norm", "", args, c) != d);
    CHECK(inputs_digest("norm", "", Json::parse(R"({"vector":{"dense":[1,2]}})"), Config{}) != d);

    RunRecord r;
    r.verb = "norm";
    r.args = args;
    r.inputs_digest = d;
    r.output_json = "{}\n";
    r.outcome = 0;
    r.engine_version = "1.0.0";
    const RunRecord back = RunRecord::from_json(r.to_json());
    CHECK(back.to_json() == r.to_json());
  }

  TEST_CASE("JSON output uses sorted keys and round-trip doubles") {
    const Json j = Json::parse(R"({"b":0.1,"a":1.2618595071429148})");
    const std::string s = dump(j);
    CHECK(s.find("\"a\"") < s.find("\"b\""));
    CHECK(Json::parse(s)["a"].get<double>() == 1.2618595071429148);
    CHECK(s.back() == '\n');
  }
}
