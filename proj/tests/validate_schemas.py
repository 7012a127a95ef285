#!/usr/bin/env python3
# Copyright 2026 The snorm Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Runs CLI commands and validates their JSON against docs/schemas/v1."""

import argparse
import json
import pathlib
import subprocess
import sys
import tempfile

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

ONES8 = '{"dense":[1,1,1,1,1,1,1,1]}'
FAMILY = ('[{"coords":[[1,1],[2,1],[3,1],[4,1]]},{"coords":[[5,1],[6,2]]},'
          '{"coords":[[7,1],[8,1],[9,1],[10,1]]},{"coords":[[11,1],[12,2]]}]')
BASIS3 = '[{"dense":[1]},{"dense":[0,1]},{"dense":[0,0,1]}]'

# (schema, arguments, accepted exit codes)
CASES = [
    ("norm", ["norm", "--witness", "--functional", '{"dense":[1,2,1,0.5]}'], {0}),
    ("norm", ["--system", "g", "norm", '{"coords":[[1,1],[5,-2]]}'], {0}),
    ("seq-split", ["seq", "split", "--eps", "0.5", "--normalize", ONES8], {0}),
    ("seq-split", ["seq", "split", "--eps", "1", '{"dense":[0.25,0.5]}'], {0}),
    ("seq-bounds", ["seq", "bounds", "--eps", "0.25"], {0}),
    ("seq-l1", ["seq", "l1", "--m", "4", "--n", "15", "--emit-blocks"], {0}),
    ("lemma-duo", ["seq", "lemma-duo", "--eps", "1", "--l", "2", "--m", "8", "--nlen", "127"], {0}),
    ("lemma-duo", ["audit", "lemma-duo", "--eps", "1", "--l", "2", "--m", "8", "--nlen", "127"], {0}),
    ("seq-equiv", ["seq", "equiv", "--xs", BASIS3, "--ys", BASIS3], {0, 1}),
    ("seq-dominate", ["seq", "dominate", "--ys", BASIS3, "--coeffs", "[[1,1,1]]"], {0, 1}),
    ("seq-project", ["seq", "project", "--ys", BASIS3], {0}),
    ("seq-select", ["seq", "select", "--budget", "2"], {0, 1}),
    ("seq-stabilize", ["seq", "stabilize", "--family", FAMILY, "--depth", "2"], {0, 1}),
    ("audit-ineq", ["audit", "ineq", "--c", "3"], {0}),
    ("audit-minc", ["audit", "minc"], {0}),
    ("audit-gamma", ["audit", "gamma", "--d", "2", "--log2r", "20"], {0}),
    ("audit-beta", ["audit", "beta", "--d", "2", "--log2r", "20"], {0}),
    ("audit-beta", ["audit", "beta", "--d", "2", "--log2r", "20", "--tilde"], {0}),
    ("audit-gnorm", ["audit", "gnorm", "--random", "20", "--seed", "7"], {0, 1}),
    ("audit-pente", ["audit", "pente", '{"dense":[1,1,1,1]}'], {0, 1}),
]


def load_registry(schema_dir):
    registry = Registry()
    by_name = {}
    for path in sorted(schema_dir.glob("*.schema.json")):
        schema = json.loads(path.read_text())
        Draft202012Validator.check_schema(schema)
        registry = registry.with_resource(schema["$id"], Resource.from_contents(schema))
        by_name[path.name[: -len(".schema.json")]] = schema
    return registry, by_name


def run(cli, args):
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--cli", required=True)
    parser.add_argument("--schemas", required=True, type=pathlib.Path)
    opts = parser.parse_args()

    registry, schemas = load_registry(opts.schemas)
    failures = 0

    def check(name, doc, label):
        nonlocal failures
        errors = list(Draft202012Validator(schemas[name], registry=registry).iter_errors(doc))
        status = "ok" if not errors else "INVALID"
        print(f"{status:8} {name:14} {label}")
        for err in errors[:5]:
            print(f"         at {list(err.absolute_path)}: {err.message[:300]}")
        failures += bool(errors)

    with tempfile.TemporaryDirectory() as tmp:
        record = pathlib.Path(tmp) / "run.json"
        for name, args, codes in CASES:
            code, out, err = run(opts.cli, args)
            label = " ".join(args)
            if code not in codes:
                print(f"EXIT {code}  {label}\n{err}")
                failures += 1
                continue
            check(name, json.loads(out), label)

        code, _, err = run(opts.cli, ["--record", str(record), "norm", ONES8])
        if code != 0:
            print(f"EXIT {code}  record\n{err}")
            failures += 1
        else:
            doc = json.loads(record.read_text())
            check("run-record", doc, "--record")
            check("config", doc["config"], "record config")
            code, out, err = run(opts.cli, ["replay", str(record)])
            if code != 0:
                print(f"EXIT {code}  replay\n{err}")
                failures += 1
            else:
                check("replay-report", json.loads(out), "replay")

    print(f"{failures} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
