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
#pragma once

// JSON encodings of vectors, block sequences, systems and reports.
//   vector:  {"coords": [[index, value], ...]}  or  {"dense": [v1, v2, ...]}
//   blocks:  [vector, ...]  or  {"blocks": [vector, ...]}

#include <string>
#include <vector>

#include <json.hpp>

#include "snorm/auditor.hpp"
#include "snorm/engine.hpp"
#include "snorm/selector.hpp"
#include "snorm/sequence_lab.hpp"
#include "snorm/stabilize.hpp"

namespace snorm {

using Json = nlohmann::json;

/// Throws Error(kInput) on malformed text.
Json parse_json_text(const std::string& text);

FinVector vector_from_json(const Json& j);
Json vector_to_json(const FinVector& x);
BlockSequence blocks_from_json(const Json& j);
Json blocks_to_json(const BlockSequence& ys);
std::vector<std::vector<double>> tuples_from_json(const Json& j);

/// "f", "g", or an object {"name", "min_parts", "log2_affine": [a, b]} /
/// {"name", "min_parts", "table": [w(l0), w(l0 + 1), ...]}.
NormSystem system_from_json(const Json& j);
Json system_to_json(const NormSystem& sys);

Json to_json(const WitnessTree& t);
Json to_json(const Functional& f);
Json to_json(const Character& c);
Json to_json(const SplitProfile& p);
Json to_json(const SplitBounds& b);
Json to_json(const L1Block& b, bool with_blocks);
Json to_json(const LemmaDuoResult& r);
Json to_json(const EquivalenceResult& r);
Json to_json(const ProjectionReport& r);
Json to_json(const BigCount& k);
Json to_json(const SelectReport& r);
Json to_json(const StabilizationState& s);
Json to_json(const AuditReport& r);  // summary, no rows
Json to_json(const BetaResult& r);
Json to_json(const PenteResult& r);
Json to_json(const ScalarFgCheck& c);

/// Canonical text: two-space indent, keys sorted, shortest round-trip doubles.
std::string dump(const Json& j);

}  // namespace snorm
