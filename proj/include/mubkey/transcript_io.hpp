// Copyright 2026 The mubkey Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Persisted forms of sessions. Field elements are written as canonical indices,
// bases as ordinals (d = computational). Absent values are JSON null.
//
// Transcript line (JSON Lines, one round each):
//   {"v":1,"round","kind","bit_sent","lambda","b1","c1","c1p","eve_basis",
//    "eve_outcome","decoded","check_b2","check_expected","check_measured","check_passed"}
// "eve_outcome" is [first, second] for Bob's two particles.

#pragma once

#include <string>

#include <json.hpp>

#include "mubkey/protocol.hpp"

namespace mubkey {

inline constexpr int kSchemaVersion = 1;

nlohmann::ordered_json field_to_json(const FieldSpec& field);
/// {"p", "n", "modulus" (optional)}; UsageError on invalid parameters.
Field field_from_json(const nlohmann::json& doc);

nlohmann::ordered_json config_to_json(const SessionConfig& config);
/// Missing keys take SessionConfig defaults; "field" is required.
SessionConfig config_from_json(const nlohmann::json& doc);

nlohmann::ordered_json record_to_json(const RoundRecord& record);
/// Inverse of record_to_json (equality outcomes are not persisted).
RoundRecord record_from_json(const nlohmann::json& doc);

std::string transcript_to_jsonl(const Transcript& transcript);
nlohmann::ordered_json summary_to_json(const Transcript& transcript);

}  // namespace mubkey
