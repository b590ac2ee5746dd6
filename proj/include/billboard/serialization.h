// Copyright 2026 The Authors.
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

// Instance JSON document:
//
//   {
//     "meta": {"t1", "t2", "delta", "lambda_m", "default_pair_prob"},
//     "slots": [{"id", "billboard", "billboard_index", "start", "end",
//                "default_tag_prob"}, ...],
//     "tags": [{"id", "name", "cost", "weight", "default_slot_prob"}, ...],
//     "users": ["<original id>", ...],
//     "visibility": {"<slot id>": [user ids], ...},
//     "probs": [[user, slot, tag, prob], ...]
//   }

#ifndef BILLBOARD_SERIALIZATION_H_
#define BILLBOARD_SERIALIZATION_H_

#include <string>

#include "billboard/domain.h"
#include "json.hpp"

namespace billboard {

nlohmann::json InstanceToJson(const InfluenceInstance& instance);
// Throws ParseError on a structurally malformed document. The result is not
// validated; run ValidateInstance or build an InstanceIndex.
InfluenceInstance InstanceFromJson(const nlohmann::json& doc);

void SaveInstance(const std::string& path, const InfluenceInstance& instance);
InfluenceInstance LoadInstance(const std::string& path);

// Canonical serialized text (compact, sorted keys).
std::string SerializeInstance(const InfluenceInstance& instance);

// Lower-case hex SHA-256 of `text`.
std::string Sha256Hex(const std::string& text);
// SHA-256 of the canonical serialization.
std::string InstanceDigest(const InfluenceInstance& instance);

}  // namespace billboard

#endif  // BILLBOARD_SERIALIZATION_H_
