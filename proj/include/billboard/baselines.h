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

// Comparison heuristics for the slot/tag selection problem.
//
//   RSRT    random slots, random tags
//   RSHFT   random slots, tags with the most associated users
//   MAXSRT  slots with the largest coverage, random tags
//   TSTT    top slots and top tags by individual influence
//   TSRT    top slots by individual influence, random tags
//   RSTT    random slots, top tags by individual influence
//
// Random draws are uniform without replacement. Slots and tags use separate
// streams derived from the seed, so the k-slot draw is a prefix of the
// (k+1)-slot draw for the same seed.

#ifndef BILLBOARD_BASELINES_H_
#define BILLBOARD_BASELINES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "billboard/instance_index.h"
#include "billboard/solvers.h"

namespace billboard {

enum class BaselineKind { kRSRT, kRSHFT, kMAXSRT, kTSTT, kTSRT, kRSTT };

inline constexpr BaselineKind kAllBaselines[] = {
    BaselineKind::kRSRT, BaselineKind::kRSHFT, BaselineKind::kMAXSRT,
    BaselineKind::kTSTT, BaselineKind::kTSRT,  BaselineKind::kRSTT};

std::string BaselineName(BaselineKind kind);
std::optional<BaselineKind> ParseBaseline(const std::string& name);
// Everything except TSTT draws at random.
bool IsRandomized(BaselineKind kind);

// Number of users that can see slot s.
std::int64_t SlotCoverage(const InstanceIndex& index, SlotId s);

// Number of distinct users with Pr(u, s | c) > 0 for some slot s.
std::int64_t TagFrequency(const InstanceIndex& index, TagId c);

struct SingletonRankings {
  std::vector<SlotId> slots;  // by Phi({s}, {h'}) descending
  std::vector<TagId> tags;    // by Phi({s'}, {c}) descending
};

// Ties go to the lower id.
SingletonRankings RankBySingletonInfluence(const InstanceIndex& index);

SolveResult RunBaseline(const InstanceIndex& index, BaselineKind kind, int k,
                        int l, std::uint64_t seed);

}  // namespace billboard

#endif  // BILLBOARD_BASELINES_H_
