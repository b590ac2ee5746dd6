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

#include "billboard/baselines.h"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

#include "billboard/errors.h"
#include "billboard/influence.h"

namespace billboard {
namespace {

// Ids sorted by score descending, lowest id first among equal scores.
template <typename Score>
std::vector<std::int32_t> RankDescending(int n, Score&& score) {
  std::vector<double> scores(n);
  for (int i = 0; i < n; ++i) scores[i] = score(i);
  std::vector<std::int32_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  std::stable_sort(ids.begin(), ids.end(),
                   [&scores](auto a, auto b) { return scores[a] > scores[b]; });
  return ids;
}

// First `count` ids of a uniform random permutation of [0, n).
std::vector<std::int32_t> RandomSubset(int n, int count, std::mt19937_64& rng) {
  std::vector<std::int32_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  for (int i = 0; i < count; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(ids[i], ids[pick(rng)]);
  }
  ids.resize(count);
  return ids;
}

std::mt19937_64 Stream(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), stream};
  return std::mt19937_64(seq);
}

std::vector<SlotId> RankSlotsByInfluence(const InstanceIndex& index) {
  const SurvivalState state(index, {}, {.default_tag = true});
  return RankDescending(index.num_slots(),
                        [&state](SlotId s) { return state.SlotGain(s); });
}

std::vector<TagId> RankTagsByInfluence(const InstanceIndex& index) {
  const SurvivalState state(index, {}, {.default_slot = true});
  return RankDescending(index.num_tags(),
                        [&state](TagId c) { return state.TagGain(c); });
}

}  // namespace

std::string BaselineName(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kRSRT:
      return "RSRT";
    case BaselineKind::kRSHFT:
      return "RSHFT";
    case BaselineKind::kMAXSRT:
      return "MAXSRT";
    case BaselineKind::kTSTT:
      return "TSTT";
    case BaselineKind::kTSRT:
      return "TSRT";
    case BaselineKind::kRSTT:
      return "RSTT";
  }
  return "?";
}

std::optional<BaselineKind> ParseBaseline(const std::string& name) {
  for (BaselineKind kind : kAllBaselines) {
    if (BaselineName(kind) == name) return kind;
  }
  return std::nullopt;
}

bool IsRandomized(BaselineKind kind) { return kind != BaselineKind::kTSTT; }

std::int64_t SlotCoverage(const InstanceIndex& index, SlotId s) {
  if (!index.IsSlot(s)) {
    throw ValidationError("unknown slot " + std::to_string(s));
  }
  return index.SlotPairEnd(s) - index.SlotPairBegin(s);
}

std::int64_t TagFrequency(const InstanceIndex& index, TagId c) {
  if (!index.IsTag(c)) {
    throw ValidationError("unknown tag " + std::to_string(c));
  }
  std::int64_t count = 0;
  for (UserId u = 0; u < index.num_users(); ++u) {
    for (PairIndex p : index.UserPairs(u)) {
      if (index.PairProb(p, c) > 0.0) {
        ++count;
        break;
      }
    }
  }
  return count;
}

SingletonRankings RankBySingletonInfluence(const InstanceIndex& index) {
  return {RankSlotsByInfluence(index), RankTagsByInfluence(index)};
}

SolveResult RunBaseline(const InstanceIndex& index, BaselineKind kind, int k,
                        int l, std::uint64_t seed) {
  CheckBudgets(index, k, l);
  const auto start = std::chrono::steady_clock::now();
  auto slot_rng = Stream(seed, 0);
  auto tag_rng = Stream(seed, 1);
  const int n = index.num_slots();
  const int t = index.num_tags();

  SolveResult result;
  std::vector<SlotId> slots;
  std::vector<TagId> tags;
  switch (kind) {
    case BaselineKind::kRSRT:
      slots = RandomSubset(n, k, slot_rng);
      tags = RandomSubset(t, l, tag_rng);
      break;
    case BaselineKind::kRSHFT:
      slots = RandomSubset(n, k, slot_rng);
      tags = RankDescending(t, [&index](TagId c) {
        return static_cast<double>(TagFrequency(index, c));
      });
      result.eval_count = t;
      break;
    case BaselineKind::kMAXSRT:
      slots = RankDescending(n, [&index](SlotId s) {
        return static_cast<double>(SlotCoverage(index, s));
      });
      tags = RandomSubset(t, l, tag_rng);
      result.eval_count = n;
      break;
    case BaselineKind::kTSTT:
      slots = RankSlotsByInfluence(index);
      tags = RankTagsByInfluence(index);
      result.eval_count = n + t;
      break;
    case BaselineKind::kTSRT:
      slots = RankSlotsByInfluence(index);
      tags = RandomSubset(t, l, tag_rng);
      result.eval_count = n;
      break;
    case BaselineKind::kRSTT:
      slots = RandomSubset(n, k, slot_rng);
      tags = RankTagsByInfluence(index);
      result.eval_count = t;
      break;
  }
  slots.resize(k);
  tags.resize(l);
  result.selection = {std::move(slots), std::move(tags)};
  result.value = AggregatedInfluence(index, result.selection);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  result.wall_time_seconds = std::chrono::duration<double>(elapsed).count();
  result.wall_time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  return result;
}

}  // namespace billboard
