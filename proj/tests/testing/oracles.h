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

// Reference implementations for tests. Everything here works directly on
// the InfluenceInstance tables (no InstanceIndex, no SurvivalState) so it
// shares no code with the engine it checks.

#ifndef BILLBOARD_TESTS_TESTING_ORACLES_H_
#define BILLBOARD_TESTS_TESTING_ORACLES_H_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "billboard/domain.h"

namespace billboard::testing {

struct RandomInstanceSpec {
  int n_slots = 6;
  int n_tags = 3;
  int n_users = 10;
  double visibility = 0.4;  // chance that a user sees a slot
  double zero_prob = 0.1;   // chance that a visible (u, s, c) entry is 0
  double max_prob = 0.6;
  std::uint64_t seed = 1;
};

// A valid instance with random visibility, probabilities and defaults.
// Slot i belongs to billboard i / 4 and uses window i % 4 of a [0, 3]
// horizon with unit slot length.
inline InfluenceInstance RandomInstance(const RandomInstanceSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  InfluenceInstance inst;
  constexpr int kWindows = 4;
  inst.meta = {0, kWindows - 1, 1, 100.0};
  const int n_billboards = (spec.n_slots + kWindows - 1) / kWindows;
  for (int b = 0; b < n_billboards; ++b) {
    inst.billboard_names.push_back("B" + std::to_string(b));
  }
  for (int s = 0; s < spec.n_slots; ++s) {
    inst.slots.push_back({s, s / kWindows, {s % kWindows, s % kWindows}});
  }
  for (int c = 0; c < spec.n_tags; ++c) {
    inst.tags.push_back({c, "T" + std::to_string(c), 1.0, 1.0});
  }
  for (int u = 0; u < spec.n_users; ++u) {
    inst.users.push_back("U" + std::to_string(u));
  }
  inst.slot_users.resize(spec.n_slots);
  for (int s = 0; s < spec.n_slots; ++s) {
    for (int u = 0; u < spec.n_users; ++u) {
      if (unit(rng) >= spec.visibility) continue;
      inst.slot_users[s].push_back(u);
      for (int c = 0; c < spec.n_tags; ++c) {
        if (unit(rng) < spec.zero_prob) continue;
        inst.probs.push_back({u, s, c, spec.max_prob * unit(rng)});
      }
    }
  }
  inst.RebuildInverseVisibility();
  inst.CanonicalizeProbs();
  for (int s = 0; s < spec.n_slots; ++s) {
    inst.defaults.default_tag_probs.push_back(spec.max_prob * unit(rng));
  }
  for (int c = 0; c < spec.n_tags; ++c) {
    inst.defaults.default_slot_probs.push_back(0.3 * unit(rng));
  }
  inst.defaults.default_pair_prob = 0.3 * unit(rng);
  return inst;
}

// Dense Pr(u, s | c) table built from the sparse entries.
class ProbTable {
 public:
  explicit ProbTable(const InfluenceInstance& inst) : inst_(&inst) {
    for (const ProbEntry& e : inst.probs) {
      table_[{e.user, e.slot, e.tag}] = e.prob;
    }
  }

  double Get(UserId u, SlotId s, TagId c) const {
    const auto it = table_.find({u, s, c});
    return it == table_.end() ? 0.0 : it->second;
  }

  bool Sees(UserId u, SlotId s) const {
    const auto& users = inst_->slot_users[s];
    return std::find(users.begin(), users.end(), u) != users.end();
  }

 private:
  const InfluenceInstance* inst_;
  std::map<std::tuple<UserId, SlotId, TagId>, double> table_;
};

// 1 - prod over visible selected slots and selected tags of (1 - p), with
// optional virtual members in the product.
inline double OracleUserProbability(const InfluenceInstance& inst,
                                    const ProbTable& table, UserId u,
                                    const std::vector<SlotId>& slots,
                                    const std::vector<TagId>& tags,
                                    bool default_slot = false,
                                    bool default_tag = false) {
  const auto& d = inst.defaults;
  double survive = 1.0;
  for (SlotId s : slots) {
    if (!table.Sees(u, s)) continue;
    for (TagId c : tags) survive *= 1.0 - table.Get(u, s, c);
    if (default_tag) survive *= 1.0 - d.default_tag_probs[s];
  }
  if (default_slot) {
    for (TagId c : tags) survive *= 1.0 - d.default_slot_probs[c];
    if (default_tag) survive *= 1.0 - d.default_pair_prob;
  }
  return 1.0 - survive;
}

inline double OracleInfluence(const InfluenceInstance& inst,
                              const std::vector<SlotId>& slots,
                              const std::vector<TagId>& tags,
                              bool default_slot = false,
                              bool default_tag = false) {
  const ProbTable table(inst);
  double total = 0.0;
  for (UserId u = 0; u < static_cast<UserId>(inst.users.size()); ++u) {
    total += OracleUserProbability(inst, table, u, slots, tags, default_slot,
                                   default_tag);
  }
  return total;
}

struct OracleOptimum {
  std::vector<SlotId> slots;  // ascending
  std::vector<TagId> tags;    // ascending
  double value = -1.0;
  // Best value among candidates other than the argmax; used to detect
  // near-ties where float noise may legitimately reorder candidates.
  double runner_up = -1.0;
};

inline std::vector<std::int32_t> MaskMembers(std::uint32_t mask) {
  std::vector<std::int32_t> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i);
  }
  return out;
}

// Enumerates subsets as bitmasks; ties go to the lexicographically smallest
// (slots, tags) pair of ascending id lists.
inline OracleOptimum BruteForceOptimum(const InfluenceInstance& inst, int k,
                                       int l) {
  const int n = static_cast<int>(inst.slots.size());
  const int t = static_cast<int>(inst.tags.size());
  const ProbTable table(inst);
  OracleOptimum best;
  for (std::uint32_t sm = 0; sm < (1u << n); ++sm) {
    if (std::popcount(sm) != k) continue;
    const auto slots = MaskMembers(sm);
    for (std::uint32_t tm = 0; tm < (1u << t); ++tm) {
      if (std::popcount(tm) != l) continue;
      const auto tags = MaskMembers(tm);
      double value = 0.0;
      for (UserId u = 0; u < static_cast<UserId>(inst.users.size()); ++u) {
        value += OracleUserProbability(inst, table, u, slots, tags);
      }
      const bool better =
          value > best.value ||
          (value == best.value &&
           std::tie(slots, tags) < std::tie(best.slots, best.tags));
      if (better) {
        best.runner_up = std::max(best.runner_up, best.value);
        best.value = value;
        best.slots = slots;
        best.tags = tags;
      } else {
        best.runner_up = std::max(best.runner_up, value);
      }
    }
  }
  return best;
}

}  // namespace billboard::testing

#endif  // BILLBOARD_TESTS_TESTING_ORACLES_H_
