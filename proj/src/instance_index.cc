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

#include "billboard/instance_index.h"

#include <algorithm>
#include <string>

#include "billboard/errors.h"

namespace billboard {

InstanceIndex::InstanceIndex(const InfluenceInstance& instance) {
  if (auto violations = ValidateInstance(instance); !violations.empty()) {
    std::string message = "invalid instance (" +
                          std::to_string(violations.size()) + " violations)";
    for (std::size_t i = 0; i < violations.size() && i < 10; ++i) {
      message += "\n  " + violations[i];
    }
    throw ValidationError(message);
  }
  num_slots_ = static_cast<int>(instance.num_slots());
  num_tags_ = static_cast<int>(instance.num_tags());
  num_users_ = static_cast<int>(instance.num_users());
  stride_ = static_cast<std::size_t>(num_tags_) + 1;

  slot_offsets_.assign(num_slots_ + 1, 0);
  for (SlotId s = 0; s < num_slots_; ++s) {
    slot_offsets_[s + 1] =
        slot_offsets_[s] +
        static_cast<PairIndex>(instance.slot_users[s].size());
  }
  const PairIndex num_pairs = slot_offsets_.back();
  pair_user_.resize(num_pairs);
  pair_slot_.resize(num_pairs);
  pair_probs_.assign(static_cast<std::size_t>(num_pairs) * stride_, 0.0);
  default_tag_by_slot_ = instance.defaults.default_tag_probs;
  for (SlotId s = 0; s < num_slots_; ++s) {
    const auto& users = instance.slot_users[s];
    for (std::size_t i = 0; i < users.size(); ++i) {
      const PairIndex p = slot_offsets_[s] + static_cast<PairIndex>(i);
      pair_user_[p] = users[i];
      pair_slot_[p] = s;
      pair_probs_[static_cast<std::size_t>(p) * stride_ + num_tags_] =
          default_tag_by_slot_[s];
    }
  }
  for (const ProbEntry& e : instance.probs) {
    // Validation guarantees positive entries are visible; zero entries may
    // name invisible pairs and are simply the default.
    const PairIndex p = FindPair(e.user, e.slot);
    if (p >= 0) {
      pair_probs_[static_cast<std::size_t>(p) * stride_ + e.tag] = e.prob;
    }
  }

  user_offsets_.assign(num_users_ + 1, 0);
  for (PairIndex p = 0; p < num_pairs; ++p) ++user_offsets_[pair_user_[p] + 1];
  for (UserId u = 0; u < num_users_; ++u) {
    user_offsets_[u + 1] += user_offsets_[u];
  }
  user_pairs_.resize(num_pairs);
  std::vector<PairIndex> cursor(user_offsets_.begin(), user_offsets_.end() - 1);
  // Pairs are visited in slot order, so each user's list ends up slot-sorted.
  for (PairIndex p = 0; p < num_pairs; ++p) {
    user_pairs_[cursor[pair_user_[p]]++] = p;
  }

  default_slot_probs_ = instance.defaults.default_slot_probs;
  default_slot_probs_.push_back(instance.defaults.default_pair_prob);
}

PairIndex InstanceIndex::FindPair(UserId u, SlotId s) const {
  if (!IsSlot(s)) return -1;
  const auto begin = pair_user_.begin() + slot_offsets_[s];
  const auto end = pair_user_.begin() + slot_offsets_[s + 1];
  const auto it = std::lower_bound(begin, end, u);
  if (it == end || *it != u) return -1;
  return static_cast<PairIndex>(it - pair_user_.begin());
}

double InstanceIndex::Prob(UserId u, SlotId s, TagId c) const {
  const PairIndex p = FindPair(u, s);
  return p < 0 ? 0.0 : PairProb(p, c);
}

}  // namespace billboard
