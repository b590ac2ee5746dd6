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

#ifndef BILLBOARD_INSTANCE_INDEX_H_
#define BILLBOARD_INSTANCE_INDEX_H_

#include <cstdint>
#include <span>
#include <vector>

#include "billboard/domain.h"

namespace billboard {

// Index of a visible (user, slot) pair inside an InstanceIndex.
using PairIndex = std::int32_t;

// Immutable, array-indexed view of a validated InfluenceInstance.
//
// Every visible (user, slot) pair gets a PairIndex. Pairs are grouped by slot
// (users ascending) and carry one probability per tag plus a trailing column
// for the default tag h'. Column `default_tag_column()` therefore addresses
// Pr(u, s | h') and `DefaultSlotProb(default_tag_column())` is Pr(u, s' | h').
class InstanceIndex {
 public:
  // Throws ValidationError carrying every violation if `instance` is invalid.
  explicit InstanceIndex(const InfluenceInstance& instance);

  int num_slots() const { return num_slots_; }
  int num_tags() const { return num_tags_; }
  int num_users() const { return num_users_; }
  int num_pairs() const { return static_cast<int>(pair_user_.size()); }
  int default_tag_column() const { return num_tags_; }

  // Pairs of slot `s` occupy [SlotPairBegin(s), SlotPairEnd(s)).
  PairIndex SlotPairBegin(SlotId s) const { return slot_offsets_[s]; }
  PairIndex SlotPairEnd(SlotId s) const { return slot_offsets_[s + 1]; }
  std::span<const UserId> SlotUsers(SlotId s) const {
    return {pair_user_.data() + slot_offsets_[s],
            pair_user_.data() + slot_offsets_[s + 1]};
  }
  // Pairs of user `u`, ordered by slot.
  std::span<const PairIndex> UserPairs(UserId u) const {
    return {user_pairs_.data() + user_offsets_[u],
            user_pairs_.data() + user_offsets_[u + 1]};
  }

  UserId PairUser(PairIndex p) const { return pair_user_[p]; }
  SlotId PairSlot(PairIndex p) const { return pair_slot_[p]; }
  // Pr(u, s | column) for pair p; `column` is a TagId or default_tag_column().
  double PairProb(PairIndex p, int column) const {
    return pair_probs_[static_cast<std::size_t>(p) * stride_ + column];
  }
  // Pr(u, s' | column); identical for every user.
  double DefaultSlotProb(int column) const {
    return default_slot_probs_[column];
  }
  double DefaultTagProb(SlotId s) const { return default_tag_by_slot_[s]; }

  // Returns the pair index, or -1 when u cannot see s.
  PairIndex FindPair(UserId u, SlotId s) const;
  bool IsVisible(UserId u, SlotId s) const { return FindPair(u, s) >= 0; }
  // Pr(u, s | c); 0 for invisible pairs.
  double Prob(UserId u, SlotId s, TagId c) const;

  bool IsSlot(SlotId s) const { return s >= 0 && s < num_slots_; }
  bool IsTag(TagId c) const { return c >= 0 && c < num_tags_; }
  bool IsUser(UserId u) const { return u >= 0 && u < num_users_; }

 private:
  int num_slots_ = 0;
  int num_tags_ = 0;
  int num_users_ = 0;
  std::size_t stride_ = 1;
  std::vector<PairIndex> slot_offsets_;
  std::vector<UserId> pair_user_;
  std::vector<SlotId> pair_slot_;
  std::vector<double> pair_probs_;
  std::vector<PairIndex> user_offsets_;
  std::vector<PairIndex> user_pairs_;
  std::vector<double> default_slot_probs_;
  std::vector<double> default_tag_by_slot_;
};

}  // namespace billboard

#endif  // BILLBOARD_INSTANCE_INDEX_H_
