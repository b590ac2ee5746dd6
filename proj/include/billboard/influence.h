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

// Influence of a slot/tag selection under independent exposure.
//
// Every selected tag is shown in every selected slot, so a user u is
// influenced with probability
//
//   1 - prod_{s in S, u sees s} prod_{c in H} (1 - Pr(u, s | c))
//
// and the aggregated influence Phi(S, H) sums that over all users. The
// virtual default slot s' (seen by everyone) and default tag h' can be
// switched into the product with `VirtualMembers`.

#ifndef BILLBOARD_INFLUENCE_H_
#define BILLBOARD_INFLUENCE_H_

#include <span>
#include <vector>

#include "billboard/domain.h"
#include "billboard/instance_index.h"

namespace billboard {

struct VirtualMembers {
  bool default_slot = false;
  bool default_tag = false;
};

// Probability that user `u` is influenced by (slots, tags). Throws
// ValidationError on unknown or duplicate ids.
double UserProbability(const InstanceIndex& index, UserId u,
                       std::span<const SlotId> slots,
                       std::span<const TagId> tags,
                       VirtualMembers virtuals = {});

// Phi(slots, tags): expected number of influenced users.
double AggregatedInfluence(const InstanceIndex& index,
                           std::span<const SlotId> slots,
                           std::span<const TagId> tags,
                           VirtualMembers virtuals = {});

inline double AggregatedInfluence(const InstanceIndex& index,
                                  const Selection& selection,
                                  VirtualMembers virtuals = {}) {
  return AggregatedInfluence(index, selection.slots, selection.tags, virtuals);
}

// Tag-free influence of a slot set using the panel-size base probability.
// Equals AggregatedInfluence(slots, {h'}).
double BaseSlotInfluence(const InstanceIndex& index,
                         std::span<const SlotId> slots);

// Incremental evaluator for greedy loops.
//
// Keeps, per user, the survival product of all committed (slot, tag)
// exposures, so the marginal gain of a slot touches only the users that see
// it and the gain of a tag touches only users with a committed visible slot.
// Gain queries are const and safe to run concurrently between commits.
class SurvivalState {
 public:
  // Throws ValidationError when `initial` has unknown or duplicate ids.
  explicit SurvivalState(const InstanceIndex& index,
                         const Selection& initial = {},
                         VirtualMembers virtuals = {});

  const InstanceIndex& index() const { return *index_; }
  const Selection& selection() const { return selection_; }
  VirtualMembers virtuals() const { return virtuals_; }
  // Phi of the current selection (including active virtual members).
  double value() const { return value_; }
  std::span<const double> survival() const { return survival_; }

  bool HasSlot(SlotId s) const { return slot_selected_[s] != 0; }
  bool HasTag(TagId c) const { return tag_selected_[c] != 0; }

  // Phi(S + {s}, H) - Phi(S, H). Throws ValidationError if s is unknown or
  // already selected.
  double SlotGain(SlotId s) const;
  // Phi(S, H + {c}) - Phi(S, H).
  double TagGain(TagId c) const;

  // Adds the element and returns the realized gain.
  double CommitSlot(SlotId s);
  double CommitTag(TagId c);

 private:
  void CheckNewSlot(SlotId s) const;
  void CheckNewTag(TagId c) const;

  const InstanceIndex* index_;
  Selection selection_;
  VirtualMembers virtuals_;
  std::vector<char> slot_selected_;
  std::vector<char> tag_selected_;
  std::vector<double> survival_;
  // Per pair: prod over active tag columns of (1 - Pr(u, s | column)).
  std::vector<double> pair_stay_;
  // Per user: committed pairs the user can see.
  std::vector<std::vector<PairIndex>> user_selected_pairs_;
  // Users with at least one committed visible pair, in first-touch order.
  std::vector<UserId> touched_users_;
  // Survival shared by every user outside touched_users_.
  double untouched_survival_ = 1.0;
  double value_ = 0.0;
};

}  // namespace billboard

#endif  // BILLBOARD_INFLUENCE_H_
