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

#include "billboard/influence.h"

#include <string>

#include "billboard/errors.h"

namespace billboard {
namespace {

// Survival values below this are flushed to zero.
constexpr double kUnderflow = 1e-300;

double Clamp01(double x) {
  if (x < kUnderflow) return 0.0;
  return x > 1.0 ? 1.0 : x;
}

std::vector<char> SlotMask(const InstanceIndex& index,
                           std::span<const SlotId> slots) {
  std::vector<char> mask(index.num_slots(), 0);
  for (SlotId s : slots) {
    if (!index.IsSlot(s)) {
      throw ValidationError("unknown slot " + std::to_string(s));
    }
    if (mask[s]) throw ValidationError("duplicate slot " + std::to_string(s));
    mask[s] = 1;
  }
  return mask;
}

void CheckTags(const InstanceIndex& index, std::span<const TagId> tags) {
  std::vector<char> mask(index.num_tags(), 0);
  for (TagId c : tags) {
    if (!index.IsTag(c)) {
      throw ValidationError("unknown tag " + std::to_string(c));
    }
    if (mask[c]) throw ValidationError("duplicate tag " + std::to_string(c));
    mask[c] = 1;
  }
}

// Tag columns in play: the selected tags plus h' when active.
std::vector<int> Columns(const InstanceIndex& index,
                         std::span<const TagId> tags, VirtualMembers virtuals) {
  std::vector<int> columns(tags.begin(), tags.end());
  if (virtuals.default_tag) columns.push_back(index.default_tag_column());
  return columns;
}

// Not-influenced probability of user u given slot mask and tag columns.
double UserStay(const InstanceIndex& index, UserId u,
                const std::vector<char>& slot_mask,
                const std::vector<int>& columns, VirtualMembers virtuals) {
  double stay = 1.0;
  for (PairIndex p : index.UserPairs(u)) {
    if (!slot_mask[index.PairSlot(p)]) continue;
    for (int column : columns) stay *= 1.0 - index.PairProb(p, column);
  }
  if (virtuals.default_slot) {
    for (int column : columns) stay *= 1.0 - index.DefaultSlotProb(column);
  }
  return stay;
}

}  // namespace

double UserProbability(const InstanceIndex& index, UserId u,
                       std::span<const SlotId> slots,
                       std::span<const TagId> tags, VirtualMembers virtuals) {
  if (!index.IsUser(u)) {
    throw ValidationError("unknown user " + std::to_string(u));
  }
  const auto mask = SlotMask(index, slots);
  CheckTags(index, tags);
  return 1.0 -
         UserStay(index, u, mask, Columns(index, tags, virtuals), virtuals);
}

double AggregatedInfluence(const InstanceIndex& index,
                           std::span<const SlotId> slots,
                           std::span<const TagId> tags,
                           VirtualMembers virtuals) {
  const auto mask = SlotMask(index, slots);
  CheckTags(index, tags);
  const auto columns = Columns(index, tags, virtuals);
  if (columns.empty()) return 0.0;
  double total = 0.0;
  for (UserId u = 0; u < index.num_users(); ++u) {
    total += 1.0 - UserStay(index, u, mask, columns, virtuals);
  }
  return total;
}

double BaseSlotInfluence(const InstanceIndex& index,
                         std::span<const SlotId> slots) {
  const auto mask = SlotMask(index, slots);
  double total = 0.0;
  for (UserId u = 0; u < index.num_users(); ++u) {
    double stay = 1.0;
    for (PairIndex p : index.UserPairs(u)) {
      const SlotId s = index.PairSlot(p);
      if (mask[s]) stay *= 1.0 - index.DefaultTagProb(s);
    }
    total += 1.0 - stay;
  }
  return total;
}

SurvivalState::SurvivalState(const InstanceIndex& index,
                             const Selection& initial, VirtualMembers virtuals)
    : index_(&index),
      virtuals_(virtuals),
      slot_selected_(index.num_slots(), 0),
      tag_selected_(index.num_tags(), 0),
      survival_(index.num_users(), 1.0),
      pair_stay_(index.num_pairs(), 1.0),
      user_selected_pairs_(index.num_users()) {
  SlotMask(index, initial.slots);
  CheckTags(index, initial.tags);
  if (virtuals_.default_tag) {
    const int column = index.default_tag_column();
    for (PairIndex p = 0; p < index.num_pairs(); ++p) {
      pair_stay_[p] = 1.0 - index.PairProb(p, column);
    }
    if (virtuals_.default_slot) {
      const double stay = 1.0 - index.DefaultSlotProb(column);
      for (double& x : survival_) x = Clamp01(x * stay);
      untouched_survival_ = Clamp01(stay);
      value_ = index.num_users() * (1.0 - stay);
    }
  }
  for (TagId c : initial.tags) CommitTag(c);
  for (SlotId s : initial.slots) CommitSlot(s);
}

void SurvivalState::CheckNewSlot(SlotId s) const {
  if (!index_->IsSlot(s)) {
    throw ValidationError("unknown slot " + std::to_string(s));
  }
  if (slot_selected_[s]) {
    throw ValidationError("slot " + std::to_string(s) + " already selected");
  }
}

void SurvivalState::CheckNewTag(TagId c) const {
  if (!index_->IsTag(c)) {
    throw ValidationError("unknown tag " + std::to_string(c));
  }
  if (tag_selected_[c]) {
    throw ValidationError("tag " + std::to_string(c) + " already selected");
  }
}

double SurvivalState::SlotGain(SlotId s) const {
  CheckNewSlot(s);
  double gain = 0.0;
  for (PairIndex p = index_->SlotPairBegin(s); p < index_->SlotPairEnd(s);
       ++p) {
    gain += survival_[index_->PairUser(p)] * (1.0 - pair_stay_[p]);
  }
  return gain;
}

double SurvivalState::TagGain(TagId c) const {
  CheckNewTag(c);
  double gain = 0.0;
  if (virtuals_.default_slot) {
    const double slot_stay = 1.0 - index_->DefaultSlotProb(c);
    const auto untouched = index_->num_users() - touched_users_.size();
    gain = untouched * untouched_survival_ * (1.0 - slot_stay);
    for (UserId u : touched_users_) {
      double stay = slot_stay;
      for (PairIndex p : user_selected_pairs_[u]) {
        stay *= 1.0 - index_->PairProb(p, c);
      }
      gain += survival_[u] * (1.0 - stay);
    }
  } else {
    for (UserId u : touched_users_) {
      double stay = 1.0;
      for (PairIndex p : user_selected_pairs_[u]) {
        stay *= 1.0 - index_->PairProb(p, c);
      }
      gain += survival_[u] * (1.0 - stay);
    }
  }
  return gain;
}

double SurvivalState::CommitSlot(SlotId s) {
  CheckNewSlot(s);
  double gain = 0.0;
  for (PairIndex p = index_->SlotPairBegin(s); p < index_->SlotPairEnd(s);
       ++p) {
    const UserId u = index_->PairUser(p);
    const double before = survival_[u];
    survival_[u] = Clamp01(before * pair_stay_[p]);
    gain += before - survival_[u];
    if (user_selected_pairs_[u].empty()) touched_users_.push_back(u);
    user_selected_pairs_[u].push_back(p);
  }
  slot_selected_[s] = 1;
  selection_.slots.push_back(s);
  value_ += gain;
  return gain;
}

double SurvivalState::CommitTag(TagId c) {
  CheckNewTag(c);
  double gain = 0.0;
  auto apply = [&](UserId u, double stay) {
    for (PairIndex p : user_selected_pairs_[u]) {
      stay *= 1.0 - index_->PairProb(p, c);
    }
    const double before = survival_[u];
    survival_[u] = Clamp01(before * stay);
    gain += before - survival_[u];
  };
  if (virtuals_.default_slot) {
    const double slot_stay = 1.0 - index_->DefaultSlotProb(c);
    for (UserId u = 0; u < index_->num_users(); ++u) apply(u, slot_stay);
    untouched_survival_ = Clamp01(untouched_survival_ * slot_stay);
  } else {
    for (UserId u : touched_users_) apply(u, 1.0);
  }
  for (PairIndex p = 0; p < index_->num_pairs(); ++p) {
    pair_stay_[p] *= 1.0 - index_->PairProb(p, c);
  }
  tag_selected_[c] = 1;
  selection_.tags.push_back(c);
  value_ += gain;
  return gain;
}

}  // namespace billboard
