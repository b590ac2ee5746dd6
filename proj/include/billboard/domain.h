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

// Core problem-instance types shared by every other module.
//
// All identifiers are dense non-negative integers assigned at load time.
// Original string identifiers are kept in side tables (`users`,
// `Billboard::name`, `TagRecord::name`) for reporting only.

#ifndef BILLBOARD_DOMAIN_H_
#define BILLBOARD_DOMAIN_H_

#include <cstdint>
#include <string>
#include <vector>

namespace billboard {

using UserId = std::int32_t;
using SlotId = std::int32_t;
using TagId = std::int32_t;
using BillboardId = std::int32_t;

struct GeoPoint {
  double lat = 0.0;  // degrees, [-90, 90]
  double lon = 0.0;  // degrees, [-180, 180]

  bool IsValid() const;
  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

// Closed interval [start, end] of integer time units.
struct TimeInterval {
  std::int64_t start = 0;
  std::int64_t end = 0;

  bool IsValid() const { return start <= end; }
  // Number of integer time units covered.
  std::int64_t Length() const { return end - start + 1; }
  // True when the two closed intervals share at least one time unit.
  bool Overlaps(const TimeInterval& other) const {
    return start <= other.end && other.start <= end;
  }
  friend bool operator==(const TimeInterval&, const TimeInterval&) = default;
};

// A set of people observed at one location during one interval.
struct TrajectoryTuple {
  std::vector<UserId> users;
  GeoPoint loc;
  TimeInterval interval;
};

struct Billboard {
  BillboardId id = 0;
  std::string name;
  GeoPoint loc;
  double panel_size = 1.0;  // area units, > 0
  double cost = 0.0;
};

// A billboard rented for one time window. The window covers exactly
// `delta` time units: [start, start + delta - 1].
struct Slot {
  SlotId id = 0;
  BillboardId billboard = 0;
  TimeInterval window;
};

struct TagRecord {
  TagId id = 0;
  std::string name;
  double cost = 0.0;
  double weight = 1.0;  // multiplier in the panel-size probability model
};

struct InstanceMeta {
  std::int64_t t1 = 0;
  std::int64_t t2 = 0;
  std::int64_t delta = 1;
  double lambda_m = 100.0;
};

// Sparse tag-specific influence probability Pr(u, s | c).
struct ProbEntry {
  UserId user = 0;
  SlotId slot = 0;
  TagId tag = 0;
  double prob = 0.0;

  friend bool operator==(const ProbEntry&, const ProbEntry&) = default;
};

// Probability tables for the two virtual elements used by the orthant-wise
// greedy: the default tag h' and the default slot s'.
struct VirtualDefaults {
  // Pr(u, s | h') per slot; the same for every user who sees s.
  std::vector<double> default_tag_probs;
  // Pr(u, s' | c) per tag; s' is seen by every user.
  std::vector<double> default_slot_probs;
  // Pr(u, s' | h').
  double default_pair_prob = 0.0;
};

// Full problem instance in its plain (possibly invalid) form. Build an
// `InstanceIndex` from it before evaluating influence.
struct InfluenceInstance {
  InstanceMeta meta;
  std::vector<Slot> slots;
  std::vector<TagRecord> tags;
  std::vector<std::string> users;            // UserId -> original name
  std::vector<std::string> billboard_names;  // BillboardId -> original name
  // SlotId -> sorted users that can see the slot, and the inverse.
  std::vector<std::vector<UserId>> slot_users;
  std::vector<std::vector<SlotId>> user_slots;
  // Sparse, zero entries omitted, sorted by (slot, user, tag).
  std::vector<ProbEntry> probs;
  VirtualDefaults defaults;

  std::size_t num_slots() const { return slots.size(); }
  std::size_t num_tags() const { return tags.size(); }
  std::size_t num_users() const { return users.size(); }

  // Recomputes `user_slots` from `slot_users`.
  void RebuildInverseVisibility();
  // Sorts `probs` into canonical order and drops exact zeros.
  void CanonicalizeProbs();
};

// A (slots, tags) choice. Insertion order records greedy pick order.
struct Selection {
  std::vector<SlotId> slots;
  std::vector<TagId> tags;

  friend bool operator==(const Selection&, const Selection&) = default;
};

// Returns every invariant violation found in `instance`; empty iff valid.
std::vector<std::string> ValidateInstance(const InfluenceInstance& instance);

// Returns the violations of `selection` against `instance` (duplicates,
// unknown ids).
std::vector<std::string> ValidateSelection(const InfluenceInstance& instance,
                                           const Selection& selection);

}  // namespace billboard

#endif  // BILLBOARD_DOMAIN_H_
