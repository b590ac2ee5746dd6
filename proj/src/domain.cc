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

#include "billboard/domain.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

namespace billboard {
namespace {

bool IsProbability(double p) {
  return std::isfinite(p) && p >= 0.0 && p <= 1.0;
}

template <typename... Args>
std::string Concat(const Args&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

}  // namespace

bool GeoPoint::IsValid() const {
  return std::isfinite(lat) && std::isfinite(lon) && lat >= -90.0 &&
         lat <= 90.0 && lon >= -180.0 && lon <= 180.0;
}

void InfluenceInstance::RebuildInverseVisibility() {
  user_slots.assign(users.size(), {});
  for (SlotId s = 0; s < static_cast<SlotId>(slot_users.size()); ++s) {
    for (UserId u : slot_users[s]) {
      if (u >= 0 && u < static_cast<UserId>(users.size())) {
        user_slots[u].push_back(s);
      }
    }
  }
}

void InfluenceInstance::CanonicalizeProbs() {
  std::erase_if(probs, [](const ProbEntry& e) { return e.prob == 0.0; });
  std::sort(probs.begin(), probs.end(),
            [](const ProbEntry& a, const ProbEntry& b) {
              return std::tie(a.slot, a.user, a.tag) <
                     std::tie(b.slot, b.user, b.tag);
            });
}

std::vector<std::string> ValidateInstance(const InfluenceInstance& instance) {
  std::vector<std::string> violations;
  auto report = [&violations](auto&&... args) {
    violations.push_back(Concat(args...));
  };

  const auto& meta = instance.meta;
  const auto num_slots = static_cast<SlotId>(instance.slots.size());
  const auto num_tags = static_cast<TagId>(instance.tags.size());
  const auto num_users = static_cast<UserId>(instance.users.size());
  const auto num_billboards =
      static_cast<BillboardId>(instance.billboard_names.size());

  if (meta.t1 < 0 || meta.t1 > meta.t2) {
    report("meta: horizon [", meta.t1, ",", meta.t2, "] is not well-formed");
  }
  if (meta.delta < 1) report("meta: delta ", meta.delta, " < 1");
  if (!(std::isfinite(meta.lambda_m) && meta.lambda_m > 0.0)) {
    report("meta: lambda_m ", meta.lambda_m, " is not positive");
  }

  for (SlotId s = 0; s < num_slots; ++s) {
    const Slot& slot = instance.slots[s];
    if (slot.id != s) report("slot ", s, ": id ", slot.id, " is not dense");
    if (slot.billboard < 0 || slot.billboard >= num_billboards) {
      report("slot ", s, ": unknown billboard ", slot.billboard);
    }
    if (!slot.window.IsValid() || slot.window.Length() != meta.delta) {
      report("slot ", s, ": window [", slot.window.start, ",", slot.window.end,
             "] does not cover delta=", meta.delta, " time units");
    }
    if (slot.window.start < meta.t1 || slot.window.end > meta.t2) {
      report("slot ", s, ": window outside horizon");
    }
  }

  for (TagId c = 0; c < num_tags; ++c) {
    const TagRecord& tag = instance.tags[c];
    if (tag.id != c) report("tag ", c, ": id ", tag.id, " is not dense");
    if (!(std::isfinite(tag.cost) && tag.cost >= 0.0)) {
      report("tag ", c, ": negative cost");
    }
    if (!(std::isfinite(tag.weight) && tag.weight >= 0.0)) {
      report("tag ", c, ": negative weight");
    }
  }

  // Visibility and its inverse.
  if (static_cast<SlotId>(instance.slot_users.size()) != num_slots) {
    report("visibility: has ", instance.slot_users.size(), " rows for ",
           num_slots, " slots");
  }
  if (static_cast<UserId>(instance.user_slots.size()) != num_users) {
    report("inverse visibility: has ", instance.user_slots.size(), " rows for ",
           num_users, " users");
  }
  std::vector<std::pair<UserId, SlotId>> forward;
  for (SlotId s = 0; s < static_cast<SlotId>(instance.slot_users.size()); ++s) {
    const auto& users = instance.slot_users[s];
    if (!std::is_sorted(users.begin(), users.end()) ||
        std::adjacent_find(users.begin(), users.end()) != users.end()) {
      report("visibility: slot ", s, " user list is not sorted and unique");
    }
    for (UserId u : users) {
      if (u < 0 || u >= num_users) {
        report("visibility: slot ", s, " references unknown user ", u);
      } else {
        forward.emplace_back(u, s);
      }
    }
  }
  std::vector<std::pair<UserId, SlotId>> inverse;
  for (UserId u = 0; u < static_cast<UserId>(instance.user_slots.size()); ++u) {
    for (SlotId s : instance.user_slots[u]) {
      if (s < 0 || s >= num_slots) {
        report("inverse visibility: user ", u, " references unknown slot ", s);
      } else {
        inverse.emplace_back(u, s);
      }
    }
  }
  std::sort(forward.begin(), forward.end());
  forward.erase(std::unique(forward.begin(), forward.end()), forward.end());
  std::sort(inverse.begin(), inverse.end());
  if (forward != inverse) {
    report("visibility: forward and inverse indexes disagree");
  }

  // Probabilities.
  auto is_visible = [&instance](UserId u, SlotId s) {
    if (s >= static_cast<SlotId>(instance.slot_users.size())) return false;
    const auto& users = instance.slot_users[s];
    return std::binary_search(users.begin(), users.end(), u);
  };
  std::vector<std::tuple<SlotId, UserId, TagId>> keys;
  keys.reserve(instance.probs.size());
  std::pair<UserId, SlotId> last_invisible{-1, -1};
  for (const ProbEntry& e : instance.probs) {
    const bool known = e.user >= 0 && e.user < num_users && e.slot >= 0 &&
                       e.slot < num_slots && e.tag >= 0 && e.tag < num_tags;
    if (!known) {
      report("prob (", e.user, ",", e.slot, ",", e.tag,
             "): references unknown id");
      continue;
    }
    if (!IsProbability(e.prob)) {
      report("prob (", e.user, ",", e.slot, ",", e.tag, ") = ", e.prob,
             " is outside [0,1]");
    }
    keys.emplace_back(e.slot, e.user, e.tag);
    // One report per (user, slot) pair, whatever the number of tags.
    if (e.prob > 0.0 && !is_visible(e.user, e.slot) &&
        last_invisible != std::pair{e.user, e.slot}) {
      last_invisible = {e.user, e.slot};
      report("prob (", e.user, ",", e.slot, ",*) > 0 but user ", e.user,
             " cannot see slot ", e.slot);
    }
  }
  std::sort(keys.begin(), keys.end());
  for (std::size_t i = 1; i < keys.size(); ++i) {
    if (keys[i] == keys[i - 1]) {
      const auto& [s, u, c] = keys[i];
      report("prob (", u, ",", s, ",", c, "): duplicate entry");
    }
  }

  // Virtual defaults.
  const auto& d = instance.defaults;
  if (static_cast<SlotId>(d.default_tag_probs.size()) != num_slots) {
    report("defaults: default-tag table has ", d.default_tag_probs.size(),
           " entries for ", num_slots, " slots");
  }
  if (static_cast<TagId>(d.default_slot_probs.size()) != num_tags) {
    report("defaults: default-slot table has ", d.default_slot_probs.size(),
           " entries for ", num_tags, " tags");
  }
  for (std::size_t i = 0; i < d.default_tag_probs.size(); ++i) {
    if (!IsProbability(d.default_tag_probs[i])) {
      report("defaults: Pr(u,", i, "|h') = ", d.default_tag_probs[i],
             " is outside [0,1]");
    }
  }
  for (std::size_t i = 0; i < d.default_slot_probs.size(); ++i) {
    if (!IsProbability(d.default_slot_probs[i])) {
      report("defaults: Pr(u,s'|", i, ") = ", d.default_slot_probs[i],
             " is outside [0,1]");
    }
  }
  if (!IsProbability(d.default_pair_prob)) {
    report("defaults: Pr(u,s'|h') = ", d.default_pair_prob,
           " is outside [0,1]");
  }
  return violations;
}

std::vector<std::string> ValidateSelection(const InfluenceInstance& instance,
                                           const Selection& selection) {
  std::vector<std::string> violations;
  std::set<SlotId> slots;
  for (SlotId s : selection.slots) {
    if (s < 0 || s >= static_cast<SlotId>(instance.num_slots())) {
      violations.push_back(Concat("unknown slot ", s));
    } else if (!slots.insert(s).second) {
      violations.push_back(Concat("duplicate slot ", s));
    }
  }
  std::set<TagId> tags;
  for (TagId c : selection.tags) {
    if (c < 0 || c >= static_cast<TagId>(instance.num_tags())) {
      violations.push_back(Concat("unknown tag ", c));
    } else if (!tags.insert(c).second) {
      violations.push_back(Concat("duplicate tag ", c));
    }
  }
  return violations;
}

}  // namespace billboard
