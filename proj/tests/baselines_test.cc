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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "billboard/errors.h"
#include "billboard/influence.h"
#include "billboard/ingest.h"
#include "testing/oracles.h"

namespace billboard {
namespace {

using testing::OracleInfluence;
using testing::RandomInstance;

std::vector<std::int32_t> Iota(int n) {
  std::vector<std::int32_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

InfluenceInstance DominantSlotInstance() {
  InfluenceInstance inst = RandomInstance(
      {.n_slots = 8, .n_tags = 3, .n_users = 12, .max_prob = 0.5, .seed = 3});
  std::erase_if(inst.probs, [](const ProbEntry& e) { return e.slot == 5; });
  inst.slot_users[5] = Iota(12);
  for (UserId u = 0; u < 12; ++u) {
    for (TagId c = 0; c < 3; ++c) inst.probs.push_back({u, 5, c, 0.9});
  }
  inst.defaults.default_tag_probs[5] = 0.95;
  inst.RebuildInverseVisibility();
  inst.CanonicalizeProbs();
  return inst;
}

TEST(BaselineNameTest, RoundTrip) {
  for (BaselineKind kind : kAllBaselines) {
    EXPECT_EQ(ParseBaseline(BaselineName(kind)), kind);
  }
  EXPECT_FALSE(ParseBaseline("TOP").has_value());
  EXPECT_FALSE(IsRandomized(BaselineKind::kTSTT));
  EXPECT_TRUE(IsRandomized(BaselineKind::kRSHFT));
}

TEST(SlotCoverageTest, Examples) {
  InfluenceInstance inst = RandomInstance({.n_slots = 4, .seed = 1});
  inst.slot_users[0] = {};
  inst.slot_users[1] = {1, 2, 3};
  std::erase_if(inst.probs, [](const ProbEntry& e) { return e.slot < 2; });
  inst.RebuildInverseVisibility();
  const InstanceIndex index(inst);
  EXPECT_EQ(SlotCoverage(index, 0), 0);
  EXPECT_EQ(SlotCoverage(index, 1), 3);
  EXPECT_THROW(SlotCoverage(index, 4), ValidationError);
}

TEST(SlotCoverageTest, DoubleCountingIdentity) {
  const InfluenceInstance inst =
      RandomInstance({.n_slots = 20, .n_tags = 2, .n_users = 30, .seed = 8});
  const InstanceIndex index(inst);
  std::int64_t by_slot = 0;
  for (SlotId s = 0; s < 20; ++s) by_slot += SlotCoverage(index, s);
  std::int64_t by_user = 0;
  for (const auto& row : inst.user_slots) by_user += row.size();
  EXPECT_EQ(by_slot, by_user);
}

TEST(TagFrequencyTest, Examples) {
  InfluenceInstance inst =
      RandomInstance({.n_slots = 6, .n_tags = 3, .n_users = 10, .seed = 2});
  // Tag 0: zero everywhere. Tag 1: positive only for users 4 and 7.
  std::erase_if(inst.probs,
                [](const ProbEntry& e) { return e.tag < 2 || e.slot == 0; });
  inst.slot_users[0] = {4, 7};
  inst.RebuildInverseVisibility();
  inst.probs.push_back({4, 0, 1, 0.2});
  inst.probs.push_back({7, 0, 1, 0.3});
  inst.CanonicalizeProbs();
  const InstanceIndex index(inst);
  EXPECT_EQ(TagFrequency(index, 0), 0);
  EXPECT_EQ(TagFrequency(index, 1), 2);
  EXPECT_THROW(TagFrequency(index, 3), ValidationError);
}

TEST(TagFrequencyTest, UniformInstanceHasEqualFrequencies) {
  SyntheticSpec spec;
  spec.n_tags = 4;
  const InfluenceInstance inst = GenerateSynthetic(spec, {});
  const InstanceIndex index(inst);
  // Panel-size probabilities are positive for every tag on every visible
  // pair, so all tags reach the same users.
  for (TagId c = 1; c < 4; ++c) {
    EXPECT_EQ(TagFrequency(index, c), TagFrequency(index, 0));
  }
}

TEST(RankingTest, DominantSlotFirstAndStable) {
  const InfluenceInstance inst = DominantSlotInstance();
  const InstanceIndex index(inst);
  const SingletonRankings a = RankBySingletonInfluence(index);
  const SingletonRankings b = RankBySingletonInfluence(index);
  EXPECT_EQ(a.slots.front(), 5);
  EXPECT_EQ(a.slots, b.slots);
  EXPECT_EQ(a.tags, b.tags);
  EXPECT_EQ(a.slots.size(), 8u);
  EXPECT_EQ(a.tags.size(), 3u);
}

TEST(RankingTest, OrderMatchesSingletonOracle) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const InfluenceInstance inst = RandomInstance(
        {.n_slots = 10, .n_tags = 5, .n_users = 15, .seed = seed});
    const InstanceIndex index(inst);
    const SingletonRankings r = RankBySingletonInfluence(index);
    // Phi({s}, {h'}) and Phi({s'}, {c}).
    for (std::size_t i = 1; i < r.slots.size(); ++i) {
      const double prev =
          OracleInfluence(inst, {r.slots[i - 1]}, {}, false, true);
      const double cur = OracleInfluence(inst, {r.slots[i]}, {}, false, true);
      EXPECT_GE(prev + 1e-12, cur);
      if (std::abs(prev - cur) < 1e-15) EXPECT_LT(r.slots[i - 1], r.slots[i]);
    }
    for (std::size_t i = 1; i < r.tags.size(); ++i) {
      EXPECT_GE(OracleInfluence(inst, {}, {r.tags[i - 1]}, true, false) + 1e-12,
                OracleInfluence(inst, {}, {r.tags[i]}, true, false));
    }
    // Top slot equals the exhaustive single-slot choice with tags = {h'}.
    double best = -1.0;
    SlotId best_slot = -1;
    for (SlotId s = 0; s < 10; ++s) {
      const double v = OracleInfluence(inst, {s}, {}, false, true);
      if (v > best + 1e-12) {
        best = v;
        best_slot = s;
      }
    }
    EXPECT_EQ(r.slots.front(), best_slot);
  }
}

TEST(RunBaselineTest, BudgetsDeterminismAndValue) {
  const InfluenceInstance inst =
      RandomInstance({.n_slots = 16, .n_tags = 6, .n_users = 20, .seed = 4});
  const InstanceIndex index(inst);
  for (BaselineKind kind : kAllBaselines) {
    const SolveResult a = RunBaseline(index, kind, 5, 3, 42);
    const SolveResult b = RunBaseline(index, kind, 5, 3, 42);
    EXPECT_EQ(a.selection, b.selection) << BaselineName(kind);
    ASSERT_EQ(a.selection.slots.size(), 5u);
    ASSERT_EQ(a.selection.tags.size(), 3u);
    EXPECT_TRUE(ValidateSelection(inst, a.selection).empty());
    EXPECT_NEAR(a.value,
                OracleInfluence(inst, a.selection.slots, a.selection.tags),
                1e-12);
    EXPECT_THROW(RunBaseline(index, kind, 17, 1, 0), InfeasibleError);
    EXPECT_THROW(RunBaseline(index, kind, 1, 0, 0), InfeasibleError);
  }
}

TEST(RunBaselineTest, FullBudgetGivesFullSets) {
  const InfluenceInstance inst = RandomInstance({.seed = 6});
  const InstanceIndex index(inst);
  const double everything = OracleInfluence(inst, Iota(6), Iota(3));
  for (BaselineKind kind : kAllBaselines) {
    const SolveResult r = RunBaseline(index, kind, 6, 3, 1);
    EXPECT_EQ(
        std::set<SlotId>(r.selection.slots.begin(), r.selection.slots.end())
            .size(),
        6u);
    EXPECT_NEAR(r.value, everything, 1e-12);
  }
}

TEST(RunBaselineTest, RecipesFollowRankings) {
  const InfluenceInstance inst = DominantSlotInstance();
  const InstanceIndex index(inst);
  const SingletonRankings r = RankBySingletonInfluence(index);
  const SolveResult tstt = RunBaseline(index, BaselineKind::kTSTT, 1, 2, 0);
  EXPECT_EQ(tstt.selection.slots, (std::vector<SlotId>{5}));
  EXPECT_EQ(tstt.selection.tags, (std::vector<TagId>{r.tags[0], r.tags[1]}));
  EXPECT_EQ(tstt.eval_count, 8 + 3);

  const SolveResult tsrt = RunBaseline(index, BaselineKind::kTSRT, 3, 1, 9);
  EXPECT_EQ(tsrt.selection.slots,
            (std::vector<SlotId>{r.slots[0], r.slots[1], r.slots[2]}));
  const SolveResult rstt = RunBaseline(index, BaselineKind::kRSTT, 3, 1, 9);
  EXPECT_EQ(rstt.selection.tags, (std::vector<TagId>{r.tags[0]}));
  // Same seed: the random slot draw of RSTT equals that of RSRT.
  EXPECT_EQ(rstt.selection.slots,
            RunBaseline(index, BaselineKind::kRSRT, 3, 1, 9).selection.slots);

  const SolveResult maxsrt = RunBaseline(index, BaselineKind::kMAXSRT, 1, 1, 0);
  EXPECT_EQ(maxsrt.selection.slots, (std::vector<SlotId>{5}));  // sees all
  EXPECT_EQ(RunBaseline(index, BaselineKind::kRSRT, 1, 1, 0).eval_count, 0);
}

TEST(RunBaselineTest, RandomDrawsArePrefixConsistent) {
  const InfluenceInstance inst =
      RandomInstance({.n_slots = 20, .n_tags = 8, .n_users = 10, .seed = 4});
  const InstanceIndex index(inst);
  const SolveResult small = RunBaseline(index, BaselineKind::kRSRT, 4, 2, 5);
  const SolveResult large = RunBaseline(index, BaselineKind::kRSRT, 9, 6, 5);
  EXPECT_TRUE(std::equal(small.selection.slots.begin(),
                         small.selection.slots.end(),
                         large.selection.slots.begin()));
  EXPECT_TRUE(std::equal(small.selection.tags.begin(),
                         small.selection.tags.end(),
                         large.selection.tags.begin()));
}

// Empirical, not a theorem.
TEST(RunBaselineTest, GreedyBeatsTopSlotsTopTags) {
  int violations = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const InfluenceInstance inst = RandomInstance(
        {.n_slots = 12, .n_tags = 5, .n_users = 20, .seed = seed});
    const InstanceIndex index(inst);
    const double greedy = OrthantGreedy(index, 3, 2, GreedyMode::kLazy).value;
    const double tstt = RunBaseline(index, BaselineKind::kTSTT, 3, 2, 0).value;
    violations += greedy < tstt - 1e-9;
  }
  EXPECT_EQ(violations, 0);
}

TEST(RunBaselineTest, RandomizedMeansGrowWithBudget) {
  SyntheticSpec spec;
  spec.n_users = 150;
  spec.n_billboards = 15;
  spec.n_tags = 8;
  spec.n_tuples = 800;
  const InfluenceInstance inst = GenerateSynthetic(spec, {});
  const InstanceIndex index(inst);
  const auto mean = [&index](BaselineKind kind, int k, int l) {
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      sum += RunBaseline(index, kind, k, l, seed).value;
    }
    return sum / 50.0;
  };
  for (BaselineKind kind : kAllBaselines) {
    if (!IsRandomized(kind)) continue;
    double prev = -1.0;
    for (int k : {5, 10, 20, 40}) {
      const double m = mean(kind, k, 3);
      EXPECT_GE(m + 1e-9, prev) << BaselineName(kind) << " k=" << k;
      prev = m;
    }
    prev = -1.0;
    for (int l : {1, 2, 4, 8}) {
      const double m = mean(kind, 20, l);
      EXPECT_GE(m + 1e-9, prev) << BaselineName(kind) << " l=" << l;
      prev = m;
    }
  }
}

}  // namespace
}  // namespace billboard
