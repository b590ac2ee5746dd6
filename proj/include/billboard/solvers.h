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

// Solvers for choosing k slots and l tags.
//
// The orthant-wise greedy runs two branches and keeps the better one:
//
//   slots-first: tags fixed to {h'}, pick k slots; then pick l tags against
//                those slots plus s'.
//   tags-first:  slots fixed to {s'}, pick l tags; then pick k slots against
//                those tags plus h'.
//
// s' and h' are the virtual defaults of the instance. They take part in every
// greedy loop but are excluded from the returned selection and from the value
// used to compare the branches.
//
// eval_count counts influence-function evaluations: one per candidate gain
// plus one (cached) evaluation of the current value per greedy round.

#ifndef BILLBOARD_SOLVERS_H_
#define BILLBOARD_SOLVERS_H_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "billboard/domain.h"
#include "billboard/influence.h"
#include "billboard/instance_index.h"

namespace billboard {

enum class GreedyMode { kIncremental, kLazy };

enum class Branch { kNone, kSlotsFirst, kTagsFirst };
std::string BranchName(Branch branch);

enum class Orthant { kSlot, kTag };

// One greedy pick. `loop` numbers the four greedy loops in execution order:
// 0 slots-first/slots, 1 slots-first/tags, 2 tags-first/tags,
// 3 tags-first/slots.
struct Pick {
  int loop = 0;
  Orthant orthant = Orthant::kSlot;
  std::int32_t element = 0;
  double gain = 0.0;

  friend bool operator==(const Pick&, const Pick&) = default;
};

struct SolveResult {
  Selection selection;
  double value = 0.0;  // Phi(selection), no virtual members
  std::int64_t eval_count = 0;
  std::int64_t wall_time_ms = 0;
  double wall_time_seconds = 0.0;
  std::vector<Pick> pick_trace;
  Branch branch = Branch::kNone;
};

// Accumulates instrumentation across greedy loops.
struct GreedyLog {
  int loop = 0;
  std::int64_t evals = 0;
  std::vector<Pick> trace;
};

// Commits `k` slots from `pool` to `state`, each maximizing SlotGain over
// the remaining pool (lowest id on ties). Lazy mode keeps stale upper bounds
// in a max-heap and returns the same picks as incremental mode.
// Throws InfeasibleError when |pool| < k.
void GreedySelectSlots(SurvivalState& state, int k,
                       std::span<const SlotId> pool, GreedyMode mode,
                       GreedyLog* log = nullptr);
void GreedySelectTags(SurvivalState& state, int l, std::span<const TagId> pool,
                      GreedyMode mode, GreedyLog* log = nullptr);

// Per-round sample size max(1, ceil((ground / budget) * ln(1 / epsilon))).
std::int64_t StochasticSampleSize(std::int64_t ground, std::int64_t budget,
                                  double epsilon);

// Like the greedy loops above, but each round maximizes over a fresh uniform
// sample (without replacement) of min(remaining, sample_size) candidates.
void StochasticSelectSlots(SurvivalState& state, int k,
                           std::span<const SlotId> pool,
                           std::int64_t sample_size, std::mt19937_64& rng,
                           GreedyLog* log = nullptr);
void StochasticSelectTags(SurvivalState& state, int l,
                          std::span<const TagId> pool, std::int64_t sample_size,
                          std::mt19937_64& rng, GreedyLog* log = nullptr);

struct StochasticParams {
  double epsilon = 0.01;
  std::uint64_t seed = 0;
  // Ground-set sizes used in the sample-size formula; 0 means |slots| / |tags|.
  std::int64_t a = 0;
  std::int64_t b = 0;
};

inline constexpr std::uint64_t kDefaultExhaustiveCap = 10'000'000;

// Exact maximizer over all (k-subset, l-subset) pairs. Ties go to the
// lexicographically smallest (slots, tags) id sequence. Throws
// CapExceededError when C(|slots|, k) * C(|tags|, l) > cap and
// InfeasibleError for impossible budgets.
SolveResult ExhaustiveSearch(const InstanceIndex& index, int k, int l,
                             std::uint64_t cap = kDefaultExhaustiveCap);

// Number of candidate pairs ExhaustiveSearch would enumerate (saturating).
double ExhaustiveCandidateCount(const InstanceIndex& index, int k, int l);

SolveResult OrthantGreedy(const InstanceIndex& index, int k, int l,
                          GreedyMode mode);

SolveResult StochasticGreedy(const InstanceIndex& index, int k, int l,
                             const StochasticParams& params);

// Throws InfeasibleError unless 1 <= k <= |slots| and 1 <= l <= |tags|.
void CheckBudgets(const InstanceIndex& index, int k, int l);

}  // namespace billboard

#endif  // BILLBOARD_SOLVERS_H_
