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

#include "billboard/solvers.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <queue>
#include <tuple>
#include <utility>

#include "billboard/errors.h"

namespace billboard {
namespace {

using Clock = std::chrono::steady_clock;

// Uniform access to the two orthants of a SurvivalState.
template <Orthant kOrthant>
struct Ops {
  static double Gain(const SurvivalState& state, std::int32_t x) {
    if constexpr (kOrthant == Orthant::kSlot) {
      return state.SlotGain(x);
    } else {
      return state.TagGain(x);
    }
  }
  static void Commit(SurvivalState& state, std::int32_t x) {
    if constexpr (kOrthant == Orthant::kSlot) {
      state.CommitSlot(x);
    } else {
      state.CommitTag(x);
    }
  }
  static bool Valid(const SurvivalState& state, std::int32_t x) {
    if constexpr (kOrthant == Orthant::kSlot) {
      return state.index().IsSlot(x) && !state.HasSlot(x);
    } else {
      return state.index().IsTag(x) && !state.HasTag(x);
    }
  }
  static const char* Name() {
    return kOrthant == Orthant::kSlot ? "slot" : "tag";
  }
};

// Sorted, de-duplicated copy of the pool after checking its members.
template <Orthant kOrthant>
std::vector<std::int32_t> PreparePool(const SurvivalState& state, int budget,
                                      std::span<const std::int32_t> pool) {
  std::vector<std::int32_t> candidates(pool.begin(), pool.end());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  for (std::int32_t x : candidates) {
    if (!Ops<kOrthant>::Valid(state, x)) {
      throw ValidationError(std::string(Ops<kOrthant>::Name()) + " " +
                            std::to_string(x) +
                            " is unknown or already selected");
    }
  }
  if (budget < 0 || static_cast<std::size_t>(budget) > candidates.size()) {
    throw InfeasibleError(std::string(Ops<kOrthant>::Name()) +
                          " pool exhausted: need " + std::to_string(budget) +
                          ", have " + std::to_string(candidates.size()));
  }
  return candidates;
}

void Record(GreedyLog* log, Orthant orthant, std::int32_t x, double gain) {
  if (log != nullptr) log->trace.push_back({log->loop, orthant, x, gain});
}

void CountEvals(GreedyLog* log, std::int64_t n) {
  if (log != nullptr) log->evals += n;
}

template <Orthant kOrthant>
void IncrementalLoop(SurvivalState& state, int budget,
                     std::vector<std::int32_t> candidates, GreedyLog* log) {
  for (int round = 0; round < budget; ++round) {
    CountEvals(log, 1 + static_cast<std::int64_t>(candidates.size()));
    std::size_t best = 0;
    double best_gain = -1.0;
    // Candidates stay sorted, so strict > keeps the lowest id on ties.
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const double gain = Ops<kOrthant>::Gain(state, candidates[i]);
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    const std::int32_t pick = candidates[best];
    Ops<kOrthant>::Commit(state, pick);
    Record(log, kOrthant, pick, best_gain);
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best));
  }
}

struct HeapEntry {
  double bound;
  std::int32_t id;
  int round;  // round in which `bound` was computed
};

// Max-heap on bound, lowest id first among equal bounds.
struct HeapLess {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.id > b.id;
  }
};

template <Orthant kOrthant>
void LazyLoop(SurvivalState& state, int budget,
              const std::vector<std::int32_t>& candidates, GreedyLog* log) {
  if (budget == 0) return;
  std::vector<HeapEntry> entries;
  entries.reserve(candidates.size());
  for (std::int32_t x : candidates) {
    entries.push_back({Ops<kOrthant>::Gain(state, x), x, 0});
  }
  CountEvals(log, static_cast<std::int64_t>(candidates.size()));
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapLess> heap(
      HeapLess{}, std::move(entries));
  for (int round = 0; round < budget; ++round) {
    CountEvals(log, 1);
    while (true) {
      HeapEntry top = heap.top();
      heap.pop();
      if (top.round == round) {
        Ops<kOrthant>::Commit(state, top.id);
        Record(log, kOrthant, top.id, top.bound);
        break;
      }
      top.bound = Ops<kOrthant>::Gain(state, top.id);
      top.round = round;
      CountEvals(log, 1);
      heap.push(top);
    }
  }
}

template <Orthant kOrthant>
void StochasticLoop(SurvivalState& state, int budget,
                    std::vector<std::int32_t> remaining,
                    std::int64_t sample_size, std::mt19937_64& rng,
                    GreedyLog* log) {
  if (sample_size < 1) throw ValidationError("sample size must be >= 1");
  for (int round = 0; round < budget; ++round) {
    const std::size_t n = std::min<std::size_t>(
        remaining.size(), static_cast<std::size_t>(sample_size));
    if (n < remaining.size()) {
      // Partial Fisher-Yates: the first n entries become the sample.
      for (std::size_t i = 0; i < n; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i,
                                                        remaining.size() - 1);
        std::swap(remaining[i], remaining[pick(rng)]);
      }
    }
    CountEvals(log, 1 + static_cast<std::int64_t>(n));
    std::size_t best = 0;
    double best_gain = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double gain = Ops<kOrthant>::Gain(state, remaining[i]);
      if (gain > best_gain ||
          (gain == best_gain && remaining[i] < remaining[best])) {
        best_gain = gain;
        best = i;
      }
    }
    const std::int32_t pick = remaining[best];
    Ops<kOrthant>::Commit(state, pick);
    Record(log, kOrthant, pick, best_gain);
    // Ties are broken by id, so the order of the remainder is irrelevant.
    remaining[best] = remaining.back();
    remaining.pop_back();
  }
}

std::vector<std::int32_t> Iota(int n) {
  std::vector<std::int32_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

double Binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return std::round(result);
}

// Runs both branches with the given loop runners and keeps the better one.
template <typename SelectSlots, typename SelectTags>
SolveResult RunBranches(const InstanceIndex& index, int k, int l,
                        SelectSlots&& select_slots, SelectTags&& select_tags) {
  CheckBudgets(index, k, l);
  const auto start = Clock::now();
  const VirtualMembers virtuals{.default_slot = true, .default_tag = true};
  const auto all_slots = Iota(index.num_slots());
  const auto all_tags = Iota(index.num_tags());
  GreedyLog log;

  SurvivalState slots_first(index, {}, virtuals);
  log.loop = 0;
  select_slots(slots_first, k, all_slots, &log);
  log.loop = 1;
  select_tags(slots_first, l, all_tags, &log);

  SurvivalState tags_first(index, {}, virtuals);
  log.loop = 2;
  select_tags(tags_first, l, all_tags, &log);
  log.loop = 3;
  select_slots(tags_first, k, all_slots, &log);

  const double value_a = AggregatedInfluence(index, slots_first.selection());
  const double value_b = AggregatedInfluence(index, tags_first.selection());
  SolveResult result;
  if (value_a >= value_b) {
    result.selection = slots_first.selection();
    result.value = value_a;
    result.branch = Branch::kSlotsFirst;
  } else {
    result.selection = tags_first.selection();
    result.value = value_b;
    result.branch = Branch::kTagsFirst;
  }
  result.eval_count = log.evals;
  result.pick_trace = std::move(log.trace);
  const auto elapsed = Clock::now() - start;
  result.wall_time_seconds = std::chrono::duration<double>(elapsed).count();
  result.wall_time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  return result;
}

}  // namespace

std::string BranchName(Branch branch) {
  switch (branch) {
    case Branch::kSlotsFirst:
      return "slots-first";
    case Branch::kTagsFirst:
      return "tags-first";
    case Branch::kNone:
      break;
  }
  return "none";
}

void CheckBudgets(const InstanceIndex& index, int k, int l) {
  if (k < 1 || k > index.num_slots()) {
    throw InfeasibleError("k=" + std::to_string(k) + " not in [1, " +
                          std::to_string(index.num_slots()) + "]");
  }
  if (l < 1 || l > index.num_tags()) {
    throw InfeasibleError("l=" + std::to_string(l) + " not in [1, " +
                          std::to_string(index.num_tags()) + "]");
  }
}

void GreedySelectSlots(SurvivalState& state, int k,
                       std::span<const SlotId> pool, GreedyMode mode,
                       GreedyLog* log) {
  auto candidates = PreparePool<Orthant::kSlot>(state, k, pool);
  if (mode == GreedyMode::kLazy) {
    LazyLoop<Orthant::kSlot>(state, k, candidates, log);
  } else {
    IncrementalLoop<Orthant::kSlot>(state, k, std::move(candidates), log);
  }
}

void GreedySelectTags(SurvivalState& state, int l, std::span<const TagId> pool,
                      GreedyMode mode, GreedyLog* log) {
  auto candidates = PreparePool<Orthant::kTag>(state, l, pool);
  if (mode == GreedyMode::kLazy) {
    LazyLoop<Orthant::kTag>(state, l, candidates, log);
  } else {
    IncrementalLoop<Orthant::kTag>(state, l, std::move(candidates), log);
  }
}

std::int64_t StochasticSampleSize(std::int64_t ground, std::int64_t budget,
                                  double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ValidationError("epsilon must lie in (0, 1)");
  }
  if (ground < 1 || budget < 1) {
    throw ValidationError("ground set and budget must be positive");
  }
  const double size = static_cast<double>(ground) /
                      static_cast<double>(budget) * std::log(1.0 / epsilon);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(size)));
}

void StochasticSelectSlots(SurvivalState& state, int k,
                           std::span<const SlotId> pool,
                           std::int64_t sample_size, std::mt19937_64& rng,
                           GreedyLog* log) {
  StochasticLoop<Orthant::kSlot>(state, k,
                                 PreparePool<Orthant::kSlot>(state, k, pool),
                                 sample_size, rng, log);
}

void StochasticSelectTags(SurvivalState& state, int l,
                          std::span<const TagId> pool, std::int64_t sample_size,
                          std::mt19937_64& rng, GreedyLog* log) {
  StochasticLoop<Orthant::kTag>(state, l,
                                PreparePool<Orthant::kTag>(state, l, pool),
                                sample_size, rng, log);
}

double ExhaustiveCandidateCount(const InstanceIndex& index, int k, int l) {
  return Binomial(index.num_slots(), k) * Binomial(index.num_tags(), l);
}

SolveResult ExhaustiveSearch(const InstanceIndex& index, int k, int l,
                             std::uint64_t cap) {
  CheckBudgets(index, k, l);
  const double candidates = ExhaustiveCandidateCount(index, k, l);
  if (candidates > static_cast<double>(cap)) {
    throw CapExceededError("exhaustive search needs " +
                           std::to_string(candidates) + " candidates, cap is " +
                           std::to_string(cap));
  }
  const auto start = Clock::now();
  const int n = index.num_slots();
  const int t = index.num_tags();

  SolveResult result;
  double best_value = -1.0;
  std::vector<SlotId> best_slots;
  std::vector<TagId> best_tags;
  std::int64_t evaluated = 0;

  std::vector<double> stay(index.num_pairs());
  std::vector<double> survival(index.num_users(), 1.0);
  std::vector<SlotId> slots;
  std::vector<TagId> tags(l);
  std::iota(tags.begin(), tags.end(), 0);

  // Depth-first over slot combinations in lexicographic order, applying and
  // undoing each slot's survival factors.
  auto dfs = [&](auto&& self, int from, double value) -> void {
    if (static_cast<int>(slots.size()) == k) {
      ++evaluated;
      const bool better =
          value > best_value ||
          (value == best_value &&
           std::tie(slots, tags) < std::tie(best_slots, best_tags));
      if (better) {
        best_value = value;
        best_slots = slots;
        best_tags = tags;
      }
      return;
    }
    const int remaining = k - static_cast<int>(slots.size());
    for (SlotId s = from; s <= n - remaining; ++s) {
      std::vector<double> saved;
      saved.reserve(index.SlotPairEnd(s) - index.SlotPairBegin(s));
      double gain = 0.0;
      for (PairIndex p = index.SlotPairBegin(s); p < index.SlotPairEnd(s);
           ++p) {
        double& x = survival[index.PairUser(p)];
        saved.push_back(x);
        gain += x - x * stay[p];
        x *= stay[p];
      }
      slots.push_back(s);
      self(self, s + 1, value + gain);
      slots.pop_back();
      for (PairIndex p = index.SlotPairBegin(s), i = 0;
           p < index.SlotPairEnd(s); ++p, ++i) {
        survival[index.PairUser(p)] = saved[i];
      }
    }
  };

  while (true) {
    for (PairIndex p = 0; p < index.num_pairs(); ++p) {
      double q = 1.0;
      for (TagId c : tags) q *= 1.0 - index.PairProb(p, c);
      stay[p] = q;
    }
    dfs(dfs, 0, 0.0);
    // Next tag combination in lexicographic order.
    int i = l - 1;
    while (i >= 0 && tags[i] == t - l + i) --i;
    if (i < 0) break;
    ++tags[i];
    for (int j = i + 1; j < l; ++j) tags[j] = tags[j - 1] + 1;
  }

  result.selection = {best_slots, best_tags};
  result.value = AggregatedInfluence(index, result.selection);
  result.eval_count = evaluated;
  const auto elapsed = Clock::now() - start;
  result.wall_time_seconds = std::chrono::duration<double>(elapsed).count();
  result.wall_time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  return result;
}

SolveResult OrthantGreedy(const InstanceIndex& index, int k, int l,
                          GreedyMode mode) {
  return RunBranches(
      index, k, l,
      [mode](SurvivalState& state, int budget,
             const std::vector<std::int32_t>& pool, GreedyLog* log) {
        GreedySelectSlots(state, budget, pool, mode, log);
      },
      [mode](SurvivalState& state, int budget,
             const std::vector<std::int32_t>& pool, GreedyLog* log) {
        GreedySelectTags(state, budget, pool, mode, log);
      });
}

SolveResult StochasticGreedy(const InstanceIndex& index, int k, int l,
                             const StochasticParams& params) {
  CheckBudgets(index, k, l);
  const std::int64_t a = params.a > 0 ? params.a : index.num_slots();
  const std::int64_t b = params.b > 0 ? params.b : index.num_tags();
  const std::int64_t slot_sample = StochasticSampleSize(a, k, params.epsilon);
  const std::int64_t tag_sample = StochasticSampleSize(b, l, params.epsilon);
  // Each of the four loops draws from its own stream, so a loop's samples
  // do not depend on how many draws the loops before it consumed.
  const auto stream = [&params](const GreedyLog* log) {
    std::seed_seq seq{static_cast<std::uint32_t>(params.seed),
                      static_cast<std::uint32_t>(params.seed >> 32),
                      static_cast<std::uint32_t>(log->loop)};
    return std::mt19937_64(seq);
  };
  return RunBranches(
      index, k, l,
      [&](SurvivalState& state, int budget,
          const std::vector<std::int32_t>& pool, GreedyLog* log) {
        auto rng = stream(log);
        StochasticSelectSlots(state, budget, pool, slot_sample, rng, log);
      },
      [&](SurvivalState& state, int budget,
          const std::vector<std::int32_t>& pool, GreedyLog* log) {
        auto rng = stream(log);
        StochasticSelectTags(state, budget, pool, tag_sample, rng, log);
      });
}

}  // namespace billboard
