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

// Experiment harness behind the command-line tool: algorithm dispatch, run
// records, configuration files, sweeps and record verification.
//
// Configuration files hold one `key = value` per line; `#` starts a comment
// and list values are comma-separated:
//
//   source = synthetic          # synthetic | files | instance
//   users = 2000
//   billboards = 200            # a count for synthetic, a path for files
//   algorithms = greedy-lazy, greedy-stochastic, baseline:TSTT
//   k = 25, 50, 100
//   seeds = 1, 2, 3

#ifndef BILLBOARD_EXPERIMENT_H_
#define BILLBOARD_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "billboard/baselines.h"
#include "billboard/domain.h"
#include "billboard/ingest.h"
#include "billboard/instance_index.h"
#include "billboard/solvers.h"
#include "json.hpp"

namespace billboard {

enum class AlgorithmKind {
  kExhaustive,
  kGreedyIncremental,
  kGreedyLazy,
  kGreedyStochastic,
  kBaseline,
};

struct Algorithm {
  AlgorithmKind kind = AlgorithmKind::kGreedyLazy;
  BaselineKind baseline = BaselineKind::kRSRT;  // used by kBaseline only

  friend bool operator==(const Algorithm&, const Algorithm&) = default;
};

// "exhaustive", "greedy-incremental", "greedy-lazy", "greedy-stochastic" or
// "baseline:<KIND>".
std::string AlgorithmName(const Algorithm& algorithm);
std::optional<Algorithm> ParseAlgorithm(const std::string& name);

struct RunOptions {
  Algorithm algorithm;
  int k = 1;
  int l = 1;
  double epsilon = 0.01;
  std::uint64_t seed = 0;
  std::uint64_t cap = kDefaultExhaustiveCap;
};

SolveResult RunAlgorithm(const InstanceIndex& index, const RunOptions& options);

struct RunRecord {
  std::string run_id;
  std::string algorithm;
  int k = 0;
  int l = 0;
  double epsilon = 0.0;
  double lambda_m = 0.0;
  std::uint64_t seed = 0;
  double influence = 0.0;
  std::int64_t eval_count = 0;
  std::int64_t wall_time_ms = 0;
  std::vector<SlotId> selected_slots;
  std::vector<TagId> selected_tags;
  std::string instance_digest;
};

// Deterministic id built from the run parameters; trajectory_size 0 means
// the full trajectory list.
std::string MakeRunId(const RunOptions& options, double lambda_m,
                      std::int64_t trajectory_size = 0);

RunRecord MakeRecord(const RunOptions& options, double lambda_m,
                     const SolveResult& result, const std::string& digest,
                     std::int64_t trajectory_size = 0);

nlohmann::json RecordToJson(const RunRecord& record);
// Throws ParseError on missing or mistyped fields.
RunRecord RecordFromJson(const nlohmann::json& doc);

// One JSON object per non-blank line.
std::vector<RunRecord> LoadRecords(const std::string& path);

enum class SourceKind { kSynthetic, kFiles, kInstance };

struct InstanceSource {
  SourceKind kind = SourceKind::kSynthetic;
  SyntheticSpec synthetic;
  std::string instance_path;
  std::string trajectories_path;
  std::string billboards_path;
  std::string tags_path;
  std::string probs_path;  // optional; selects explicit probabilities
  IngestConfig ingest;
};

// Raw inputs of a source, loaded once and re-assembled per sweep cell.
struct LoadedSource {
  SourceKind kind = SourceKind::kSynthetic;
  RawDataset raw;
  std::vector<ExplicitProbRow> explicit_rows;
  InfluenceInstance instance;  // kInstance only
  IngestConfig ingest;
};

LoadedSource LoadSource(const InstanceSource& source);

// Assembles the instance for one (lambda, trajectory prefix) pair. A prebuilt
// instance cannot be re-indexed, so kInstance sources reject a lambda that
// differs from the stored one and any trajectory prefix.
InfluenceInstance MaterializeInstance(const LoadedSource& source,
                                      std::optional<double> lambda_m,
                                      std::int64_t trajectory_size = 0);

struct ExperimentConfig {
  InstanceSource source;
  std::vector<Algorithm> algorithms;
  std::vector<int> k;
  std::vector<int> l;
  std::vector<double> epsilon;
  std::vector<double> lambda_m;
  std::vector<std::int64_t> trajectory_sizes;  // empty: full list only
  std::vector<std::uint64_t> seeds;
  std::uint64_t cap = kDefaultExhaustiveCap;

  // Default sweep grids.
  static ExperimentConfig Defaults();
};

// Throws ParseError naming the offending line.
ExperimentConfig ParseConfig(const std::string& text,
                             const std::string& origin = "<config>");
ExperimentConfig LoadConfig(const std::string& path);

struct SweepRow {
  RunRecord record;
  std::int64_t trajectory_size = 0;
  bool ok = true;
  std::string error;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // canonical order
  int failures = 0;
};

// Runs the Cartesian product of the configured axes, algorithms and seeds.
// Failed runs are kept as rows with ok = false.
SweepResult RunSweep(const ExperimentConfig& config);

inline constexpr char kSweepCsvHeader[] =
    "run_id,algorithm,k,l,epsilon,lambda_m,seed,influence,eval_count,"
    "wall_time_ms";

// Failed rows leave influence, eval_count and wall_time_ms empty.
void WriteSweepCsv(std::ostream& out, const SweepResult& result);

// Per-cell means over seeds plus the list of failed runs.
nlohmann::json SweepSummary(const SweepResult& result);

struct VerifyOutcome {
  std::string run_id;
  bool ok = true;
  double recorded = 0.0;
  double recomputed = 0.0;
  double delta = 0.0;
  std::vector<std::string> problems;
};

inline constexpr double kVerifyRelativeTolerance = 1e-6;

// Checks each record against the instance: digest, budgets, ids, and
// influence within kVerifyRelativeTolerance.
std::vector<VerifyOutcome> VerifyRecords(const InfluenceInstance& instance,
                                         const std::vector<RunRecord>& records);

}  // namespace billboard

#endif  // BILLBOARD_EXPERIMENT_H_
