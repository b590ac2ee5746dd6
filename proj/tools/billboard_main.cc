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

// billboard: generate instances, solve them, run sweeps, verify records.
//
// Exit codes: 0 success, 1 usage / parse / validation / infeasible budget,
// 2 exhaustive-search cap exceeded.

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "billboard/errors.h"
#include "billboard/experiment.h"
#include "billboard/ingest.h"
#include "billboard/serialization.h"

namespace {

using billboard::Error;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCap = 2;

// Flags shared by `generate` and `solve` for building an instance from
// CSV files or the synthetic generator.
struct SourceFlags {
  std::string trajectories;
  std::string billboards;
  std::string tags;
  std::string probs;
  std::int64_t t1 = 0;
  std::int64_t t2 = 99;
  std::int64_t delta = 10;
  double lambda = 100.0;
  std::optional<double> default_tag_prob;
  std::optional<double> default_slot_prob;
  std::optional<double> default_pair_prob;

  void Register(CLI::App* app) {
    app->add_option("--trajectories", trajectories, "Trajectory CSV");
    app->add_option("--probs", probs, "Explicit probability CSV");
    app->add_option("--t1", t1, "Horizon start")->capture_default_str();
    app->add_option("--t2", t2, "Horizon end (inclusive)")
        ->capture_default_str();
    app->add_option("--delta", delta, "Slot duration")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--lambda", lambda, "Visibility radius in meters")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--default-tag-prob", default_tag_prob,
                    "Override Pr(u, s | h')");
    app->add_option("--default-slot-prob", default_slot_prob,
                    "Override Pr(u, s' | c)");
    app->add_option("--default-pair-prob", default_pair_prob,
                    "Override Pr(u, s' | h')");
  }

  billboard::IngestConfig Ingest() const {
    billboard::IngestConfig config;
    config.horizon = {t1, t2};
    config.slot_duration = delta;
    config.lambda_m = lambda;
    config.default_tag_prob = default_tag_prob;
    config.default_slot_prob = default_slot_prob;
    config.default_pair_prob = default_pair_prob;
    return config;
  }

  billboard::InfluenceInstance FromFiles() const {
    if (billboards.empty() || tags.empty()) {
      throw Error("--trajectories requires --billboards and --tags files");
    }
    billboard::InstanceSource source;
    source.kind = billboard::SourceKind::kFiles;
    source.trajectories_path = trajectories;
    source.billboards_path = billboards;
    source.tags_path = tags;
    source.probs_path = probs;
    source.ingest = Ingest();
    return billboard::MaterializeInstance(billboard::LoadSource(source),
                                          std::nullopt);
  }
};

int ParseCount(const std::string& text, const char* flag) {
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 1) {
    throw Error(std::string(flag) + " must be a positive integer");
  }
  return value;
}

int RunGenerate(const SourceFlags& flags, billboard::SyntheticSpec spec,
                const std::string& users, const std::string& tuples,
                const std::string& output) {
  billboard::InfluenceInstance instance;
  if (!flags.trajectories.empty()) {
    instance = flags.FromFiles();
  } else {
    spec.n_users = ParseCount(users, "--users");
    spec.n_tuples = ParseCount(tuples, "--tuples");
    spec.n_billboards = ParseCount(flags.billboards, "--billboards");
    spec.n_tags = ParseCount(flags.tags, "--tags");
    spec.horizon = {flags.t1, flags.t2};
    instance = billboard::GenerateSynthetic(spec, flags.Ingest());
  }
  billboard::SaveInstance(output, instance);
  std::cout << billboard::InstanceDigest(instance) << "\n";
  return kExitOk;
}

int RunSolve(const SourceFlags& flags, const std::string& instance_path,
             const std::string& algo, billboard::RunOptions options,
             bool lambda_given) {
  const auto algorithm = billboard::ParseAlgorithm(algo);
  if (!algorithm) throw Error("unknown algorithm '" + algo + "'");
  options.algorithm = *algorithm;
  billboard::InfluenceInstance instance;
  if (!instance_path.empty()) {
    instance = billboard::LoadInstance(instance_path);
    if (lambda_given && flags.lambda != instance.meta.lambda_m) {
      throw Error("--lambda differs from the stored instance's lambda_m");
    }
  } else if (!flags.trajectories.empty()) {
    instance = flags.FromFiles();
  } else {
    throw Error("solve needs an instance file or --trajectories");
  }
  const billboard::InstanceIndex index(instance);
  const billboard::SolveResult result = billboard::RunAlgorithm(index, options);
  const billboard::RunRecord record =
      billboard::MakeRecord(options, instance.meta.lambda_m, result,
                            billboard::InstanceDigest(instance));
  std::cout << billboard::RecordToJson(record).dump() << "\n";
  return kExitOk;
}

int RunSweepCommand(const std::string& config_path, const std::string& csv,
                    const std::string& summary, const std::string& records) {
  const billboard::ExperimentConfig config = billboard::LoadConfig(config_path);
  const billboard::SweepResult result = billboard::RunSweep(config);
  if (csv.empty() || csv == "-") {
    billboard::WriteSweepCsv(std::cout, result);
  } else {
    std::ofstream out(csv, std::ios::binary);
    if (!out) throw Error("cannot write " + csv);
    billboard::WriteSweepCsv(out, result);
  }
  if (!summary.empty()) {
    std::ofstream out(summary, std::ios::binary);
    if (!out) throw Error("cannot write " + summary);
    out << billboard::SweepSummary(result).dump(2) << "\n";
  }
  if (!records.empty()) {
    std::ofstream out(records, std::ios::binary);
    if (!out) throw Error("cannot write " + records);
    for (const billboard::SweepRow& row : result.rows) {
      if (row.ok) out << billboard::RecordToJson(row.record).dump() << "\n";
    }
  }
  for (const billboard::SweepRow& row : result.rows) {
    if (!row.ok) {
      std::cerr << "failed: " << row.record.run_id << ": " << row.error << "\n";
    }
  }
  std::cerr << result.rows.size() << " runs, " << result.failures
            << " failed\n";
  return result.failures == 0 ? kExitOk : kExitError;
}

int RunVerify(const std::string& instance_path,
              const std::string& records_path) {
  const billboard::InfluenceInstance instance =
      billboard::LoadInstance(instance_path);
  const auto records = billboard::LoadRecords(records_path);
  const auto outcomes = billboard::VerifyRecords(instance, records);
  int failed = 0;
  for (const billboard::VerifyOutcome& outcome : outcomes) {
    if (outcome.ok) {
      std::cout << "PASS " << outcome.run_id << " delta "
                << billboard::FormatDouble(outcome.delta) << "\n";
      continue;
    }
    ++failed;
    std::cout << "FAIL " << outcome.run_id << "\n";
    for (const std::string& problem : outcome.problems) {
      std::cout << "  " << problem << "\n";
    }
  }
  std::cout << outcomes.size() - failed << "/" << outcomes.size()
            << " records verified\n";
  return failed == 0 ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("Context-dependent billboard slot and tag selection");
  app.require_subcommand(1);

  // generate
  CLI::App* generate =
      app.add_subcommand("generate", "Write an instance JSON file");
  SourceFlags gen_flags;
  gen_flags.Register(generate);
  billboard::SyntheticSpec spec;
  std::string gen_users = "100";
  std::string gen_tuples = "500";
  std::string gen_output;
  gen_flags.billboards = "10";
  gen_flags.tags = "5";
  generate->add_option("--users", gen_users, "Synthetic user count")
      ->capture_default_str();
  generate->add_option("--tuples", gen_tuples, "Synthetic tuple count")
      ->capture_default_str();
  generate
      ->add_option("--billboards", gen_flags.billboards,
                   "Billboard count, or a CSV path with --trajectories")
      ->capture_default_str();
  generate
      ->add_option("--tags", gen_flags.tags,
                   "Tag count, or a CSV path with --trajectories")
      ->capture_default_str();
  generate->add_option("--seed", spec.seed, "Generator seed")
      ->capture_default_str();
  generate->add_option("--tag-skew", spec.tag_skew, "Tag weight skew")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate->add_option("--max-dwell", spec.max_dwell, "Longest tuple interval")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate->add_option("-o,--output", gen_output, "Instance JSON path")
      ->required();

  // solve
  CLI::App* solve = app.add_subcommand("solve", "Print one run record");
  SourceFlags solve_flags;
  solve_flags.Register(solve);
  solve->add_option("--billboards", solve_flags.billboards, "Billboard CSV");
  solve->add_option("--tags", solve_flags.tags, "Tag CSV");
  std::string solve_instance;
  std::string solve_algo = "greedy-lazy";
  billboard::RunOptions options;
  solve->add_option("instance", solve_instance, "Instance JSON path");
  solve
      ->add_option("--algo", solve_algo,
                   "exhaustive | greedy-incremental | greedy-lazy | "
                   "greedy-stochastic | baseline:<KIND>")
      ->capture_default_str();
  solve->add_option("-k", options.k, "Slot budget")->required();
  solve->add_option("-l", options.l, "Tag budget")->required();
  solve->add_option("--epsilon", options.epsilon, "Stochastic accuracy")
      ->capture_default_str();
  solve->add_option("--seed", options.seed, "Random seed")
      ->capture_default_str();
  solve->add_option("--cap", options.cap, "Exhaustive candidate cap")
      ->capture_default_str();

  // sweep
  CLI::App* sweep = app.add_subcommand("sweep", "Run a configured sweep");
  std::string sweep_config;
  std::string sweep_csv;
  std::string sweep_summary;
  std::string sweep_records;
  sweep->add_option("--config", sweep_config, "Configuration file")->required();
  sweep->add_option("-o,--output", sweep_csv, "Results CSV (default stdout)");
  sweep->add_option("--summary", sweep_summary, "Summary JSON path");
  sweep->add_option("--records", sweep_records, "Run records (JSON lines)");

  // verify
  CLI::App* verify =
      app.add_subcommand("verify", "Recompute influence for run records");
  std::string verify_instance;
  std::string verify_records;
  verify->add_option("instance", verify_instance, "Instance JSON path")
      ->required();
  verify->add_option("records", verify_records, "Run records (JSON lines)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*generate) {
      return RunGenerate(gen_flags, spec, gen_users, gen_tuples, gen_output);
    }
    if (*solve) {
      const bool lambda_given = solve->count("--lambda") > 0;
      return RunSolve(solve_flags, solve_instance, solve_algo, options,
                      lambda_given);
    }
    if (*sweep) {
      return RunSweepCommand(sweep_config, sweep_csv, sweep_summary,
                             sweep_records);
    }
    if (*verify) return RunVerify(verify_instance, verify_records);
  } catch (const billboard::CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
