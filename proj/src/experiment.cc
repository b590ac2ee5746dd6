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

#include "billboard/experiment.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "billboard/errors.h"
#include "billboard/influence.h"
#include "billboard/serialization.h"

namespace billboard {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> SplitList(std::string_view value) {
  std::vector<std::string> items;
  std::size_t begin = 0;
  while (begin <= value.size()) {
    std::size_t end = value.find(',', begin);
    if (end == std::string_view::npos) end = value.size();
    const std::string_view item = Trim(value.substr(begin, end - begin));
    if (!item.empty()) items.emplace_back(item);
    begin = end + 1;
  }
  return items;
}

template <typename T>
std::optional<T> ParseNumber(std::string_view text) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

struct ConfigEntry {
  std::string value;
  std::int64_t line = 0;
};

class ConfigReader {
 public:
  ConfigReader(std::map<std::string, ConfigEntry> entries, std::string origin)
      : entries_(std::move(entries)), origin_(std::move(origin)) {}

  bool Has(const std::string& key) const { return entries_.count(key) > 0; }

  std::string String(const std::string& key) const {
    return entries_.at(key).value;
  }

  template <typename T>
  T Number(const std::string& key) const {
    const ConfigEntry& entry = entries_.at(key);
    const auto value = ParseNumber<T>(Trim(entry.value));
    if (!value) Fail(key, "expected a number, got '" + entry.value + "'");
    return *value;
  }

  template <typename T>
  std::vector<T> NumberList(const std::string& key) const {
    std::vector<T> out;
    for (const std::string& item : SplitList(entries_.at(key).value)) {
      const auto value = ParseNumber<T>(item);
      if (!value) Fail(key, "expected a number, got '" + item + "'");
      out.push_back(*value);
    }
    if (out.empty()) Fail(key, "empty list");
    return out;
  }

  [[noreturn]] void Fail(const std::string& key,
                         const std::string& what) const {
    const auto it = entries_.find(key);
    throw ParseError(origin_, it == entries_.end() ? 0 : it->second.line,
                     key + ": " + what);
  }

 private:
  std::map<std::string, ConfigEntry> entries_;
  std::string origin_;
};

const std::vector<std::string>& KnownKeys() {
  static const std::vector<std::string> keys = {"source",
                                                "instance",
                                                "trajectories",
                                                "billboards",
                                                "tags",
                                                "probs",
                                                "users",
                                                "tuples",
                                                "data_seed",
                                                "tag_skew",
                                                "max_dwell",
                                                "geo_box",
                                                "t1",
                                                "t2",
                                                "delta",
                                                "algorithms",
                                                "k",
                                                "l",
                                                "epsilon",
                                                "lambda_m",
                                                "trajectory_sizes",
                                                "seeds",
                                                "cap",
                                                "default_tag_prob",
                                                "default_slot_prob",
                                                "default_pair_prob"};
  return keys;
}

}  // namespace

std::string AlgorithmName(const Algorithm& algorithm) {
  switch (algorithm.kind) {
    case AlgorithmKind::kExhaustive:
      return "exhaustive";
    case AlgorithmKind::kGreedyIncremental:
      return "greedy-incremental";
    case AlgorithmKind::kGreedyLazy:
      return "greedy-lazy";
    case AlgorithmKind::kGreedyStochastic:
      return "greedy-stochastic";
    case AlgorithmKind::kBaseline:
      return "baseline:" + BaselineName(algorithm.baseline);
  }
  return "?";
}

std::optional<Algorithm> ParseAlgorithm(const std::string& name) {
  if (name == "exhaustive") return Algorithm{AlgorithmKind::kExhaustive};
  if (name == "greedy-incremental") {
    return Algorithm{AlgorithmKind::kGreedyIncremental};
  }
  if (name == "greedy-lazy") return Algorithm{AlgorithmKind::kGreedyLazy};
  if (name == "greedy-stochastic") {
    return Algorithm{AlgorithmKind::kGreedyStochastic};
  }
  constexpr std::string_view kPrefix = "baseline:";
  if (name.rfind(kPrefix, 0) == 0) {
    if (auto kind = ParseBaseline(name.substr(kPrefix.size()))) {
      return Algorithm{AlgorithmKind::kBaseline, *kind};
    }
  }
  return std::nullopt;
}

SolveResult RunAlgorithm(const InstanceIndex& index,
                         const RunOptions& options) {
  switch (options.algorithm.kind) {
    case AlgorithmKind::kExhaustive:
      return ExhaustiveSearch(index, options.k, options.l, options.cap);
    case AlgorithmKind::kGreedyIncremental:
      return OrthantGreedy(index, options.k, options.l,
                           GreedyMode::kIncremental);
    case AlgorithmKind::kGreedyLazy:
      return OrthantGreedy(index, options.k, options.l, GreedyMode::kLazy);
    case AlgorithmKind::kGreedyStochastic:
      return StochasticGreedy(
          index, options.k, options.l,
          {.epsilon = options.epsilon, .seed = options.seed});
    case AlgorithmKind::kBaseline:
      return RunBaseline(index, options.algorithm.baseline, options.k,
                         options.l, options.seed);
  }
  throw Error("unknown algorithm");
}

std::string MakeRunId(const RunOptions& options, double lambda_m,
                      std::int64_t trajectory_size) {
  std::string id =
      AlgorithmName(options.algorithm) + "-k" + std::to_string(options.k) +
      "-l" + std::to_string(options.l) + "-eps" +
      FormatDouble(options.epsilon) + "-lambda" + FormatDouble(lambda_m);
  if (trajectory_size > 0) id += "-n" + std::to_string(trajectory_size);
  return id + "-seed" + std::to_string(options.seed);
}

RunRecord MakeRecord(const RunOptions& options, double lambda_m,
                     const SolveResult& result, const std::string& digest,
                     std::int64_t trajectory_size) {
  RunRecord record;
  record.run_id = MakeRunId(options, lambda_m, trajectory_size);
  record.algorithm = AlgorithmName(options.algorithm);
  record.k = options.k;
  record.l = options.l;
  record.epsilon = options.epsilon;
  record.lambda_m = lambda_m;
  record.seed = options.seed;
  record.influence = result.value;
  record.eval_count = result.eval_count;
  record.wall_time_ms = result.wall_time_ms;
  record.selected_slots = result.selection.slots;
  record.selected_tags = result.selection.tags;
  record.instance_digest = digest;
  return record;
}

nlohmann::json RecordToJson(const RunRecord& record) {
  return {{"run_id", record.run_id},
          {"algorithm", record.algorithm},
          {"k", record.k},
          {"l", record.l},
          {"epsilon", record.epsilon},
          {"lambda_m", record.lambda_m},
          {"seed", record.seed},
          {"influence", record.influence},
          {"eval_count", record.eval_count},
          {"wall_time_ms", record.wall_time_ms},
          {"selected_slots", record.selected_slots},
          {"selected_tags", record.selected_tags},
          {"instance_digest", record.instance_digest}};
}

RunRecord RecordFromJson(const nlohmann::json& doc) {
  RunRecord r;
  try {
    r.run_id = doc.at("run_id").get<std::string>();
    r.algorithm = doc.at("algorithm").get<std::string>();
    r.k = doc.at("k").get<int>();
    r.l = doc.at("l").get<int>();
    r.epsilon = doc.at("epsilon").get<double>();
    r.lambda_m = doc.at("lambda_m").get<double>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.influence = doc.at("influence").get<double>();
    r.eval_count = doc.at("eval_count").get<std::int64_t>();
    r.wall_time_ms = doc.at("wall_time_ms").get<std::int64_t>();
    r.selected_slots = doc.at("selected_slots").get<std::vector<SlotId>>();
    r.selected_tags = doc.at("selected_tags").get<std::vector<TagId>>();
    r.instance_digest = doc.at("instance_digest").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("<record>", 0, e.what());
  }
  return r;
}

std::vector<RunRecord> LoadRecords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::vector<RunRecord> records;
  std::string line;
  std::int64_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (Trim(line).empty()) continue;
    try {
      records.push_back(RecordFromJson(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path, number, e.what());
    } catch (const ParseError& e) {
      throw ParseError(path, number, e.what());
    }
  }
  return records;
}

LoadedSource LoadSource(const InstanceSource& source) {
  LoadedSource loaded;
  loaded.kind = source.kind;
  loaded.ingest = source.ingest;
  switch (source.kind) {
    case SourceKind::kSynthetic: {
      SyntheticSpec spec = source.synthetic;
      spec.horizon = source.ingest.horizon;
      loaded.raw = GenerateSyntheticData(spec);
      loaded.ingest.prob_mode = ProbMode::kSynthetic;
      break;
    }
    case SourceKind::kFiles:
      loaded.raw.trajectories = LoadTrajectories(source.trajectories_path);
      loaded.raw.billboards = LoadBillboards(source.billboards_path);
      loaded.raw.tags = LoadTags(source.tags_path);
      if (!source.probs_path.empty()) {
        loaded.explicit_rows = LoadExplicitProbs(source.probs_path);
        loaded.ingest.prob_mode = ProbMode::kExplicitFile;
      } else {
        loaded.ingest.prob_mode = ProbMode::kPanelSizeBase;
      }
      break;
    case SourceKind::kInstance:
      loaded.instance = LoadInstance(source.instance_path);
      if (auto errors = ValidateInstance(loaded.instance); !errors.empty()) {
        throw ValidationError(source.instance_path + ": " + errors.front());
      }
      break;
  }
  return loaded;
}

InfluenceInstance MaterializeInstance(const LoadedSource& source,
                                      std::optional<double> lambda_m,
                                      std::int64_t trajectory_size) {
  if (source.kind == SourceKind::kInstance) {
    if (lambda_m && *lambda_m != source.instance.meta.lambda_m) {
      throw ValidationError(
          "a stored instance cannot be re-indexed for lambda_m = " +
          FormatDouble(*lambda_m));
    }
    if (trajectory_size > 0) {
      throw ValidationError(
          "a stored instance cannot be truncated to a trajectory prefix");
    }
    return source.instance;
  }
  IngestConfig config = source.ingest;
  if (lambda_m) config.lambda_m = *lambda_m;
  const TrajectoryDatabase& full = source.raw.trajectories;
  if (trajectory_size > 0) {
    return AssembleInstance(full.Prefix(trajectory_size), source.raw.billboards,
                            source.raw.tags, config, source.explicit_rows);
  }
  return AssembleInstance(full, source.raw.billboards, source.raw.tags, config,
                          source.explicit_rows);
}

ExperimentConfig ExperimentConfig::Defaults() {
  ExperimentConfig config;
  config.algorithms = {Algorithm{AlgorithmKind::kGreedyLazy}};
  config.k = {25, 50, 100, 150, 200};
  config.l = {10, 20, 30, 40, 50};
  config.epsilon = {0.01, 0.05, 0.1, 0.15, 0.2};
  config.lambda_m = {25, 50, 75, 100, 125};
  config.seeds = {1};
  return config;
}

ExperimentConfig ParseConfig(const std::string& text,
                             const std::string& origin) {
  std::map<std::string, ConfigEntry> entries;
  std::istringstream in(text);
  std::string raw;
  std::int64_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(origin, number, "expected key = value");
    }
    const std::string key(Trim(line.substr(0, eq)));
    const std::string value(Trim(line.substr(eq + 1)));
    const auto& known = KnownKeys();
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ParseError(origin, number, "unknown key '" + key + "'");
    }
    if (!entries.emplace(key, ConfigEntry{value, number}).second) {
      throw ParseError(origin, number, "duplicate key '" + key + "'");
    }
  }
  const ConfigReader cfg(std::move(entries), origin);

  ExperimentConfig config = ExperimentConfig::Defaults();
  InstanceSource& source = config.source;
  const std::string kind = cfg.Has("source")         ? cfg.String("source")
                           : cfg.Has("instance")     ? "instance"
                           : cfg.Has("trajectories") ? "files"
                                                     : "synthetic";
  if (kind == "synthetic") {
    source.kind = SourceKind::kSynthetic;
    SyntheticSpec& spec = source.synthetic;
    if (cfg.Has("users")) spec.n_users = cfg.Number<int>("users");
    if (cfg.Has("billboards"))
      spec.n_billboards = cfg.Number<int>("billboards");
    if (cfg.Has("tags")) spec.n_tags = cfg.Number<int>("tags");
    if (cfg.Has("tuples")) spec.n_tuples = cfg.Number<int>("tuples");
    if (cfg.Has("data_seed")) {
      spec.seed = cfg.Number<std::uint64_t>("data_seed");
    }
    if (cfg.Has("tag_skew")) spec.tag_skew = cfg.Number<double>("tag_skew");
    if (cfg.Has("max_dwell")) {
      spec.max_dwell = cfg.Number<std::int64_t>("max_dwell");
    }
    if (cfg.Has("geo_box")) {
      const auto box = cfg.NumberList<double>("geo_box");
      if (box.size() != 4) {
        cfg.Fail("geo_box", "expected lat_min, lat_max, lon_min, lon_max");
      }
      spec.geo_box = {box[0], box[1], box[2], box[3]};
    }
    if (auto errors = spec.Validate(); !errors.empty()) {
      throw ParseError(origin, 0, errors.front());
    }
  } else if (kind == "files") {
    source.kind = SourceKind::kFiles;
    for (const char* key : {"trajectories", "billboards", "tags"}) {
      if (!cfg.Has(key)) cfg.Fail(key, "required for source = files");
    }
    source.trajectories_path = cfg.String("trajectories");
    source.billboards_path = cfg.String("billboards");
    source.tags_path = cfg.String("tags");
    if (cfg.Has("probs")) source.probs_path = cfg.String("probs");
  } else if (kind == "instance") {
    source.kind = SourceKind::kInstance;
    if (!cfg.Has("instance")) cfg.Fail("instance", "required");
    source.instance_path = cfg.String("instance");
    config.lambda_m.clear();
  } else {
    cfg.Fail("source", "expected synthetic, files or instance");
  }

  IngestConfig& ingest = source.ingest;
  if (cfg.Has("t1")) ingest.horizon.start = cfg.Number<std::int64_t>("t1");
  if (cfg.Has("t2")) ingest.horizon.end = cfg.Number<std::int64_t>("t2");
  if (!ingest.horizon.IsValid()) cfg.Fail("t2", "horizon must have t1 <= t2");
  if (cfg.Has("delta")) {
    ingest.slot_duration = cfg.Number<std::int64_t>("delta");
    if (ingest.slot_duration < 1) cfg.Fail("delta", "must be >= 1");
  }
  if (cfg.Has("default_tag_prob")) {
    ingest.default_tag_prob = cfg.Number<double>("default_tag_prob");
  }
  if (cfg.Has("default_slot_prob")) {
    ingest.default_slot_prob = cfg.Number<double>("default_slot_prob");
  }
  if (cfg.Has("default_pair_prob")) {
    ingest.default_pair_prob = cfg.Number<double>("default_pair_prob");
  }

  if (cfg.Has("algorithms")) {
    config.algorithms.clear();
    for (const std::string& name : SplitList(cfg.String("algorithms"))) {
      const auto algorithm = ParseAlgorithm(name);
      if (!algorithm)
        cfg.Fail("algorithms", "unknown algorithm '" + name + "'");
      config.algorithms.push_back(*algorithm);
    }
    if (config.algorithms.empty()) cfg.Fail("algorithms", "empty list");
  }
  if (cfg.Has("k")) config.k = cfg.NumberList<int>("k");
  if (cfg.Has("l")) config.l = cfg.NumberList<int>("l");
  if (cfg.Has("epsilon")) config.epsilon = cfg.NumberList<double>("epsilon");
  if (cfg.Has("lambda_m")) {
    config.lambda_m = cfg.NumberList<double>("lambda_m");
  }
  if (cfg.Has("trajectory_sizes")) {
    config.trajectory_sizes = cfg.NumberList<std::int64_t>("trajectory_sizes");
  }
  if (cfg.Has("seeds")) config.seeds = cfg.NumberList<std::uint64_t>("seeds");
  if (cfg.Has("cap")) config.cap = cfg.Number<std::uint64_t>("cap");

  for (int k : config.k) {
    if (k < 1) cfg.Fail("k", "budgets must be positive");
  }
  for (int l : config.l) {
    if (l < 1) cfg.Fail("l", "budgets must be positive");
  }
  for (double e : config.epsilon) {
    if (!(e > 0.0 && e < 1.0)) cfg.Fail("epsilon", "must lie in (0, 1)");
  }
  for (double lambda : config.lambda_m) {
    if (!(lambda > 0.0)) cfg.Fail("lambda_m", "must be positive");
  }
  for (std::int64_t size : config.trajectory_sizes) {
    if (size < 1) cfg.Fail("trajectory_sizes", "must be positive");
  }
  return config;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return ParseConfig(text.str(), path);
}

SweepResult RunSweep(const ExperimentConfig& config) {
  const LoadedSource source = LoadSource(config.source);
  std::vector<std::optional<double>> lambdas;
  for (double lambda : config.lambda_m) lambdas.emplace_back(lambda);
  if (lambdas.empty()) lambdas.emplace_back(std::nullopt);
  std::vector<std::int64_t> sizes = config.trajectory_sizes;
  if (sizes.empty()) sizes.push_back(0);

  SweepResult result;
  for (std::int64_t size : sizes) {
    for (const std::optional<double>& lambda : lambdas) {
      // One index per (prefix, lambda), shared by every run in the cell.
      std::optional<InstanceIndex> index;
      std::string digest;
      std::string build_error;
      double lambda_value = lambda.value_or(0.0);
      try {
        const InfluenceInstance instance =
            MaterializeInstance(source, lambda, size);
        lambda_value = instance.meta.lambda_m;
        digest = InstanceDigest(instance);
        index.emplace(instance);
      } catch (const Error& e) {
        build_error = e.what();
      }
      for (const Algorithm& algorithm : config.algorithms) {
        for (int k : config.k) {
          for (int l : config.l) {
            for (double epsilon : config.epsilon) {
              for (std::uint64_t seed : config.seeds) {
                const RunOptions options{algorithm, k,    l,
                                         epsilon,   seed, config.cap};
                SweepRow row;
                row.trajectory_size = size;
                if (index) {
                  try {
                    row.record =
                        MakeRecord(options, lambda_value,
                                   RunAlgorithm(*index, options), digest, size);
                  } catch (const Error& e) {
                    row.ok = false;
                    row.error = e.what();
                  }
                } else {
                  row.ok = false;
                  row.error = build_error;
                }
                if (!row.ok) {
                  row.record =
                      MakeRecord(options, lambda_value, {}, digest, size);
                  ++result.failures;
                }
                result.rows.push_back(std::move(row));
              }
            }
          }
        }
      }
    }
  }
  const auto key = [](const SweepRow& row) {
    const RunRecord& r = row.record;
    return std::tie(row.trajectory_size, r.lambda_m, r.algorithm, r.k, r.l,
                    r.epsilon, r.seed);
  };
  std::stable_sort(
      result.rows.begin(), result.rows.end(),
      [&key](const SweepRow& a, const SweepRow& b) { return key(a) < key(b); });
  return result;
}

void WriteSweepCsv(std::ostream& out, const SweepResult& result) {
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& row : result.rows) {
    const RunRecord& r = row.record;
    out << r.run_id << ',' << r.algorithm << ',' << r.k << ',' << r.l << ','
        << FormatDouble(r.epsilon) << ',' << FormatDouble(r.lambda_m) << ','
        << r.seed << ',';
    if (row.ok) {
      out << FormatDouble(r.influence) << ',' << r.eval_count << ','
          << r.wall_time_ms;
    } else {
      out << ",,";
    }
    out << '\n';
  }
}

nlohmann::json SweepSummary(const SweepResult& result) {
  struct Cell {
    const SweepRow* first = nullptr;
    int runs = 0;
    int failures = 0;
    double influence = 0.0;
    double eval_count = 0.0;
    double wall_time_ms = 0.0;
  };
  // Rows are already in canonical order, so cells come out sorted too.
  std::vector<Cell> cells;
  const auto same_cell = [](const SweepRow& a, const SweepRow& b) {
    const RunRecord& x = a.record;
    const RunRecord& y = b.record;
    return a.trajectory_size == b.trajectory_size && x.lambda_m == y.lambda_m &&
           x.algorithm == y.algorithm && x.k == y.k && x.l == y.l &&
           x.epsilon == y.epsilon;
  };
  nlohmann::json failed = nlohmann::json::array();
  for (const SweepRow& row : result.rows) {
    if (cells.empty() || !same_cell(*cells.back().first, row)) {
      cells.push_back({&row});
    }
    Cell& cell = cells.back();
    if (!row.ok) {
      ++cell.failures;
      failed.push_back({{"run_id", row.record.run_id}, {"error", row.error}});
      continue;
    }
    ++cell.runs;
    cell.influence += row.record.influence;
    cell.eval_count += static_cast<double>(row.record.eval_count);
    cell.wall_time_ms += static_cast<double>(row.record.wall_time_ms);
  }
  nlohmann::json out_cells = nlohmann::json::array();
  for (const Cell& cell : cells) {
    const RunRecord& r = cell.first->record;
    nlohmann::json entry = {{"algorithm", r.algorithm},
                            {"k", r.k},
                            {"l", r.l},
                            {"epsilon", r.epsilon},
                            {"lambda_m", r.lambda_m},
                            {"trajectory_size", cell.first->trajectory_size},
                            {"runs", cell.runs},
                            {"failures", cell.failures}};
    if (cell.runs > 0) {
      entry["mean_influence"] = cell.influence / cell.runs;
      entry["mean_eval_count"] = cell.eval_count / cell.runs;
      entry["mean_wall_time_ms"] = cell.wall_time_ms / cell.runs;
    }
    out_cells.push_back(std::move(entry));
  }
  return {{"rows", result.rows.size()},
          {"failures", result.failures},
          {"cells", std::move(out_cells)},
          {"failed_runs", std::move(failed)}};
}

std::vector<VerifyOutcome> VerifyRecords(
    const InfluenceInstance& instance, const std::vector<RunRecord>& records) {
  const InstanceIndex index(instance);
  const std::string digest = InstanceDigest(instance);
  std::vector<VerifyOutcome> outcomes;
  for (const RunRecord& record : records) {
    VerifyOutcome outcome;
    outcome.run_id = record.run_id;
    outcome.recorded = record.influence;
    auto& problems = outcome.problems;
    if (record.instance_digest != digest) {
      problems.push_back("instance digest mismatch: record has " +
                         record.instance_digest + ", instance is " + digest);
    }
    if (static_cast<int>(record.selected_slots.size()) != record.k) {
      problems.push_back(
          "budget violation: " + std::to_string(record.selected_slots.size()) +
          " slots selected for k = " + std::to_string(record.k));
    }
    if (static_cast<int>(record.selected_tags.size()) != record.l) {
      problems.push_back(
          "budget violation: " + std::to_string(record.selected_tags.size()) +
          " tags selected for l = " + std::to_string(record.l));
    }
    const Selection selection{record.selected_slots, record.selected_tags};
    const auto id_errors = ValidateSelection(instance, selection);
    problems.insert(problems.end(), id_errors.begin(), id_errors.end());
    if (id_errors.empty()) {
      outcome.recomputed = AggregatedInfluence(index, selection);
      outcome.delta = std::abs(outcome.recomputed - outcome.recorded);
      const double scale =
          std::max(std::abs(outcome.recomputed), std::abs(outcome.recorded));
      if (outcome.delta > kVerifyRelativeTolerance * scale) {
        problems.push_back("influence mismatch: recorded " +
                           FormatDouble(outcome.recorded) + ", recomputed " +
                           FormatDouble(outcome.recomputed) + ", delta " +
                           FormatDouble(outcome.delta));
      }
    }
    outcome.ok = problems.empty();
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

}  // namespace billboard
