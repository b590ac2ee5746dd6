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

// Loading trajectory / billboard / tag data, slot enumeration, the
// lambda-visibility index, and instance assembly.
//
// CSV schemas (UTF-8, one header row):
//   trajectories  user_ids,lat,lon,t_start,t_end   (user_ids ';'-separated)
//   billboards    billboard_id,lat,lon,panel_size,cost
//   tags          tag_id,cost[,weight]
//   probabilities user_id,billboard_id,tag_id,prob

#ifndef BILLBOARD_INGEST_H_
#define BILLBOARD_INGEST_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "billboard/domain.h"

namespace billboard {

// Mean Earth radius used by every distance computation.
inline constexpr double kEarthRadiusM = 6371000.0;

// Shortest text that reads back to the same double.
std::string FormatDouble(double value);

// Great-circle distance in meters.
double HaversineMeters(const GeoPoint& a, const GeoPoint& b);

struct TrajectoryDatabase {
  std::vector<TrajectoryTuple> tuples;
  std::vector<std::string> user_names;  // UserId -> original id

  // Keeps the first `count` tuples and drops users that no longer appear.
  TrajectoryDatabase Prefix(std::size_t count) const;
};

// One row of the explicit probability file, still keyed by original ids.
struct ExplicitProbRow {
  std::string user;
  std::string billboard;
  std::string tag;
  double prob = 0.0;
};

TrajectoryDatabase LoadTrajectories(const std::string& path);
std::vector<Billboard> LoadBillboards(const std::string& path);
std::vector<TagRecord> LoadTags(const std::string& path);
std::vector<ExplicitProbRow> LoadExplicitProbs(const std::string& path);

void WriteTrajectories(const std::string& path, const TrajectoryDatabase& db);
void WriteBillboards(const std::string& path,
                     std::span<const Billboard> billboards);
void WriteTags(const std::string& path, std::span<const TagRecord> tags);
void WriteExplicitProbs(const std::string& path,
                        std::span<const ExplicitProbRow> rows);

// One slot per (billboard, window), billboard-major. Windows start at
// T1, T1 + delta, ... and a trailing partial window is dropped, so the count
// is m * floor((T2 - T1 + 1) / delta).
std::vector<Slot> EnumerateSlots(std::span<const Billboard> billboards,
                                 const TimeInterval& horizon,
                                 std::int64_t delta);

struct VisibilityIndex {
  std::vector<std::vector<UserId>> slot_users;  // sorted, unique
  std::vector<std::vector<SlotId>> user_slots;  // sorted, unique
};

// u sees s iff some tuple containing u lies within `lambda_m` meters of the
// slot's billboard and shares at least one time unit with the slot window.
VisibilityIndex BuildVisibility(const TrajectoryDatabase& db,
                                std::span<const Slot> slots,
                                std::span<const Billboard> billboards,
                                double lambda_m);

// panel_size / max panel_size, per billboard. Throws ValidationError on an
// empty list or a non-positive size.
std::vector<double> DeriveBaseProbabilities(
    std::span<const Billboard> billboards);

enum class ProbMode { kPanelSizeBase, kExplicitFile, kSynthetic };

struct IngestConfig {
  TimeInterval horizon{0, 99};
  std::int64_t slot_duration = 10;
  double lambda_m = 100.0;
  ProbMode prob_mode = ProbMode::kPanelSizeBase;
  // Overrides for the virtual default elements. When unset:
  //   Pr(u, s | h') = base(billboard(s))
  //   Pr(u, s' | c) = mean_b base(b) * weight(c), capped to 1
  //   Pr(u, s' | h') = mean_b base(b)
  std::optional<double> default_tag_prob;
  std::optional<double> default_slot_prob;
  std::optional<double> default_pair_prob;
};

// Builds a validated InfluenceInstance.
//
// kPanelSizeBase / kSynthetic: Pr(u, s | c) = base(billboard(s)) * weight(c)
// for every visible pair. kExplicitFile: each row is applied to every slot of
// its billboard that the user sees; rows naming unknown ids or a billboard
// the user never sees are rejected.
InfluenceInstance AssembleInstance(
    const TrajectoryDatabase& db, std::span<const Billboard> billboards,
    std::span<const TagRecord> tags, const IngestConfig& config,
    std::span<const ExplicitProbRow> explicit_rows = {});

struct GeoBox {
  double lat_min = 40.700;
  double lat_max = 40.720;
  double lon_min = -74.010;
  double lon_max = -73.990;
};

struct SyntheticSpec {
  int n_users = 100;
  int n_billboards = 10;
  int n_tags = 5;
  int n_tuples = 500;
  std::uint64_t seed = 1;
  GeoBox geo_box;
  // Tag weights are u^tag_skew for u ~ U(0, 1]; larger skew leaves a few
  // dominant tags.
  double tag_skew = 2.0;
  // Tuple intervals: uniform start in the horizon, length in [1, max_dwell].
  TimeInterval horizon{0, 99};
  std::int64_t max_dwell = 20;

  // Empty iff valid.
  std::vector<std::string> Validate() const;
};

struct RawDataset {
  TrajectoryDatabase trajectories;
  std::vector<Billboard> billboards;
  std::vector<TagRecord> tags;
};

// Deterministic for a fixed seed. Throws ValidationError on an invalid spec.
RawDataset GenerateSyntheticData(const SyntheticSpec& spec);

// GenerateSyntheticData followed by AssembleInstance in panel-size mode.
InfluenceInstance GenerateSynthetic(const SyntheticSpec& spec,
                                    const IngestConfig& config);

}  // namespace billboard

#endif  // BILLBOARD_INGEST_H_
