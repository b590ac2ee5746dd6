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

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "billboard/errors.h"
#include "billboard/ingest.h"

namespace billboard {

std::vector<std::string> SyntheticSpec::Validate() const {
  std::vector<std::string> errors;
  if (n_users < 1) errors.push_back("n_users must be >= 1");
  if (n_billboards < 1) errors.push_back("n_billboards must be >= 1");
  if (n_tags < 1) errors.push_back("n_tags must be >= 1");
  if (n_tuples < 1) errors.push_back("n_tuples must be >= 1");
  if (!(geo_box.lat_min <= geo_box.lat_max &&
        geo_box.lon_min <= geo_box.lon_max) ||
      !GeoPoint{geo_box.lat_min, geo_box.lon_min}.IsValid() ||
      !GeoPoint{geo_box.lat_max, geo_box.lon_max}.IsValid()) {
    errors.push_back("geo_box is not well-ordered");
  }
  if (!(std::isfinite(tag_skew) && tag_skew > 0.0)) {
    errors.push_back("tag_skew must be positive");
  }
  if (!horizon.IsValid() || horizon.start < 0) {
    errors.push_back("horizon is not well-formed");
  }
  if (max_dwell < 1) errors.push_back("max_dwell must be >= 1");
  return errors;
}

RawDataset GenerateSyntheticData(const SyntheticSpec& spec) {
  if (auto errors = spec.Validate(); !errors.empty()) {
    throw ValidationError("invalid synthetic spec: " + errors.front());
  }
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> lat(spec.geo_box.lat_min,
                                             spec.geo_box.lat_max);
  std::uniform_real_distribution<double> lon(spec.geo_box.lon_min,
                                             spec.geo_box.lon_max);
  RawDataset data;

  std::uniform_real_distribution<double> panel(50.0, 500.0);
  for (int i = 0; i < spec.n_billboards; ++i) {
    Billboard b;
    b.id = i;
    b.name = "B" + std::to_string(i);
    b.loc = {lat(rng), lon(rng)};
    b.panel_size = panel(rng);
    b.cost = std::round(b.panel_size * 0.2 * 100.0) / 100.0;
    data.billboards.push_back(std::move(b));
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> tag_cost(1.0, 10.0);
  for (int i = 0; i < spec.n_tags; ++i) {
    TagRecord t;
    t.id = i;
    t.name = "T" + std::to_string(i);
    t.cost = std::round(tag_cost(rng) * 100.0) / 100.0;
    // 1 - U lies in (0, 1], so weights never vanish entirely.
    t.weight = std::pow(1.0 - unit(rng), spec.tag_skew);
    data.tags.push_back(std::move(t));
  }

  std::uniform_int_distribution<int> group_size(1, 5);
  std::uniform_int_distribution<std::int64_t> start(spec.horizon.start,
                                                    spec.horizon.end);
  std::uniform_int_distribution<std::int64_t> dwell(1, spec.max_dwell);
  std::vector<int> population(spec.n_users);
  for (int i = 0; i < spec.n_users; ++i) population[i] = i;
  std::vector<UserId> dense(spec.n_users, -1);
  auto& db = data.trajectories;
  for (int i = 0; i < spec.n_tuples; ++i) {
    TrajectoryTuple tuple;
    const int size = std::min(group_size(rng), spec.n_users);
    // Partial Fisher-Yates: the first `size` entries become the group.
    for (int j = 0; j < size; ++j) {
      std::uniform_int_distribution<int> pick(j, spec.n_users - 1);
      std::swap(population[j], population[pick(rng)]);
      const int raw = population[j];
      if (dense[raw] < 0) {
        dense[raw] = static_cast<UserId>(db.user_names.size());
        db.user_names.push_back("U" + std::to_string(raw));
      }
      tuple.users.push_back(dense[raw]);
    }
    std::sort(tuple.users.begin(), tuple.users.end());
    tuple.loc = {lat(rng), lon(rng)};
    const std::int64_t s = start(rng);
    tuple.interval = {s, std::min(s + dwell(rng) - 1, spec.horizon.end)};
    db.tuples.push_back(std::move(tuple));
  }
  return data;
}

InfluenceInstance GenerateSynthetic(const SyntheticSpec& spec,
                                    const IngestConfig& config) {
  RawDataset data = GenerateSyntheticData(spec);
  IngestConfig panel = config;
  panel.prob_mode = ProbMode::kSynthetic;
  return AssembleInstance(data.trajectories, data.billboards, data.tags, panel);
}

}  // namespace billboard
