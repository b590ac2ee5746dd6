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

#include "billboard/ingest.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <string_view>
#include <unordered_map>
#include <utility>

#include "billboard/errors.h"

namespace billboard {
namespace {

constexpr std::string_view kTrajectoryHeader = "user_ids,lat,lon,t_start,t_end";
constexpr std::string_view kBillboardHeader =
    "billboard_id,lat,lon,panel_size,cost";
constexpr std::string_view kTagHeader = "tag_id,cost";
constexpr std::string_view kTagHeaderWeighted = "tag_id,cost,weight";
constexpr std::string_view kProbHeader = "user_id,billboard_id,tag_id,prob";

double Radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

std::vector<std::string_view> Split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Line-oriented CSV reader: checks the header and hands out split rows with
// their 1-based line numbers. Blank lines are skipped.
class CsvReader {
 public:
  CsvReader(const std::string& path,
            std::initializer_list<std::string_view> headers)
      : path_(path), in_(path) {
    if (!in_) throw ParseError(path_, 0, "cannot open file");
    std::string header;
    if (!std::getline(in_, header))
      throw ParseError(path_, 1, "missing header");
    line_ = 1;
    header_ = std::string(Trim(header));
    if (!header_.empty() &&
        header_.compare(0, 3, "\xEF\xBB\xBF") == 0) {  // UTF-8 BOM
      header_.erase(0, 3);
    }
    if (std::find(headers.begin(), headers.end(), header_) == headers.end()) {
      throw ParseError(path_, 1,
                       "unexpected header '" + header_ + "', expected '" +
                           std::string(*headers.begin()) + "'");
    }
  }

  const std::string& header() const { return header_; }
  std::int64_t line() const { return line_; }

  // Returns false at end of file.
  bool Next(std::vector<std::string_view>& fields) {
    while (std::getline(in_, buffer_)) {
      ++line_;
      const std::string_view trimmed = Trim(buffer_);
      if (trimmed.empty()) continue;
      fields = Split(trimmed, ',');
      for (auto& f : fields) f = Trim(f);
      return true;
    }
    return false;
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw ParseError(path_, line_, what);
  }

  void ExpectFields(const std::vector<std::string_view>& fields,
                    std::size_t n) const {
    if (fields.size() != n) {
      Fail("expected " + std::to_string(n) + " fields, got " +
           std::to_string(fields.size()));
    }
  }

  double Double(std::string_view field, const char* name) const {
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size() ||
        !std::isfinite(value)) {
      Fail(std::string("bad ") + name + " '" + std::string(field) + "'");
    }
    return value;
  }

  std::int64_t Int(std::string_view field, const char* name) const {
    std::int64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      Fail(std::string("bad ") + name + " '" + std::string(field) + "'");
    }
    return value;
  }

  GeoPoint Point(std::string_view lat, std::string_view lon) const {
    GeoPoint p{Double(lat, "lat"), Double(lon, "lon")};
    if (!p.IsValid()) Fail("coordinates out of range");
    return p;
  }

 private:
  std::string path_;
  std::ifstream in_;
  std::string header_;
  std::string buffer_;
  std::int64_t line_ = 0;
};

std::ofstream OpenForWrite(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  return out;
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

double HaversineMeters(const GeoPoint& a, const GeoPoint& b) {
  const double dlat = Radians(b.lat - a.lat);
  const double dlon = Radians(b.lon - a.lon);
  const double sin_lat = std::sin(dlat / 2.0);
  const double sin_lon = std::sin(dlon / 2.0);
  const double h = sin_lat * sin_lat + std::cos(Radians(a.lat)) *
                                           std::cos(Radians(b.lat)) * sin_lon *
                                           sin_lon;
  return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

TrajectoryDatabase TrajectoryDatabase::Prefix(std::size_t count) const {
  TrajectoryDatabase out;
  count = std::min(count, tuples.size());
  std::vector<UserId> remap(user_names.size(), -1);
  for (std::size_t i = 0; i < count; ++i) {
    TrajectoryTuple tuple = tuples[i];
    for (UserId& u : tuple.users) {
      if (remap[u] < 0) {
        remap[u] = static_cast<UserId>(out.user_names.size());
        out.user_names.push_back(user_names[u]);
      }
      u = remap[u];
    }
    out.tuples.push_back(std::move(tuple));
  }
  return out;
}

TrajectoryDatabase LoadTrajectories(const std::string& path) {
  CsvReader reader(path, {kTrajectoryHeader});
  TrajectoryDatabase db;
  std::unordered_map<std::string, UserId> ids;
  std::vector<std::string_view> fields;
  while (reader.Next(fields)) {
    reader.ExpectFields(fields, 5);
    TrajectoryTuple tuple;
    for (std::string_view name : Split(fields[0], ';')) {
      name = Trim(name);
      if (name.empty()) continue;
      auto [it, inserted] =
          ids.emplace(std::string(name), static_cast<UserId>(ids.size()));
      if (inserted) db.user_names.emplace_back(name);
      tuple.users.push_back(it->second);
    }
    if (tuple.users.empty()) reader.Fail("empty user list");
    std::sort(tuple.users.begin(), tuple.users.end());
    tuple.users.erase(std::unique(tuple.users.begin(), tuple.users.end()),
                      tuple.users.end());
    tuple.loc = reader.Point(fields[1], fields[2]);
    tuple.interval = {reader.Int(fields[3], "t_start"),
                      reader.Int(fields[4], "t_end")};
    if (!tuple.interval.IsValid()) reader.Fail("t_start > t_end");
    db.tuples.push_back(std::move(tuple));
  }
  return db;
}

std::vector<Billboard> LoadBillboards(const std::string& path) {
  CsvReader reader(path, {kBillboardHeader});
  std::vector<Billboard> billboards;
  std::unordered_map<std::string, BillboardId> ids;
  std::vector<std::string_view> fields;
  while (reader.Next(fields)) {
    reader.ExpectFields(fields, 5);
    Billboard b;
    b.id = static_cast<BillboardId>(billboards.size());
    b.name = std::string(fields[0]);
    if (b.name.empty()) reader.Fail("empty billboard_id");
    if (!ids.emplace(b.name, b.id).second) {
      reader.Fail("duplicate billboard_id '" + b.name + "'");
    }
    b.loc = reader.Point(fields[1], fields[2]);
    b.panel_size = reader.Double(fields[3], "panel_size");
    if (b.panel_size <= 0.0) reader.Fail("panel_size must be positive");
    b.cost = reader.Double(fields[4], "cost");
    if (b.cost < 0.0) reader.Fail("cost must be non-negative");
    billboards.push_back(std::move(b));
  }
  return billboards;
}

std::vector<TagRecord> LoadTags(const std::string& path) {
  CsvReader reader(path, {kTagHeader, kTagHeaderWeighted});
  const bool weighted = reader.header() == kTagHeaderWeighted;
  std::vector<TagRecord> tags;
  std::unordered_map<std::string, TagId> ids;
  std::vector<std::string_view> fields;
  while (reader.Next(fields)) {
    // A weighted file may leave the weight empty on individual rows.
    if (weighted && fields.size() == 2) fields.emplace_back();
    reader.ExpectFields(fields, weighted ? 3 : 2);
    TagRecord tag;
    tag.id = static_cast<TagId>(tags.size());
    tag.name = std::string(fields[0]);
    if (tag.name.empty()) reader.Fail("empty tag_id");
    if (!ids.emplace(tag.name, tag.id).second) {
      reader.Fail("duplicate tag_id '" + tag.name + "'");
    }
    tag.cost = reader.Double(fields[1], "cost");
    if (tag.cost < 0.0) reader.Fail("cost must be non-negative");
    if (weighted && !fields[2].empty()) {
      tag.weight = reader.Double(fields[2], "weight");
      if (tag.weight < 0.0) reader.Fail("weight must be non-negative");
    }
    tags.push_back(std::move(tag));
  }
  return tags;
}

std::vector<ExplicitProbRow> LoadExplicitProbs(const std::string& path) {
  CsvReader reader(path, {kProbHeader});
  std::vector<ExplicitProbRow> rows;
  std::vector<std::string_view> fields;
  while (reader.Next(fields)) {
    reader.ExpectFields(fields, 4);
    ExplicitProbRow row{std::string(fields[0]), std::string(fields[1]),
                        std::string(fields[2]),
                        reader.Double(fields[3], "prob")};
    if (row.prob < 0.0 || row.prob > 1.0) {
      reader.Fail("prob outside [0,1]");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void WriteTrajectories(const std::string& path, const TrajectoryDatabase& db) {
  auto out = OpenForWrite(path);
  out << kTrajectoryHeader << '\n';
  for (const TrajectoryTuple& t : db.tuples) {
    for (std::size_t i = 0; i < t.users.size(); ++i) {
      if (i > 0) out << ';';
      out << db.user_names[t.users[i]];
    }
    out << ',' << FormatDouble(t.loc.lat) << ',' << FormatDouble(t.loc.lon)
        << ',' << t.interval.start << ',' << t.interval.end << '\n';
  }
}

void WriteBillboards(const std::string& path,
                     std::span<const Billboard> billboards) {
  auto out = OpenForWrite(path);
  out << kBillboardHeader << '\n';
  for (const Billboard& b : billboards) {
    out << b.name << ',' << FormatDouble(b.loc.lat) << ','
        << FormatDouble(b.loc.lon) << ',' << FormatDouble(b.panel_size) << ','
        << FormatDouble(b.cost) << '\n';
  }
}

void WriteTags(const std::string& path, std::span<const TagRecord> tags) {
  auto out = OpenForWrite(path);
  out << kTagHeaderWeighted << '\n';
  for (const TagRecord& t : tags) {
    out << t.name << ',' << FormatDouble(t.cost) << ','
        << FormatDouble(t.weight) << '\n';
  }
}

void WriteExplicitProbs(const std::string& path,
                        std::span<const ExplicitProbRow> rows) {
  auto out = OpenForWrite(path);
  out << kProbHeader << '\n';
  for (const ExplicitProbRow& r : rows) {
    out << r.user << ',' << r.billboard << ',' << r.tag << ','
        << FormatDouble(r.prob) << '\n';
  }
}

std::vector<Slot> EnumerateSlots(std::span<const Billboard> billboards,
                                 const TimeInterval& horizon,
                                 std::int64_t delta) {
  if (delta < 1) throw ValidationError("slot duration must be >= 1");
  if (!horizon.IsValid()) throw ValidationError("horizon start > end");
  const std::int64_t windows = horizon.Length() / delta;
  std::vector<Slot> slots;
  slots.reserve(billboards.size() * static_cast<std::size_t>(windows));
  for (const Billboard& b : billboards) {
    for (std::int64_t w = 0; w < windows; ++w) {
      const std::int64_t start = horizon.start + w * delta;
      slots.push_back(Slot{static_cast<SlotId>(slots.size()), b.id,
                           TimeInterval{start, start + delta - 1}});
    }
  }
  return slots;
}

VisibilityIndex BuildVisibility(const TrajectoryDatabase& db,
                                std::span<const Slot> slots,
                                std::span<const Billboard> billboards,
                                double lambda_m) {
  // Slots of each billboard, ordered by window start.
  std::vector<std::vector<SlotId>> by_billboard(billboards.size());
  for (const Slot& s : slots) by_billboard.at(s.billboard).push_back(s.id);
  for (auto& list : by_billboard) {
    std::sort(list.begin(), list.end(), [&slots](SlotId a, SlotId b) {
      return slots[a].window.start < slots[b].window.start;
    });
  }
  // Latitude band (degrees) outside which nothing can be within lambda.
  const double lat_band = lambda_m / kEarthRadiusM * 180.0 / std::numbers::pi;

  std::vector<std::pair<SlotId, UserId>> pairs;
  for (const TrajectoryTuple& tuple : db.tuples) {
    for (const Billboard& b : billboards) {
      if (std::abs(b.loc.lat - tuple.loc.lat) > lat_band) continue;
      if (HaversineMeters(tuple.loc, b.loc) > lambda_m) continue;
      const auto& list = by_billboard[b.id];
      auto it = std::lower_bound(list.begin(), list.end(), tuple.interval.start,
                                 [&slots](SlotId s, std::int64_t t) {
                                   return slots[s].window.end < t;
                                 });
      for (; it != list.end() && slots[*it].window.start <= tuple.interval.end;
           ++it) {
        if (!slots[*it].window.Overlaps(tuple.interval)) continue;
        for (UserId u : tuple.users) pairs.emplace_back(*it, u);
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  VisibilityIndex index;
  index.slot_users.resize(slots.size());
  index.user_slots.resize(db.user_names.size());
  for (const auto& [s, u] : pairs) {
    index.slot_users[s].push_back(u);
    index.user_slots[u].push_back(s);
  }
  return index;
}

std::vector<double> DeriveBaseProbabilities(
    std::span<const Billboard> billboards) {
  if (billboards.empty()) throw ValidationError("no billboards");
  double max_size = 0.0;
  for (const Billboard& b : billboards) {
    if (!(b.panel_size > 0.0)) {
      throw ValidationError("billboard '" + b.name +
                            "' has non-positive panel size");
    }
    max_size = std::max(max_size, b.panel_size);
  }
  std::vector<double> base;
  base.reserve(billboards.size());
  for (const Billboard& b : billboards) base.push_back(b.panel_size / max_size);
  return base;
}

InfluenceInstance AssembleInstance(const TrajectoryDatabase& db,
                                   std::span<const Billboard> billboards,
                                   std::span<const TagRecord> tags,
                                   const IngestConfig& config,
                                   std::span<const ExplicitProbRow> rows) {
  if (!(config.lambda_m > 0.0)) throw ValidationError("lambda must be > 0");
  for (std::size_t i = 0; i < billboards.size(); ++i) {
    if (billboards[i].id != static_cast<BillboardId>(i)) {
      throw ValidationError("billboard ids must be dense");
    }
  }
  const std::vector<double> base = DeriveBaseProbabilities(billboards);
  const double mean_base =
      std::accumulate(base.begin(), base.end(), 0.0) / base.size();

  InfluenceInstance instance;
  instance.meta = {config.horizon.start, config.horizon.end,
                   config.slot_duration, config.lambda_m};
  instance.slots =
      EnumerateSlots(billboards, config.horizon, config.slot_duration);
  instance.tags.assign(tags.begin(), tags.end());
  for (std::size_t i = 0; i < instance.tags.size(); ++i) {
    instance.tags[i].id = static_cast<TagId>(i);
  }
  instance.users = db.user_names;
  for (const Billboard& b : billboards)
    instance.billboard_names.push_back(b.name);

  VisibilityIndex vis =
      BuildVisibility(db, instance.slots, billboards, config.lambda_m);
  instance.slot_users = std::move(vis.slot_users);
  instance.user_slots = std::move(vis.user_slots);

  auto& defaults = instance.defaults;
  for (const Slot& s : instance.slots) {
    defaults.default_tag_probs.push_back(
        config.default_tag_prob.value_or(base[s.billboard]));
  }
  for (const TagRecord& t : instance.tags) {
    defaults.default_slot_probs.push_back(
        config.default_slot_prob.value_or(std::min(1.0, mean_base * t.weight)));
  }
  defaults.default_pair_prob = config.default_pair_prob.value_or(mean_base);

  if (config.prob_mode == ProbMode::kExplicitFile) {
    std::unordered_map<std::string, UserId> user_ids;
    for (std::size_t i = 0; i < instance.users.size(); ++i) {
      user_ids.emplace(instance.users[i], static_cast<UserId>(i));
    }
    std::unordered_map<std::string, BillboardId> billboard_ids;
    for (const Billboard& b : billboards) billboard_ids.emplace(b.name, b.id);
    std::unordered_map<std::string, TagId> tag_ids;
    for (const TagRecord& t : instance.tags) tag_ids.emplace(t.name, t.id);

    for (const ExplicitProbRow& row : rows) {
      const auto u = user_ids.find(row.user);
      const auto b = billboard_ids.find(row.billboard);
      const auto c = tag_ids.find(row.tag);
      const std::string where = " in probability row (" + row.user + "," +
                                row.billboard + "," + row.tag + ")";
      if (u == user_ids.end()) throw ValidationError("unknown user" + where);
      if (b == billboard_ids.end()) {
        throw ValidationError("unknown billboard" + where);
      }
      if (c == tag_ids.end()) throw ValidationError("unknown tag" + where);
      if (!(row.prob >= 0.0 && row.prob <= 1.0)) {
        throw ValidationError("probability outside [0,1]" + where);
      }
      bool applied = false;
      for (SlotId s : instance.user_slots[u->second]) {
        if (instance.slots[s].billboard != b->second) continue;
        instance.probs.push_back({u->second, s, c->second, row.prob});
        applied = true;
      }
      if (!applied) {
        throw ValidationError("user never sees the billboard" + where);
      }
    }
  } else {
    for (const Slot& s : instance.slots) {
      for (UserId u : instance.slot_users[s.id]) {
        for (const TagRecord& t : instance.tags) {
          const double p = base[s.billboard] * t.weight;
          if (p > 1.0) {
            throw ValidationError("tag '" + t.name + "' weight " +
                                  std::to_string(t.weight) +
                                  " yields a probability above 1");
          }
          instance.probs.push_back({u, s.id, t.id, p});
        }
      }
    }
  }
  instance.CanonicalizeProbs();

  if (auto violations = ValidateInstance(instance); !violations.empty()) {
    throw ValidationError("assembled instance is invalid: " +
                          violations.front());
  }
  return instance;
}

}  // namespace billboard
