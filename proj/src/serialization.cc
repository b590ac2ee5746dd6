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

#include "billboard/serialization.h"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "billboard/errors.h"

namespace billboard {

using nlohmann::json;

json InstanceToJson(const InfluenceInstance& instance) {
  json doc;
  doc["meta"] = {{"t1", instance.meta.t1},
                 {"t2", instance.meta.t2},
                 {"delta", instance.meta.delta},
                 {"lambda_m", instance.meta.lambda_m},
                 {"default_pair_prob", instance.defaults.default_pair_prob}};
  json slots = json::array();
  for (const Slot& s : instance.slots) {
    json slot = {{"id", s.id},
                 {"billboard_index", s.billboard},
                 {"start", s.window.start},
                 {"end", s.window.end}};
    if (s.billboard >= 0 &&
        s.billboard <
            static_cast<BillboardId>(instance.billboard_names.size())) {
      slot["billboard"] = instance.billboard_names[s.billboard];
    }
    if (static_cast<std::size_t>(s.id) <
        instance.defaults.default_tag_probs.size()) {
      slot["default_tag_prob"] = instance.defaults.default_tag_probs[s.id];
    }
    slots.push_back(std::move(slot));
  }
  doc["slots"] = std::move(slots);
  json tags = json::array();
  for (const TagRecord& t : instance.tags) {
    json tag = {
        {"id", t.id}, {"name", t.name}, {"cost", t.cost}, {"weight", t.weight}};
    if (static_cast<std::size_t>(t.id) <
        instance.defaults.default_slot_probs.size()) {
      tag["default_slot_prob"] = instance.defaults.default_slot_probs[t.id];
    }
    tags.push_back(std::move(tag));
  }
  doc["tags"] = std::move(tags);
  doc["users"] = instance.users;
  json visibility = json::object();
  for (std::size_t s = 0; s < instance.slot_users.size(); ++s) {
    if (!instance.slot_users[s].empty()) {
      visibility[std::to_string(s)] = instance.slot_users[s];
    }
  }
  doc["visibility"] = std::move(visibility);
  json probs = json::array();
  for (const ProbEntry& e : instance.probs) {
    probs.push_back(json::array({e.user, e.slot, e.tag, e.prob}));
  }
  doc["probs"] = std::move(probs);
  return doc;
}

InfluenceInstance InstanceFromJson(const json& doc) {
  InfluenceInstance instance;
  try {
    const json& meta = doc.at("meta");
    instance.meta.t1 = meta.at("t1").get<std::int64_t>();
    instance.meta.t2 = meta.at("t2").get<std::int64_t>();
    instance.meta.delta = meta.at("delta").get<std::int64_t>();
    instance.meta.lambda_m = meta.at("lambda_m").get<double>();
    instance.defaults.default_pair_prob = meta.value("default_pair_prob", 0.0);

    for (const json& slot : doc.at("slots")) {
      Slot s;
      s.id = slot.at("id").get<SlotId>();
      s.billboard = slot.at("billboard_index").get<BillboardId>();
      s.window = {slot.at("start").get<std::int64_t>(),
                  slot.at("end").get<std::int64_t>()};
      if (s.billboard >= 0) {
        if (instance.billboard_names.size() <= std::size_t(s.billboard)) {
          instance.billboard_names.resize(s.billboard + 1);
        }
        if (slot.contains("billboard")) {
          instance.billboard_names[s.billboard] =
              slot["billboard"].get<std::string>();
        }
      }
      instance.defaults.default_tag_probs.push_back(
          slot.value("default_tag_prob", 0.0));
      instance.slots.push_back(s);
    }
    for (const json& tag : doc.at("tags")) {
      TagRecord t;
      t.id = tag.at("id").get<TagId>();
      t.name = tag.value("name", std::to_string(t.id));
      t.cost = tag.value("cost", 0.0);
      t.weight = tag.value("weight", 1.0);
      instance.defaults.default_slot_probs.push_back(
          tag.value("default_slot_prob", 0.0));
      instance.tags.push_back(std::move(t));
    }
    instance.users = doc.at("users").get<std::vector<std::string>>();
    instance.slot_users.assign(instance.slots.size(), {});
    for (const auto& [key, users] : doc.at("visibility").items()) {
      const std::size_t s = std::stoul(key);
      if (s >= instance.slot_users.size()) {
        throw ParseError("<json>", 0, "visibility names unknown slot " + key);
      }
      instance.slot_users[s] = users.get<std::vector<UserId>>();
    }
    for (const json& row : doc.at("probs")) {
      if (!row.is_array() || row.size() != 4) {
        throw ParseError("<json>", 0, "probs rows must be [u, s, c, p]");
      }
      instance.probs.push_back({row[0].get<UserId>(), row[1].get<SlotId>(),
                                row[2].get<TagId>(), row[3].get<double>()});
    }
  } catch (const json::exception& e) {
    throw ParseError("<json>", 0, e.what());
  } catch (const std::logic_error& e) {
    throw ParseError("<json>", 0, e.what());
  }
  instance.RebuildInverseVisibility();
  return instance;
}

std::string SerializeInstance(const InfluenceInstance& instance) {
  return InstanceToJson(instance).dump();
}

void SaveInstance(const std::string& path, const InfluenceInstance& instance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << SerializeInstance(instance) << '\n';
  if (!out) throw Error("failed writing " + path);
}

InfluenceInstance LoadInstance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path, 0, e.what());
  }
  try {
    return InstanceFromJson(doc);
  } catch (const ParseError& e) {
    throw ParseError(path, 0, e.what());
  }
}

std::string Sha256Hex(const std::string& text) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), digest.data(), &length, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    char buf[3];
    std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string InstanceDigest(const InfluenceInstance& instance) {
  return Sha256Hex(SerializeInstance(instance));
}

}  // namespace billboard
