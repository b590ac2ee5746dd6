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

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "billboard/errors.h"
#include "billboard/influence.h"
#include "billboard/ingest.h"
#include "billboard/instance_index.h"
#include "testing/oracles.h"

namespace billboard {
namespace {

const std::string kData = BILLBOARD_TEST_DATA;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::string TempPath(const std::string& name) {
  return ::testing::TempDir() + name;
}

InfluenceInstance GoldenAssembly(bool explicit_probs) {
  IngestConfig config;
  config.horizon = {0, 19};
  config.slot_duration = 10;
  config.lambda_m = 100;
  std::vector<ExplicitProbRow> rows;
  if (explicit_probs) {
    config.prob_mode = ProbMode::kExplicitFile;
    rows = LoadExplicitProbs(kData + "/probs.csv");
  }
  return AssembleInstance(LoadTrajectories(kData + "/trajectories.csv"),
                          LoadBillboards(kData + "/billboards.csv"),
                          LoadTags(kData + "/tags.csv"), config, rows);
}

TEST(GoldenCsvTest, TrajectoriesRoundTrip) {
  const std::string path = TempPath("golden_traj.csv");
  WriteTrajectories(path, LoadTrajectories(kData + "/trajectories.csv"));
  EXPECT_EQ(ReadFile(path), ReadFile(kData + "/trajectories.csv"));
}

TEST(GoldenCsvTest, BillboardsRoundTrip) {
  const std::string path = TempPath("golden_bb.csv");
  WriteBillboards(path, LoadBillboards(kData + "/billboards.csv"));
  EXPECT_EQ(ReadFile(path), ReadFile(kData + "/billboards.csv"));
}

TEST(GoldenCsvTest, TagsRoundTrip) {
  const std::string path = TempPath("golden_tags.csv");
  WriteTags(path, LoadTags(kData + "/tags.csv"));
  EXPECT_EQ(ReadFile(path), ReadFile(kData + "/tags.csv"));
}

TEST(GoldenCsvTest, ProbsRoundTrip) {
  const std::string path = TempPath("golden_probs.csv");
  WriteExplicitProbs(path, LoadExplicitProbs(kData + "/probs.csv"));
  EXPECT_EQ(ReadFile(path), ReadFile(kData + "/probs.csv"));
}

TEST(GoldenInstanceTest, PanelModeMatchesGoldenBytes) {
  const std::string path = TempPath("golden_instance.json");
  SaveInstance(path, GoldenAssembly(false));
  EXPECT_EQ(ReadFile(path), ReadFile(kData + "/instance.json"));
}

TEST(GoldenInstanceTest, ExplicitModeMatchesGoldenBytes) {
  const std::string path = TempPath("golden_instance_explicit.json");
  SaveInstance(path, GoldenAssembly(true));
  EXPECT_EQ(ReadFile(path), ReadFile(kData + "/instance_explicit.json"));
}

TEST(GoldenInstanceTest, LoadThenSaveIsIdentity) {
  for (const char* name : {"/instance.json", "/instance_explicit.json"}) {
    const std::string path = TempPath("golden_resave.json");
    SaveInstance(path, LoadInstance(kData + name));
    EXPECT_EQ(ReadFile(path), ReadFile(kData + name)) << name;
  }
}

TEST(GoldenInstanceTest, FieldNames) {
  const auto doc = nlohmann::json::parse(ReadFile(kData + "/instance.json"));
  for (const char* key :
       {"meta", "slots", "tags", "users", "visibility", "probs"}) {
    EXPECT_TRUE(doc.contains(key)) << key;
  }
  for (const char* key : {"t1", "t2", "delta", "lambda_m"}) {
    EXPECT_TRUE(doc["meta"].contains(key)) << key;
  }
  EXPECT_EQ(doc["visibility"]["0"], (nlohmann::json{0, 1}));
  EXPECT_EQ(doc["probs"][0], (nlohmann::json{0, 0, 0, 0.8}));
}

TEST(RoundTripTest, ValidationAndInfluencePreserved) {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const InfluenceInstance original = testing::RandomInstance(
        {.n_slots = 10, .n_tags = 4, .n_users = 15, .seed = seed});
    const std::string path = TempPath("roundtrip.json");
    SaveInstance(path, original);
    const InfluenceInstance loaded = LoadInstance(path);
    EXPECT_EQ(ValidateInstance(loaded), ValidateInstance(original));
    EXPECT_EQ(SerializeInstance(loaded), SerializeInstance(original));
    EXPECT_EQ(InstanceDigest(loaded), InstanceDigest(original));
    const InstanceIndex a(original);
    const InstanceIndex b(loaded);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<SlotId> slots;
      std::vector<TagId> tags;
      for (SlotId s = 0; s < 10; ++s) {
        if (rng() % 2) slots.push_back(s);
      }
      for (TagId c = 0; c < 4; ++c) {
        if (rng() % 2) tags.push_back(c);
      }
      EXPECT_EQ(AggregatedInfluence(a, slots, tags),
                AggregatedInfluence(b, slots, tags));
    }
  }
}

TEST(RoundTripTest, InvalidInstanceKeepsItsViolations) {
  InfluenceInstance inst = testing::RandomInstance({.seed = 5});
  inst.probs.front().prob = 1.5;
  const std::string path = TempPath("invalid.json");
  SaveInstance(path, inst);
  EXPECT_EQ(ValidateInstance(LoadInstance(path)), ValidateInstance(inst));
}

TEST(LoadInstanceTest, MalformedDocuments) {
  const std::string path = TempPath("bad.json");
  std::ofstream(path) << "{not json";
  EXPECT_THROW(LoadInstance(path), ParseError);
  std::ofstream(path) << R"({"meta": {"t1": 0}})";
  EXPECT_THROW(LoadInstance(path), ParseError);
  EXPECT_THROW(LoadInstance(TempPath("missing.json")), ParseError);
}

TEST(DigestTest, KnownVectorAndSensitivity) {
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  InfluenceInstance inst = testing::RandomInstance({.seed = 2});
  const std::string before = InstanceDigest(inst);
  inst.probs.back().prob *= 0.5;
  EXPECT_NE(InstanceDigest(inst), before);
}

}  // namespace
}  // namespace billboard
