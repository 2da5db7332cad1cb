//
// Copyright 2026 The redact-gate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "redact_gate/workloads.h"

namespace redact_gate {
namespace {

TEST(WorkloadsTest, DefaultCounts) {
  EXPECT_EQ(DefaultSampleCount(Workload::kWL1), 500u);
  EXPECT_EQ(DefaultSampleCount(Workload::kWL2), 300u);
  EXPECT_EQ(DefaultSampleCount(Workload::kWL3), 200u);
  EXPECT_EQ(DefaultSampleCount(Workload::kWL4), 300u);
}

TEST(WorkloadsTest, SamplesAreWellFormed) {
  for (Workload wl : kAllWorkloads) {
    const auto samples = Generate(wl, 42, DefaultSampleCount(wl));
    ASSERT_EQ(samples.size(), DefaultSampleCount(wl));
    std::set<std::string> ids;
    for (const auto& s : samples) {
      EXPECT_TRUE(ids.insert(s.id).second) << s.id;
      EXPECT_EQ(s.workload, wl);
      EXPECT_FALSE(s.annotations.empty()) << s.id;
      EXPECT_NO_THROW(ValidateSample(s));
      for (const auto& a : s.annotations) {
        EXPECT_EQ(s.text.substr(a.start(), a.end() - a.start()), a.text());
      }
    }
  }
}

TEST(WorkloadsTest, KindsPerWorkload) {
  auto kinds_of = [](Workload wl) {
    std::set<SensitivityKind> kinds;
    for (const auto& s : Generate(wl, 42, DefaultSampleCount(wl))) {
      for (const auto& a : s.annotations) kinds.insert(a.kind());
    }
    return kinds;
  };
  const auto wl1 = kinds_of(Workload::kWL1);
  for (auto k : {SensitivityKind::kPerson, SensitivityKind::kEmail, SensitivityKind::kPhone,
                 SensitivityKind::kOrgName, SensitivityKind::kAddress}) {
    EXPECT_TRUE(wl1.count(k)) << KindName(k);
  }
  const auto wl2 = kinds_of(Workload::kWL2);
  for (auto k : {SensitivityKind::kAwsKey, SensitivityKind::kApiKey, SensitivityKind::kPassword,
                 SensitivityKind::kPemMarker, SensitivityKind::kBearerToken}) {
    EXPECT_TRUE(wl2.count(k)) << KindName(k);
  }
  EXPECT_TRUE(kinds_of(Workload::kWL3).count(SensitivityKind::kImplicit));
  const auto wl4 = kinds_of(Workload::kWL4);
  for (auto k : {SensitivityKind::kFunctionName, SensitivityKind::kSchemaName,
                 SensitivityKind::kCodename}) {
    EXPECT_TRUE(wl4.count(k)) << KindName(k);
  }
}

TEST(WorkloadsTest, DeterministicInSeed) {
  const auto a = Generate(Workload::kWL2, 7, 50);
  EXPECT_EQ(a, Generate(Workload::kWL2, 7, 50));
  EXPECT_NE(a, Generate(Workload::kWL2, 8, 50));
  EXPECT_THROW(Generate(Workload::kWL1, 1, 0), std::invalid_argument);
}

TEST(WorkloadsTest, RepeatedValuesExist) {
  std::size_t with_repeat = 0;
  for (const auto& s : Generate(Workload::kWL1, 42, 500)) {
    std::set<std::pair<SensitivityKind, std::string>> seen;
    for (const auto& a : s.annotations) {
      if (!seen.insert({a.kind(), a.text()}).second) {
        ++with_repeat;
        break;
      }
    }
  }
  EXPECT_GT(with_repeat, 20u);
}

TEST(WorkloadsTest, TemplatesRender) {
  for (Workload wl : kAllWorkloads) {
    ASSERT_GE(Templates(wl).size(), 10u);
    Rng rng(3);
    const auto& t = Templates(wl).front();
    const Sample s = RenderTemplate(t, "x-1", rng);
    EXPECT_EQ(s.id, "x-1");
    EXPECT_EQ(s.text.find("[["), std::string::npos);
  }
}

TEST(JsonlTest, RoundTrip) {
  const auto samples = Generate(Workload::kWL4, 9, 25);
  const std::string jsonl = SamplesToJsonl(samples);
  EXPECT_EQ(SamplesFromJsonl(jsonl), samples);
  EXPECT_EQ(std::count(jsonl.begin(), jsonl.end(), '\n'), 25);

  const auto path = std::filesystem::temp_directory_path() / "rg_wl4.jsonl";
  WriteJsonl(samples, path.string());
  EXPECT_EQ(ReadJsonl(path.string()), samples);
  std::filesystem::remove(path);
}

TEST(JsonlTest, RejectsBadLines) {
  const std::string good =
      R"({"id":"a","workload":"WL1","text":"hi Ann","annotations":[{"start":3,"end":6,"kind":"person","text":"Ann"}]})";
  EXPECT_EQ(SamplesFromJsonl(good + "\n\n").size(), 1u);
  auto line_of = [](const std::string& content) -> std::size_t {
    try {
      SamplesFromJsonl(content);
    } catch (const JsonlError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of(good + "\n{bad"), 2u);
  std::string mismatch = good;
  mismatch.replace(mismatch.find("\"Ann\"}"), 5, "\"Bob\"");
  EXPECT_EQ(line_of(mismatch), 1u);
  std::string kind = good;
  kind.replace(kind.find("person"), 6, "humans");
  EXPECT_EQ(line_of(kind), 1u);
  std::string wl = good;
  wl.replace(wl.find("WL1"), 3, "WL9");
  EXPECT_EQ(line_of(wl), 1u);
  std::string empty = good;
  empty.replace(empty.find("\"end\":6"), 7, "\"end\":3");
  EXPECT_EQ(line_of(empty), 1u);
}

}  // namespace
}  // namespace redact_gate
