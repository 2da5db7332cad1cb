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
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "redact_gate/eval.h"
#include "redact_gate/workloads.h"

namespace redact_gate {
namespace {

TEST(LeakTest, Exact) {
  EXPECT_TRUE(LeakExact("ann@x.org", "send to ann@x.org now"));
  EXPECT_FALSE(LeakExact("ann@x.org", "send to ANN@x.org now"));
  EXPECT_FALSE(LeakExact("", "anything"));
}

TEST(LeakTest, PartialNeedsFourBytesAndExcludesExact) {
  EXPECT_TRUE(LeakPartial("Jordan Alvarez", "ask Jordan about it"));
  EXPECT_FALSE(LeakPartial("Jordan Alvarez", "ask Jordan Alvarez"));
  EXPECT_FALSE(LeakPartial("abcdef", "xabcx"));
  EXPECT_TRUE(LeakPartial("abcdef", "xabcdx"));
  EXPECT_FALSE(LeakPartial("abc", "abc"));
}

TEST(FalsePositiveTest, Rate) {
  const std::string text = "Ann met Bob at 10.0.0.1";
  const std::vector<Annotation> ann = {Annotation(text, 0, 3, SensitivityKind::kPerson)};
  const Span hit(text, 0, 3, SensitivityKind::kPerson, 1, DetectorSource::kGazetteer);
  const Span edge(text, 2, 6, SensitivityKind::kPerson, 1, DetectorSource::kGazetteer);
  const Span miss(text, 15, 23, SensitivityKind::kIpAddress, 1, DetectorSource::kRegex);
  EXPECT_DOUBLE_EQ(FalsePositiveRate({}, ann), 0.0);
  EXPECT_DOUBLE_EQ(FalsePositiveRate({hit}, ann), 0.0);
  EXPECT_DOUBLE_EQ(FalsePositiveRate({hit, miss}, ann), 0.5);
  EXPECT_DOUBLE_EQ(FalsePositiveRate({edge}, ann), 0.0);
  EXPECT_DOUBLE_EQ(FalsePositiveRate({miss}, {}), 1.0);
}

SampleResult Result(SampleRoute route, std::vector<std::pair<bool, bool>> leaks,
                    double latency, std::size_t words_in = 10, std::size_t words_out = 10) {
  SampleResult r;
  r.route = route;
  for (auto [exact, partial] : leaks) {
    LeakRecord l;
    l.kind = SensitivityKind::kPerson;
    l.exact = exact;
    l.partial = partial;
    r.leaks.push_back(l);
  }
  r.latency_ms = latency;
  r.original_words = words_in;
  r.outgoing_words = words_out;
  return r;
}

TEST(AggregateTest, CountsAndRates) {
  std::vector<SampleResult> results = {
      Result(SampleRoute::kCloud, {{true, false}, {false, true}}, 1.0, 10, 8),
      Result(SampleRoute::kCloud, {{false, false}, {true, false}}, 4.0, 10, 9),
      Result(SampleRoute::kLocal, {{false, false}}, 2.0, 10, 0),
      Result(SampleRoute::kRefused, {{false, false}}, 3.0),
      Result(SampleRoute::kFailed, {{true, false}}, 100.0),
  };
  const Report r = Aggregate("X", Workload::kWL1, results);
  EXPECT_EQ(r.samples, 5u);
  EXPECT_EQ(r.annotations, 6u);
  EXPECT_EQ(r.exact_leaks, 2u);
  EXPECT_EQ(r.partial_leaks, 1u);
  EXPECT_DOUBLE_EQ(r.exact_rate, 2.0 / 6.0);
  EXPECT_DOUBLE_EQ(r.combined_rate, 3.0 / 6.0);
  EXPECT_EQ(r.cloud, 2u);
  EXPECT_EQ(r.local, 1u);
  EXPECT_EQ(r.refused, 1u);
  EXPECT_EQ(r.failed, 1u);
  EXPECT_DOUBLE_EQ(r.token_delta_pct, -15.0);
  // Latencies 1,2,3,4: midpoint median 2.5, nearest-rank p95 is the 4th.
  EXPECT_DOUBLE_EQ(r.latency_median_ms, 2.5);
  EXPECT_DOUBLE_EQ(r.latency_p95_ms, 4.0);
  EXPECT_EQ(r.per_kind.at(SensitivityKind::kPerson).annotations, 6u);
}

TEST(AggregateTest, EmptyInput) {
  const Report r = Aggregate("X", Workload::kWL2, {});
  EXPECT_EQ(r.samples, 0u);
  EXPECT_DOUBLE_EQ(r.exact_rate, 0.0);
}

TEST(EvalTest, EvaluateSampleRoutesAndLeaks) {
  Sample s;
  s.id = "s1";
  s.text = "mail ann@x.org about Project Nimbus";
  s.annotations = {Annotation(s.text, 5, 14, SensitivityKind::kEmail),
                   Annotation(s.text, 21, 35, SensitivityKind::kCodename)};
  PipelineConfig config;
  const auto resources = LoadResources(config);
  const SampleResult r = EvaluateSample(s, config, resources);
  EXPECT_EQ(r.route, SampleRoute::kCloud);
  ASSERT_EQ(r.leaks.size(), 2u);
  EXPECT_FALSE(r.leaks[0].exact);
  EXPECT_TRUE(r.leaks[1].exact);
  EXPECT_EQ(r.detected_spans, 1u);
  EXPECT_EQ(r.false_positive_spans, 0u);
}

TEST(EvalTest, ThreadCountDoesNotChangeResults) {
  const auto samples = Generate(Workload::kWL1, 3, 60);
  PipelineConfig config;
  config.enable_dp_noise = true;
  const auto resources = LoadResources(config);
  const auto one = EvaluateSamples(samples, config, resources, {1});
  const auto four = EvaluateSamples(samples, config, resources, {4});
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].id, samples[i].id);
    EXPECT_EQ(one[i].outgoing, four[i].outgoing);
    EXPECT_EQ(one[i].leaks.size(), four[i].leaks.size());
  }
}

TEST(EvalTest, RunEvalSplitsByWorkload) {
  auto samples = Generate(Workload::kWL3, 1, 10);
  const auto wl1 = Generate(Workload::kWL1, 1, 5);
  samples.insert(samples.end(), wl1.begin(), wl1.end());
  PipelineConfig config;
  config.name = "cfg";
  const auto reports = RunEval(config, LoadResources(config), samples);
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].workload, Workload::kWL1);
  EXPECT_EQ(reports[0].samples, 5u);
  EXPECT_EQ(reports[1].workload, Workload::kWL3);
  EXPECT_EQ(reports[1].config_name, "cfg");
}

TEST(JudgeTest, ParsesAnswers) {
  EXPECT_EQ(ParseJudgeAnswer("yes"), true);
  EXPECT_EQ(ParseJudgeAnswer(" No.\n"), false);
  EXPECT_EQ(ParseJudgeAnswer("YES!"), true);
  EXPECT_FALSE(ParseJudgeAnswer("yes, clearly").has_value());
  EXPECT_FALSE(ParseJudgeAnswer("maybe").has_value());
  EXPECT_FALSE(ParseJudgeAnswer("").has_value());
}

TEST(JudgeTest, AsksModelOrAbstains) {
  Sample s;
  s.text = "the CFO of Acme";
  MockScript script;
  script.WhenContains("REWRITTEN:\nthe finance chief of Acme", "yes").Always("unsure");
  MockChatClient client(script);
  const ModelAccess access{&client};
  EXPECT_EQ(SemanticLeakJudge(s, "the finance chief of Acme", access, DefaultPrompts()), true);
  EXPECT_FALSE(SemanticLeakJudge(s, "a person", access, DefaultPrompts()).has_value());
  EXPECT_FALSE(SemanticLeakJudge(s, "x", ModelAccess{}, DefaultPrompts()).has_value());
  EXPECT_EQ(client.calls()[0].messages[0].content, DefaultPrompts().judge);
}

Report SampleReport() {
  Report r;
  r.config_name = "B";
  r.workload = Workload::kWL2;
  r.samples = 3;
  r.annotations = 4;
  r.exact_leaks = 1;
  r.exact_rate = 0.25;
  r.combined_rate = 0.25;
  r.cloud = 3;
  r.token_delta_pct = -12.34567;
  r.latency_median_ms = 1.23456;
  r.latency_p95_ms = 2.0;
  r.per_kind[SensitivityKind::kPassword] = {4, 1, 0};
  return r;
}

TEST(ReportTest, CsvLayout) {
  const std::string csv = ReportsToCsv({SampleReport()});
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header.rfind("config,workload,samples,annotations,exact_rate,", 0), 0u);
  EXPECT_NE(header.find(",latency_median_ms,latency_p95_ms,exact_email"), std::string::npos);
  EXPECT_EQ(row.rfind("B,WL2,3,4,0.250,0.000,0.250,0.000,0,3,0,0,0,-12.346,1.235,2.000,", 0), 0u);
  EXPECT_NE(row.find("0.250"), std::string::npos);

  const std::string no_timing = ReportsToCsv({SampleReport()}, {false});
  EXPECT_EQ(no_timing.find("latency"), std::string::npos);
  EXPECT_EQ(no_timing.find("1.235"), std::string::npos);
  const std::string empty = ReportsToCsv({});
  EXPECT_EQ(std::count(empty.begin(), empty.end(), '\n'), 1);
}

TEST(ReportTest, JsonLayout) {
  const auto j = nlohmann::json::parse(ReportsToJson({SampleReport()}));
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["config"], "B");
  EXPECT_EQ(j[0]["workload"], "WL2");
  EXPECT_DOUBLE_EQ(j[0]["token_delta_pct"].get<double>(), -12.346);
  EXPECT_DOUBLE_EQ(j[0]["per_kind"]["password"]["exact_rate"].get<double>(), 0.25);
  EXPECT_TRUE(j[0].contains("latency_p95_ms"));
  const auto nt = nlohmann::json::parse(ReportsToJson({SampleReport()}, {false}));
  EXPECT_FALSE(nt[0].contains("latency_p95_ms"));
}

TEST(ReportTest, EmitChoosesFormatByExtension) {
  const auto dir = std::filesystem::temp_directory_path() / "rg_report_test";
  std::filesystem::create_directories(dir);
  EmitReport({SampleReport()}, (dir / "r.csv").string());
  EmitReport({SampleReport()}, (dir / "r.json").string());
  std::ifstream csv(dir / "r.csv"), js(dir / "r.json");
  std::string first_csv, first_json;
  std::getline(csv, first_csv);
  std::getline(js, first_json);
  EXPECT_EQ(first_csv.rfind("config,", 0), 0u);
  EXPECT_EQ(first_json, "[");
  EXPECT_THROW(EmitReport({}, (dir / "missing" / "r.json").string()), std::runtime_error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace redact_gate
