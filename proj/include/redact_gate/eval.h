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

#ifndef REDACT_GATE_EVAL_H_
#define REDACT_GATE_EVAL_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "redact_gate/config.h"
#include "redact_gate/pipeline.h"
#include "redact_gate/types.h"

namespace redact_gate {

inline constexpr std::size_t kPartialLeakMinLength = 4;

// Verbatim occurrence of the annotation text in the outgoing text.
bool LeakExact(std::string_view annotation_text, std::string_view outgoing);

// Some substring of length >= 4 occurs in the outgoing text, and the full
// text does not. Case-sensitive.
bool LeakPartial(std::string_view annotation_text, std::string_view outgoing);

// Share of spans overlapping no annotation by at least one byte. Zero when
// nothing was detected.
double FalsePositiveRate(const std::vector<Span>& spans,
                         const std::vector<Annotation>& annotations);

struct LeakRecord {
  std::string sample_id;
  std::size_t annotation_index = 0;
  SensitivityKind kind = SensitivityKind::kEmail;
  bool exact = false;
  bool partial = false;  // never set together with exact
};

enum class SampleRoute { kLocal, kCloud, kRefused, kFailed };
std::string_view SampleRouteName(SampleRoute route);

struct SampleResult {
  std::string id;
  SampleRoute route = SampleRoute::kCloud;
  std::string outgoing;
  std::vector<LeakRecord> leaks;
  std::size_t detected_spans = 0;
  std::size_t false_positive_spans = 0;
  std::size_t original_words = 0;
  std::size_t outgoing_words = 0;
  std::size_t rollbacks = 0;
  double latency_ms = 0.0;
  std::string error;  // set for kFailed
};

// Runs one sample as a single user message and scores it.
SampleResult EvaluateSample(const Sample& sample, const PipelineConfig& config,
                            const PipelineResources& resources);

struct KindLeak {
  std::size_t annotations = 0;
  std::size_t exact = 0;
  std::size_t partial = 0;
  double exact_rate() const;
  double partial_rate() const;
};

struct Report {
  std::string config_name;
  Workload workload = Workload::kWL1;
  std::size_t samples = 0;
  std::size_t annotations = 0;  // over scored (non-failed) samples
  std::size_t exact_leaks = 0;
  std::size_t partial_leaks = 0;
  double exact_rate = 0.0;
  double partial_rate = 0.0;
  double combined_rate = 0.0;
  std::map<SensitivityKind, KindLeak> per_kind;
  std::size_t detected_spans = 0;
  double false_positive_rate = 0.0;
  std::size_t local = 0;
  std::size_t cloud = 0;
  std::size_t refused = 0;
  std::size_t failed = 0;
  std::size_t rollbacks = 0;
  // Word-count change over cloud-routed samples, in percent.
  double token_delta_pct = 0.0;
  double latency_median_ms = 0.0;
  double latency_p95_ms = 0.0;
};

// Order-independent aggregation of per-sample results.
Report Aggregate(const std::string& config_name, Workload workload,
                 const std::vector<SampleResult>& results);

struct EvalOptions {
  unsigned threads = 1;
};

std::vector<SampleResult> EvaluateSamples(const std::vector<Sample>& samples,
                                          const PipelineConfig& config,
                                          const PipelineResources& resources,
                                          const EvalOptions& options = {});

// One report per workload present in `samples`, in WL1..WL4 order.
std::vector<Report> RunEval(const PipelineConfig& config,
                            const PipelineResources& resources,
                            const std::vector<Sample>& samples,
                            const EvalOptions& options = {});

// Asks the judge model whether `outgoing` still identifies the subject of
// `sample`. nullopt means abstain (unparseable answer or model failure).
std::optional<bool> SemanticLeakJudge(const Sample& sample,
                                      std::string_view outgoing,
                                      const ModelAccess& model,
                                      const Prompts& prompts);
std::optional<bool> ParseJudgeAnswer(std::string_view answer);

struct ReportFormat {
  bool include_timing = true;
};

std::string ReportsToJson(const std::vector<Report>& reports,
                          ReportFormat format = {});
std::string ReportsToCsv(const std::vector<Report>& reports,
                         ReportFormat format = {});

// Format chosen by the extension (.csv, otherwise JSON). Throws
// std::runtime_error when the path cannot be written.
void EmitReport(const std::vector<Report>& reports, const std::string& path,
                ReportFormat format = {});

}  // namespace redact_gate

#endif  // REDACT_GATE_EVAL_H_
