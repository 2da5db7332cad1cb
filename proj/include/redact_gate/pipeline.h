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

#ifndef REDACT_GATE_PIPELINE_H_
#define REDACT_GATE_PIPELINE_H_

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "redact_gate/config.h"
#include "redact_gate/detect.h"
#include "redact_gate/model_client.h"
#include "redact_gate/redact.h"
#include "redact_gate/transforms.h"

namespace redact_gate {

// Read-only components shared by concurrent requests.
struct PipelineResources {
  std::shared_ptr<const RuleSet> rules;
  std::shared_ptr<const Gazetteer> gazetteer;
  std::shared_ptr<const Lexicon> lexicon;
  std::shared_ptr<const Prompts> prompts;
  std::shared_ptr<ChatClient> client;  // may be null
};

// Loads every resource named by `config`, falling back to the shipped data
// directory. The gazetteer comes from `gazetteer_path` when set, otherwise
// from the identity corpus at `gazetteer_coverage`.
PipelineResources LoadResources(const PipelineConfig& config);

struct StageRecord {
  int stage = 0;
  std::string name;
  bool enabled = false;
  bool applied = false;
  std::chrono::nanoseconds duration{0};
  std::string detail;
};

struct LocalAnswer {
  // nullopt when only the routing decision was recorded.
  std::optional<std::string> answer;
};

struct CloudRequest {
  std::vector<ChatMessage> messages;
  ReverseMap map;
  std::string target = "cloud";
};

struct Refusal {
  std::string reason;
};

class PipelineOutcome {
 public:
  using Variant = std::variant<LocalAnswer, CloudRequest, Refusal>;

  bool is_local() const { return std::holds_alternative<LocalAnswer>(value); }
  bool is_cloud() const { return std::holds_alternative<CloudRequest>(value); }
  bool is_refused() const { return std::holds_alternative<Refusal>(value); }

  const LocalAnswer& local() const { return std::get<LocalAnswer>(value); }
  const CloudRequest& cloud() const { return std::get<CloudRequest>(value); }
  CloudRequest& cloud() { return std::get<CloudRequest>(value); }
  const Refusal& refusal() const { return std::get<Refusal>(value); }

  // Concatenated cloud-bound message bodies; empty for Local and Refused.
  std::string OutgoingText() const;

  Variant value = LocalAnswer{};
  std::vector<StageRecord> trace;
  // Merged detections per input message (empty when detection is off).
  std::vector<std::vector<Span>> detections;
  std::size_t rephrase_rollbacks = 0;
  std::size_t dp_substitutions = 0;
  std::chrono::nanoseconds total_duration{0};
};

inline constexpr int kNumStages = 7;

// Runs stages 0-5: classify, detect, redact, rephrase, noise, route.
// Disabled stages are identities. Throws std::invalid_argument only for
// malformed input (no messages, unknown role).
PipelineOutcome ProcessRequest(const std::vector<ChatMessage>& messages,
                               const PipelineConfig& config,
                               const PipelineResources& resources,
                               const std::string& request_id);

// Stage 6: restores placeholders in the upstream answer and discards the
// reverse map. Throws std::logic_error when `outcome` is not Cloud.
std::string FinalizeResponse(std::string_view upstream_text,
                             PipelineOutcome& outcome);

}  // namespace redact_gate

#endif  // REDACT_GATE_PIPELINE_H_
