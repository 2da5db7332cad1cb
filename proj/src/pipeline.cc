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

#include "redact_gate/pipeline.h"

#include <stdexcept>

#include "redact_gate/workloads.h"

namespace redact_gate {
namespace {

using Clock = std::chrono::steady_clock;

std::string PathOr(const std::string& configured, const std::string& file) {
  return configured.empty() ? DataDir() + "/" + file : configured;
}

class StageTimer {
 public:
  StageTimer(PipelineOutcome& outcome, int stage, std::string name, bool enabled)
      : outcome_(outcome), started_(Clock::now()) {
    record_.stage = stage;
    record_.name = std::move(name);
    record_.enabled = enabled;
  }
  ~StageTimer() {
    record_.duration = Clock::now() - started_;
    outcome_.trace.push_back(std::move(record_));
  }
  StageRecord& record() { return record_; }

 private:
  PipelineOutcome& outcome_;
  Clock::time_point started_;
  StageRecord record_;
};

}  // namespace

PipelineResources LoadResources(const PipelineConfig& config) {
  config.Validate();
  PipelineResources r;
  r.rules = std::make_shared<const RuleSet>(
      config.ruleset_path.empty() ? DefaultRuleSet()
                                  : LoadRuleSetFile(config.ruleset_path));
  if (!config.gazetteer_path.empty()) {
    r.gazetteer = std::make_shared<const Gazetteer>(
        LoadGazetteerFile(config.gazetteer_path));
  } else {
    r.gazetteer = std::make_shared<const Gazetteer>(
        BuildCorpusGazetteer(config.gazetteer_coverage, config.gazetteer_seed));
  }
  r.lexicon = std::make_shared<const Lexicon>(
      LoadLexiconFile(PathOr(config.lexicon_path, "lexicon.tsv")));
  r.prompts = std::make_shared<const Prompts>(
      config.prompts_path.empty() ? DefaultPrompts()
                                  : LoadPromptsFile(config.prompts_path));
  r.client = MakeChatClient(config.model_endpoint, config.mock_script_path);
  return r;
}

std::string PipelineOutcome::OutgoingText() const {
  if (!is_cloud()) return {};
  std::string out;
  const auto& messages = cloud().messages;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    if (i > 0) out += '\n';
    out += messages[i].content;
  }
  return out;
}

PipelineOutcome ProcessRequest(const std::vector<ChatMessage>& messages,
                               const PipelineConfig& config,
                               const PipelineResources& resources,
                               const std::string& request_id) {
  ChatRequest check;
  check.messages = messages;
  check.Validate();

  const auto started = Clock::now();
  PipelineOutcome outcome;
  const ModelAccess model{resources.client.get(), config.model_name,
                          std::chrono::milliseconds(config.timeout_ms)};
  std::vector<ChatMessage> working = messages;

  auto finish = [&]() -> PipelineOutcome {
    outcome.total_duration = Clock::now() - started;
    return std::move(outcome);
  };

  // Stage 0: local routing.
  bool routed_local = false;
  {
    StageTimer t(outcome, 0, "route_classify", config.enable_route);
    if (config.enable_route) {
      std::string user_text;
      for (const auto& m : messages) {
        if (m.role != "user") continue;
        if (!user_text.empty()) user_text += '\n';
        user_text += m.content;
      }
      const RouteClass route = ClassifyRoute(user_text, model, *resources.prompts,
                                             config.fallback_heuristic);
      t.record().detail = std::string(RouteClassName(route));
      if (route == RouteClass::kTrivial) {
        LocalAnswer local;
        bool answered = true;
        if (config.generate_local_answers && model.client != nullptr) {
          try {
            ChatRequest req;
            req.model = config.model_name;
            req.messages = messages;
            local.answer = model.client->Complete(req, model.timeout).text;
          } catch (const std::exception&) {
            // The local model could not answer; continue on the cloud path.
            answered = false;
            t.record().detail = "TRIVIAL (local answer failed, sent to cloud)";
          }
        }
        if (answered) {
          routed_local = true;
          t.record().applied = true;
          outcome.value = std::move(local);
        }
      }
    }
  }
  if (routed_local) return finish();

  // Stage 1: detection.
  std::vector<std::vector<Span>> spans(working.size());
  {
    StageTimer t(outcome, 1, "detect", config.enable_detect);
    if (config.enable_detect) {
      std::size_t total = 0;
      std::optional<std::string> refusal;
      for (std::size_t i = 0; i < working.size(); ++i) {
        const std::string& text = working[i].content;
        std::vector<Span> all;
        if (config.enable_regex) all = DetectRegex(text, *resources.rules);
        if (config.enable_gazetteer) {
          auto g = DetectGazetteer(text, *resources.gazetteer);
          all.insert(all.end(), g.begin(), g.end());
        }
        if (config.enable_classifier_detector) {
          auto c = DetectWithClassifier(text, model, *resources.prompts);
          all.insert(all.end(), c.begin(), c.end());
        }
        DetectionResult result = ApplyStrictMode(MergeSpans(std::move(all)), config);
        if (result.refused && !refusal) refusal = result.refusal_reason;
        total += result.spans.size();
        spans[i] = std::move(result.spans);
      }
      t.record().applied = total > 0;
      t.record().detail = std::to_string(total) + " span(s)";
      outcome.detections = spans;
      if (refusal) {
        t.record().detail += "; refused";
        outcome.value = Refusal{*refusal};
      }
    }
  }
  if (outcome.is_refused()) return finish();

  // Stage 2: redaction with one reverse map across all messages.
  ReverseMap map(request_id);
  {
    StageTimer t(outcome, 2, "redact", config.enable_redact);
    if (config.enable_redact && config.enable_detect) {
      for (const auto& m : working) map.Reserve(m.content);
      for (std::size_t i = 0; i < working.size(); ++i) {
        if (spans[i].empty()) continue;
        working[i].content = RedactInto(working[i].content, spans[i], map);
      }
      t.record().applied = !map.empty();
      t.record().detail = std::to_string(map.size()) + " placeholder(s)";
    }
  }

  // Stage 3: rephrase user messages; rejected rephrases keep stage 2 output.
  {
    StageTimer t(outcome, 3, "rephrase", config.enable_rephrase);
    if (config.enable_rephrase) {
      std::size_t accepted = 0;
      for (auto& m : working) {
        if (m.role != "user" || m.content.empty()) continue;
        RephraseResult r = Rephrase(m.content, model, *resources.prompts,
                                    config.survival_threshold);
        if (r.accepted) {
          m.content = std::move(r.text);
          ++accepted;
        } else {
          ++outcome.rephrase_rollbacks;
        }
      }
      t.record().applied = accepted > 0;
      t.record().detail = std::to_string(accepted) + " accepted, " +
                          std::to_string(outcome.rephrase_rollbacks) + " rolled back";
    }
  }

  // Stage 4: DP word noise on the accepted text.
  {
    StageTimer t(outcome, 4, "dp_noise", config.enable_dp_noise);
    if (config.enable_dp_noise) {
      for (std::size_t i = 0; i < working.size(); ++i) {
        if (working[i].role != "user") continue;
        const std::string stream_id =
            i == 0 ? request_id : request_id + "#" + std::to_string(i);
        NoiseOutcome noise =
            ApplyDpNoise(working[i].content, config.epsilon,
                         RequestSeed(config.seed, stream_id), *resources.lexicon);
        outcome.dp_substitutions += noise.substituted_words;
        working[i].content = std::move(noise.text);
      }
      t.record().applied = outcome.dp_substitutions > 0;
      t.record().detail = std::to_string(outcome.dp_substitutions) + " substitution(s)";
    }
  }

  // Stage 5: target selection.
  {
    StageTimer t(outcome, 5, "route_target", true);
    t.record().applied = true;
    t.record().detail = "cloud";
    outcome.value = CloudRequest{std::move(working), std::move(map), "cloud"};
  }
  return finish();
}

std::string FinalizeResponse(std::string_view upstream_text,
                             PipelineOutcome& outcome) {
  if (!outcome.is_cloud()) {
    throw std::logic_error("FinalizeResponse requires a Cloud outcome");
  }
  const auto started = Clock::now();
  CloudRequest& cloud = outcome.cloud();
  std::string restored = Restore(upstream_text, cloud.map);
  cloud.map.Clear();
  StageRecord record;
  record.stage = 6;
  record.name = "restore";
  record.enabled = true;
  record.applied = restored != upstream_text;
  record.duration = Clock::now() - started;
  outcome.trace.push_back(std::move(record));
  return restored;
}

}  // namespace redact_gate
