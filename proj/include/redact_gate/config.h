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

#ifndef REDACT_GATE_CONFIG_H_
#define REDACT_GATE_CONFIG_H_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace redact_gate {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pipeline configuration. YAML keys and REDACT_GATE_<KEY> environment
// overrides use exactly these field names.
struct PipelineConfig {
  std::string name = "default";

  // Stage toggles.
  bool enable_route = false;
  bool enable_detect = true;
  bool enable_redact = true;
  bool enable_rephrase = false;
  bool enable_dp_noise = false;

  // Detector strategies behind the detect stage.
  bool enable_regex = true;
  bool enable_gazetteer = true;
  // Local-model sensitivity classifier; off unless a model is configured.
  bool enable_classifier_detector = false;

  bool strict_mode = false;
  double confidence_floor = 0.5;
  double epsilon = 4.0;
  double survival_threshold = 0.70;

  // "mock" or a base URL such as http://127.0.0.1:11434.
  std::string model_endpoint = "mock";
  std::string model_name = "local";
  std::string upstream_endpoint = "http://127.0.0.1:8000";
  int timeout_ms = 30000;
  bool fallback_heuristic = true;
  // When false, Stage 0 only records the routing decision (offline eval).
  bool generate_local_answers = true;

  std::uint64_t seed = 42;

  // Data files. Empty means the shipped default under the data directory.
  std::string ruleset_path;
  std::string gazetteer_path;
  std::string lexicon_path;
  std::string prompts_path;
  std::string mock_script_path;
  double gazetteer_coverage = 0.85;
  std::uint64_t gazetteer_seed = 7;

  // Throws ConfigError on violated range invariants.
  void Validate() const;
};

// Directory holding the shipped rules, lexicon, prompts and fixtures.
// REDACT_GATE_DATA_DIR in the environment overrides the compiled-in path.
std::string DataDir();

// Parses YAML text. Unknown keys are rejected.
PipelineConfig ParseConfigYaml(const std::string& yaml_text,
                               PipelineConfig base = {});
PipelineConfig LoadConfigFile(const std::string& path,
                              PipelineConfig base = {});

// Every accepted key, sorted.
std::vector<std::string> ConfigKeys();

// Applies one key=value pair using the YAML key names.
void SetConfigValue(PipelineConfig& config, const std::string& key,
                    const std::string& value);

// Applies REDACT_GATE_<UPPERCASE_KEY> variables from `env`.
void ApplyEnvOverrides(PipelineConfig& config,
                       const std::map<std::string, std::string>& env);
// Same, reading the process environment.
void ApplyProcessEnvOverrides(PipelineConfig& config);

}  // namespace redact_gate

#endif  // REDACT_GATE_CONFIG_H_
