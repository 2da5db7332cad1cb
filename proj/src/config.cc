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

#include "redact_gate/config.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#ifndef REDACT_GATE_DEFAULT_DATA_DIR
#define REDACT_GATE_DEFAULT_DATA_DIR "data"
#endif

extern char** environ;

namespace redact_gate {
namespace {

bool ParseBool(const std::string& key, const std::string& value) {
  std::string v = value;
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config key '" + key + "' expects a boolean, got '" +
                    value + "'");
}

double ParseDouble(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double d = std::stod(value, &used);
    if (used == value.size()) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("config key '" + key + "' expects a number, got '" +
                    value + "'");
}

std::uint64_t ParseU64(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(value, &used, 0);
    if (used == value.size() && (value.empty() || value[0] != '-')) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("config key '" + key +
                    "' expects a non-negative integer, got '" + value + "'");
}

using Setter = std::function<void(PipelineConfig&, const std::string&)>;

const std::map<std::string, Setter>& Setters() {
  static const auto* setters = [] {
    auto* m = new std::map<std::string, Setter>;
    auto add_bool = [m](const std::string& key, bool PipelineConfig::*field) {
      (*m)[key] = [key, field](PipelineConfig& c, const std::string& v) {
        c.*field = ParseBool(key, v);
      };
    };
    auto add_double = [m](const std::string& key,
                          double PipelineConfig::*field) {
      (*m)[key] = [key, field](PipelineConfig& c, const std::string& v) {
        c.*field = ParseDouble(key, v);
      };
    };
    auto add_string = [m](const std::string& key,
                          std::string PipelineConfig::*field) {
      (*m)[key] = [field](PipelineConfig& c, const std::string& v) {
        c.*field = v;
      };
    };
    auto add_u64 = [m](const std::string& key,
                       std::uint64_t PipelineConfig::*field) {
      (*m)[key] = [key, field](PipelineConfig& c, const std::string& v) {
        c.*field = ParseU64(key, v);
      };
    };
    add_string("name", &PipelineConfig::name);
    add_bool("enable_route", &PipelineConfig::enable_route);
    add_bool("enable_detect", &PipelineConfig::enable_detect);
    add_bool("enable_redact", &PipelineConfig::enable_redact);
    add_bool("enable_rephrase", &PipelineConfig::enable_rephrase);
    add_bool("enable_dp_noise", &PipelineConfig::enable_dp_noise);
    add_bool("enable_regex", &PipelineConfig::enable_regex);
    add_bool("enable_gazetteer", &PipelineConfig::enable_gazetteer);
    add_bool("enable_classifier_detector",
             &PipelineConfig::enable_classifier_detector);
    add_bool("strict_mode", &PipelineConfig::strict_mode);
    add_double("confidence_floor", &PipelineConfig::confidence_floor);
    add_double("epsilon", &PipelineConfig::epsilon);
    add_double("survival_threshold", &PipelineConfig::survival_threshold);
    add_string("model_endpoint", &PipelineConfig::model_endpoint);
    add_string("model_name", &PipelineConfig::model_name);
    add_string("upstream_endpoint", &PipelineConfig::upstream_endpoint);
    (*m)["timeout_ms"] = [](PipelineConfig& c, const std::string& v) {
      std::uint64_t ms = ParseU64("timeout_ms", v);
      if (ms == 0 || ms > 3600000) {
        throw ConfigError("timeout_ms must be in (0, 3600000]");
      }
      c.timeout_ms = static_cast<int>(ms);
    };
    add_bool("fallback_heuristic", &PipelineConfig::fallback_heuristic);
    add_bool("generate_local_answers", &PipelineConfig::generate_local_answers);
    add_u64("seed", &PipelineConfig::seed);
    add_string("ruleset_path", &PipelineConfig::ruleset_path);
    add_string("gazetteer_path", &PipelineConfig::gazetteer_path);
    add_string("lexicon_path", &PipelineConfig::lexicon_path);
    add_string("prompts_path", &PipelineConfig::prompts_path);
    add_string("mock_script_path", &PipelineConfig::mock_script_path);
    add_double("gazetteer_coverage", &PipelineConfig::gazetteer_coverage);
    add_u64("gazetteer_seed", &PipelineConfig::gazetteer_seed);
    return m;
  }();
  return *setters;
}

}  // namespace

void PipelineConfig::Validate() const {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  if (!(survival_threshold >= 0.0 && survival_threshold <= 1.0)) {
    throw ConfigError("survival_threshold must be in [0, 1]");
  }
  if (!(confidence_floor >= 0.0 && confidence_floor <= 1.0)) {
    throw ConfigError("confidence_floor must be in [0, 1]");
  }
  if (!(gazetteer_coverage >= 0.0 && gazetteer_coverage <= 1.0)) {
    throw ConfigError("gazetteer_coverage must be in [0, 1]");
  }
  if (timeout_ms <= 0) throw ConfigError("timeout_ms must be positive");
}

std::string DataDir() {
  if (const char* env = std::getenv("REDACT_GATE_DATA_DIR");
      env != nullptr && *env != '\0') {
    return env;
  }
  return REDACT_GATE_DEFAULT_DATA_DIR;
}

std::vector<std::string> ConfigKeys() {
  std::vector<std::string> keys;
  for (const auto& [key, unused] : Setters()) keys.push_back(key);
  return keys;
}

void SetConfigValue(PipelineConfig& config, const std::string& key,
                    const std::string& value) {
  const auto& setters = Setters();
  auto it = setters.find(key);
  if (it == setters.end()) {
    throw ConfigError("unknown config key '" + key + "'");
  }
  it->second(config, value);
}

PipelineConfig ParseConfigYaml(const std::string& yaml_text,
                               PipelineConfig base) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("invalid YAML config: ") + e.what());
  }
  if (root.IsNull()) {
    base.Validate();
    return base;
  }
  if (!root.IsMap()) throw ConfigError("config root must be a mapping");
  for (const auto& entry : root) {
    const auto key = entry.first.as<std::string>();
    if (!entry.second.IsScalar()) {
      throw ConfigError("config key '" + key + "' must be a scalar");
    }
    SetConfigValue(base, key, entry.second.Scalar());
  }
  base.Validate();
  return base;
}

PipelineConfig LoadConfigFile(const std::string& path, PipelineConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const PipelineConfig before = base;
  PipelineConfig config = ParseConfigYaml(buffer.str(), std::move(base));
  // Relative paths set by the file are relative to the file.
  const auto dir = std::filesystem::path(path).parent_path();
  for (auto field : {&PipelineConfig::ruleset_path, &PipelineConfig::gazetteer_path,
                     &PipelineConfig::lexicon_path, &PipelineConfig::prompts_path,
                     &PipelineConfig::mock_script_path}) {
    std::string& value = config.*field;
    if (value.empty() || value == before.*field) continue;
    if (std::filesystem::path(value).is_relative()) value = (dir / value).string();
  }
  return config;
}

void ApplyEnvOverrides(PipelineConfig& config,
                       const std::map<std::string, std::string>& env) {
  static constexpr std::string_view kPrefix = "REDACT_GATE_";
  for (const auto& [key, unused] : Setters()) {
    std::string var(kPrefix);
    for (char c : key) {
      var.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    auto it = env.find(var);
    if (it != env.end()) SetConfigValue(config, key, it->second);
  }
  config.Validate();
}

void ApplyProcessEnvOverrides(PipelineConfig& config) {
  std::map<std::string, std::string> env;
  for (char** e = environ; e != nullptr && *e != nullptr; ++e) {
    std::string_view entry(*e);
    auto eq = entry.find('=');
    if (eq == std::string_view::npos) continue;
    if (entry.rfind("REDACT_GATE_", 0) != 0) continue;
    env.emplace(std::string(entry.substr(0, eq)),
                std::string(entry.substr(eq + 1)));
  }
  ApplyEnvOverrides(config, env);
}

}  // namespace redact_gate
