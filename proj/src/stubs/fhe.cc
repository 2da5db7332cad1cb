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

#include "redact_gate/stubs/fhe.h"

#include <boost/regex.hpp>
#include <cctype>

#include "redact_gate/rng.h"

namespace redact_gate::stubs {

const LinearSensitivityModel& LinearSensitivityModel::Default() {
  static const LinearSensitivityModel kModel(
      {
          {"password", 1.6},   {"passwd", 1.6},     {"secret", 1.4},
          {"token", 1.2},      {"credential", 1.2}, {"credentials", 1.2},
          {"private", 1.0},    {"key", 0.8},        {"ssn", 1.5},
          {"salary", 1.0},     {"diagnosis", 1.3},  {"confidential", 1.1},
          {"bearer", 1.2},     {"apikey", 1.4},     {"aws", 0.6},
          {"medical", 0.9},    {"lawsuit", 0.7},    {"account", 0.4},
          {"weather", -0.5},   {"recipe", -0.5},    {"explain", -0.3},
          {"example", -0.3},
      },
      -1.0, 3.0);
  return kModel;
}

LinearSensitivityModel::LinearSensitivityModel(std::map<std::string, double> weights,
                                               double bias, double aws_key_weight)
    : weights_(weights.begin(), weights.end()), bias_(bias), aws_key_weight_(aws_key_weight) {}

double LinearSensitivityModel::Score(std::string_view text) const {
  static const boost::regex kAwsKey(R"(\bAKIA[0-9A-Z]{16}\b)");
  double score = bias_;
  std::string word;
  auto flush = [&] {
    if (word.empty()) return;
    auto it = weights_.find(word);
    if (it != weights_.end()) score += it->second;
    word.clear();
  };
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else {
      flush();
    }
  }
  flush();
  if (boost::regex_search(text.begin(), text.end(), kAwsKey)) score += aws_key_weight_;
  return score;
}

FheResult FheSimulate(std::string_view text, std::uint64_t seed) {
  Rng rng(seed);
  auto jitter = [&](double nominal) {
    return nominal * (1.0 + kTimingJitter * (2.0 * rng.Uniform() - 1.0));
  };
  FheResult r;
  r.score = LinearSensitivityModel::Default().Score(text);
  r.sensitive = r.score > 0.0;
  r.timings.encrypt_ms = jitter(kFheEncryptMs);
  r.timings.infer_ms = jitter(kFheInferMs);
  r.timings.decrypt_ms = jitter(kFheDecryptMs);
  return r;
}

}  // namespace redact_gate::stubs
