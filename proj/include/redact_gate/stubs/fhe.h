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

#ifndef REDACT_GATE_STUBS_FHE_H_
#define REDACT_GATE_STUBS_FHE_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace redact_gate::stubs {

// Nominal costs of one encrypted classification, in milliseconds.
inline constexpr double kFheEncryptMs = 100.0;
inline constexpr double kFheInferMs = 5000.0;
inline constexpr double kFheDecryptMs = 50.0;
inline constexpr double kTimingJitter = 0.10;

struct FheTimings {
  double encrypt_ms = 0.0;
  double infer_ms = 0.0;
  double decrypt_ms = 0.0;
  double total_ms() const { return encrypt_ms + infer_ms + decrypt_ms; }
};

struct FheResult {
  bool sensitive = false;
  double score = 0.0;
  FheTimings timings;
};

// Linear bag-of-words model, the plaintext twin of the encrypted circuit.
class LinearSensitivityModel {
 public:
  static const LinearSensitivityModel& Default();

  LinearSensitivityModel(std::map<std::string, double> weights, double bias,
                         double aws_key_weight);

  // bias + sum of weights of lowercase word occurrences + aws_key_weight if
  // an AWS access key shape is present. Sensitive when > 0.
  double Score(std::string_view text) const;
  bool Classify(std::string_view text) const { return Score(text) > 0.0; }

 private:
  std::map<std::string, double, std::less<>> weights_;
  double bias_;
  double aws_key_weight_;
};

// Simulated, not slept: timings are the nominal constants with seeded
// uniform jitter of +/-10%.
FheResult FheSimulate(std::string_view text, std::uint64_t seed);

}  // namespace redact_gate::stubs

#endif  // REDACT_GATE_STUBS_FHE_H_
