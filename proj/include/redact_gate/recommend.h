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

#ifndef REDACT_GATE_RECOMMEND_H_
#define REDACT_GATE_RECOMMEND_H_

#include <cstdint>
#include <initializer_list>
#include <string>

namespace redact_gate {

enum class Option : std::uint8_t { kA, kB, kC, kD, kH, kRefuse };

// Non-empty set of deployment options.
class OptionSet {
 public:
  // Throws std::invalid_argument for an empty list.
  OptionSet(std::initializer_list<Option> options);

  bool Contains(Option option) const {
    return (bits_ & Bit(option)) != 0;
  }
  // "A+B+C", "A+D+REFUSE", ...
  std::string ToString() const;

  friend bool operator==(const OptionSet&, const OptionSet&) = default;

 private:
  static std::uint8_t Bit(Option o) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(o));
  }
  std::uint8_t bits_ = 0;
};

// Selects options from a leak budget. `lambda_budget` is the maximum
// acceptable exact leak rate. Thresholds are inclusive:
//   lambda == 0            -> A + D + REFUSE
//   latency primary        -> B (B + C when implicit identity is at risk)
//   lambda <= 0.05         -> A + B + C (A + D + REFUSE with implicit risk)
//   lambda <= 0.25 / above -> B (B + C with implicit risk)
// Throws std::invalid_argument when lambda_budget is outside [0, 1].
OptionSet RecommendConfig(double lambda_budget, bool latency_primary,
                          bool implicit_identity_risk);

}  // namespace redact_gate

#endif  // REDACT_GATE_RECOMMEND_H_
