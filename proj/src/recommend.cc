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

#include "redact_gate/recommend.h"

#include <stdexcept>

namespace redact_gate {

OptionSet::OptionSet(std::initializer_list<Option> options) {
  for (Option o : options) bits_ |= Bit(o);
  if (bits_ == 0) throw std::invalid_argument("option set must be non-empty");
}

std::string OptionSet::ToString() const {
  static constexpr struct {
    Option option;
    const char* name;
  } kNames[] = {{Option::kA, "A"}, {Option::kB, "B"},
                {Option::kC, "C"}, {Option::kD, "D"},
                {Option::kH, "H"}, {Option::kRefuse, "REFUSE"}};
  std::string out;
  for (const auto& n : kNames) {
    if (!Contains(n.option)) continue;
    if (!out.empty()) out += '+';
    out += n.name;
  }
  return out;
}

OptionSet RecommendConfig(double lambda_budget, bool latency_primary,
                          bool implicit_identity_risk) {
  if (!(lambda_budget >= 0.0 && lambda_budget <= 1.0)) {
    throw std::invalid_argument("lambda_budget must be in [0, 1]");
  }
  if (lambda_budget == 0.0) {
    return {Option::kA, Option::kD, Option::kRefuse};
  }
  if (latency_primary) {
    if (implicit_identity_risk) return {Option::kB, Option::kC};
    return {Option::kB};
  }
  if (lambda_budget <= 0.05) {
    // Rephrasing does not remove implicit identity, so a tight budget
    // with implicit content needs the enclave or a refusal.
    if (implicit_identity_risk) {
      return {Option::kA, Option::kD, Option::kRefuse};
    }
    return {Option::kA, Option::kB, Option::kC};
  }
  if (implicit_identity_risk) return {Option::kB, Option::kC};
  return {Option::kB};
}

}  // namespace redact_gate
