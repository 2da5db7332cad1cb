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

#include "redact_gate/types.h"

#include <stdexcept>
#include <string>

namespace redact_gate {
namespace {

constexpr std::array<std::string_view, kNumKinds> kKindNames = {
    "email",    "phone",       "ip_address",   "ssn",          "aws_key",
    "api_key",  "bearer_token", "pem_marker",  "password",     "hostname",
    "employee_id", "person",   "org_name",     "address",      "codename",
    "implicit", "schema_name", "function_name",
};

void CheckRange(std::string_view origin, std::size_t start, std::size_t end) {
  if (start >= end) {
    throw std::invalid_argument("span range is empty or inverted: [" +
                                std::to_string(start) + ", " +
                                std::to_string(end) + ")");
  }
  if (end > origin.size()) {
    throw std::invalid_argument("span end " + std::to_string(end) +
                                " exceeds text length " +
                                std::to_string(origin.size()));
  }
  if (!IsCharBoundary(origin, start) || !IsCharBoundary(origin, end)) {
    throw std::invalid_argument("span offsets split a UTF-8 sequence");
  }
}

}  // namespace

const std::array<SensitivityKind, kNumKinds>& AllKinds() {
  static const std::array<SensitivityKind, kNumKinds> kinds = [] {
    std::array<SensitivityKind, kNumKinds> out{};
    for (std::size_t i = 0; i < kNumKinds; ++i) {
      out[i] = static_cast<SensitivityKind>(i);
    }
    return out;
  }();
  return kinds;
}

std::string_view KindName(SensitivityKind kind) {
  return kKindNames.at(static_cast<std::size_t>(kind));
}

std::optional<SensitivityKind> ParseKind(std::string_view name) {
  for (std::size_t i = 0; i < kNumKinds; ++i) {
    if (kKindNames[i] == name) return static_cast<SensitivityKind>(i);
  }
  return std::nullopt;
}

std::string_view SourceName(DetectorSource source) {
  switch (source) {
    case DetectorSource::kRegex:
      return "regex";
    case DetectorSource::kGazetteer:
      return "gazetteer";
    case DetectorSource::kClassifier:
      return "classifier";
  }
  return "unknown";
}

bool IsCharBoundary(std::string_view text, std::size_t offset) {
  if (offset == 0 || offset >= text.size()) return offset <= text.size();
  const auto byte = static_cast<unsigned char>(text[offset]);
  return (byte & 0xC0) != 0x80;
}

Span::Span(std::string_view origin, std::size_t start, std::size_t end,
           SensitivityKind kind, double confidence, DetectorSource source)
    : start_(start), end_(end), kind_(kind), confidence_(confidence),
      source_(source) {
  CheckRange(origin, start, end);
  if (!(confidence >= 0.0 && confidence <= 1.0)) {
    throw std::invalid_argument("span confidence outside [0, 1]");
  }
  text_ = std::string(origin.substr(start, end - start));
}

Annotation::Annotation(std::string_view origin, std::size_t start,
                       std::size_t end, SensitivityKind kind)
    : start_(start), end_(end), kind_(kind) {
  CheckRange(origin, start, end);
  text_ = std::string(origin.substr(start, end - start));
}

std::string_view WorkloadName(Workload workload) {
  switch (workload) {
    case Workload::kWL1:
      return "WL1";
    case Workload::kWL2:
      return "WL2";
    case Workload::kWL3:
      return "WL3";
    case Workload::kWL4:
      return "WL4";
  }
  return "unknown";
}

std::optional<Workload> ParseWorkload(std::string_view name) {
  for (Workload w : kAllWorkloads) {
    if (WorkloadName(w) == name) return w;
  }
  return std::nullopt;
}

void ValidateSample(const Sample& sample) {
  for (std::size_t i = 0; i < sample.annotations.size(); ++i) {
    const Annotation& a = sample.annotations[i];
    if (a.end() > sample.text.size() ||
        sample.text.compare(a.start(), a.end() - a.start(), a.text()) != 0) {
      throw std::invalid_argument("annotation " + std::to_string(i) +
                                  " of sample " + sample.id +
                                  " does not match the sample text");
    }
    if (i > 0 && sample.annotations[i - 1].end() > a.start()) {
      throw std::invalid_argument("annotations of sample " + sample.id +
                                  " overlap or are unsorted");
    }
  }
}

}  // namespace redact_gate
