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

#ifndef REDACT_GATE_TYPES_H_
#define REDACT_GATE_TYPES_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace redact_gate {

// Closed set of sensitivity kinds. Serialized names are the lowercase
// identifiers returned by KindName().
enum class SensitivityKind : std::uint8_t {
  kEmail,
  kPhone,
  kIpAddress,
  kSsn,
  kAwsKey,
  kApiKey,
  kBearerToken,
  kPemMarker,
  kPassword,
  kHostname,
  kEmployeeId,
  kPerson,
  kOrgName,
  kAddress,
  kCodename,
  kImplicit,
  kSchemaName,
  kFunctionName,
};

inline constexpr std::size_t kNumKinds = 18;

const std::array<SensitivityKind, kNumKinds>& AllKinds();

// "email", "ip_address", ...
std::string_view KindName(SensitivityKind kind);

// Inverse of KindName. Returns nullopt for unknown names.
std::optional<SensitivityKind> ParseKind(std::string_view name);

enum class DetectorSource : std::uint8_t { kRegex, kGazetteer, kClassifier };

std::string_view SourceName(DetectorSource source);

// True when `offset` does not point into the middle of a UTF-8 sequence.
bool IsCharBoundary(std::string_view text, std::size_t offset);

// A detected sensitive region of some origin text. Offsets are byte offsets
// and are checked against the origin at construction; the covered substring
// is copied into the span.
class Span {
 public:
  // Throws std::invalid_argument when the range is empty, out of bounds,
  // splits a UTF-8 sequence, or the confidence is outside [0, 1].
  Span(std::string_view origin, std::size_t start, std::size_t end,
       SensitivityKind kind, double confidence, DetectorSource source);

  std::size_t start() const { return start_; }
  std::size_t end() const { return end_; }
  std::size_t length() const { return end_ - start_; }
  SensitivityKind kind() const { return kind_; }
  double confidence() const { return confidence_; }
  const std::string& text() const { return text_; }
  DetectorSource source() const { return source_; }

  bool Overlaps(const Span& other) const {
    return start_ < other.end_ && other.start_ < end_;
  }

  friend bool operator==(const Span&, const Span&) = default;

 private:
  std::size_t start_;
  std::size_t end_;
  SensitivityKind kind_;
  double confidence_;
  std::string text_;
  DetectorSource source_;
};

// Ground-truth sensitive region of a benchmark sample.
class Annotation {
 public:
  // Validates offsets against `origin` and copies the covered text.
  Annotation(std::string_view origin, std::size_t start, std::size_t end,
             SensitivityKind kind);

  std::size_t start() const { return start_; }
  std::size_t end() const { return end_; }
  SensitivityKind kind() const { return kind_; }
  const std::string& text() const { return text_; }

  friend bool operator==(const Annotation&, const Annotation&) = default;

 private:
  std::size_t start_;
  std::size_t end_;
  SensitivityKind kind_;
  std::string text_;
};

enum class Workload : std::uint8_t { kWL1, kWL2, kWL3, kWL4 };

inline constexpr std::array<Workload, 4> kAllWorkloads = {
    Workload::kWL1, Workload::kWL2, Workload::kWL3, Workload::kWL4};

std::string_view WorkloadName(Workload workload);
std::optional<Workload> ParseWorkload(std::string_view name);

struct Sample {
  std::string id;
  Workload workload = Workload::kWL1;
  std::string text;
  std::vector<Annotation> annotations;  // sorted by start, non-overlapping

  friend bool operator==(const Sample&, const Sample&) = default;
};

// Throws std::invalid_argument if annotations overlap or are unsorted.
void ValidateSample(const Sample& sample);

}  // namespace redact_gate

#endif  // REDACT_GATE_TYPES_H_
