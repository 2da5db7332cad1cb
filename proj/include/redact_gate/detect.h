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

#ifndef REDACT_GATE_DETECT_H_
#define REDACT_GATE_DETECT_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "redact_gate/config.h"
#include "redact_gate/types.h"

namespace redact_gate {

struct RuleSpec {
  SensitivityKind kind;
  std::string pattern;
  double confidence = 1.0;
};

// Ordered, compiled regex rules. Immutable after construction.
class RuleSet {
 public:
  // Throws std::invalid_argument when a pattern fails to compile or a
  // confidence lies outside [0, 1].
  explicit RuleSet(std::vector<RuleSpec> specs, bool pem_body = true);
  ~RuleSet();
  RuleSet(RuleSet&&) noexcept;
  RuleSet& operator=(RuleSet&&) noexcept;

  const std::vector<RuleSpec>& specs() const { return specs_; }

  // Detect base64 bodies framed by BEGIN/END pem_marker matches.
  bool pem_body() const { return pem_body_; }

  // True when rule `index` matches the whole of `text`.
  bool FullMatch(std::size_t index, std::string_view text) const;

  std::vector<Span> Scan(std::string_view text) const;

 private:
  struct Compiled;
  std::vector<RuleSpec> specs_;
  std::unique_ptr<Compiled> compiled_;
  bool pem_body_;
};

// The shipped default families: email, IPv4, NANP phone, SSN, AWS access
// key, bearer token, PEM marker, generic API key, employee id, internal
// hostname.
const std::vector<RuleSpec>& DefaultRuleSpecs();
RuleSet DefaultRuleSet();

// Ruleset YAML: a list of {kind, pattern, confidence}, either at the root
// or under a `rules:` key next to a `version:` field.
RuleSet ParseRuleSetYaml(const std::string& yaml_text);
RuleSet LoadRuleSetFile(const std::string& path);

// Confidence of base64 PEM bodies found between markers.
inline constexpr double kPemBodyConfidence = 0.9;
inline constexpr std::string_view kPemBodyPattern = "[A-Za-z0-9+/=\\r\\n]+";

// Dictionary NER. Entries are literal surface forms matched on ASCII word
// boundaries, case-sensitively.
class Gazetteer {
 public:
  Gazetteer() = default;
  // Throws std::invalid_argument on empty entries.
  Gazetteer(std::map<SensitivityKind, std::vector<std::string>> entries,
            std::map<SensitivityKind, double> confidence);

  // Keeps round(coverage * n) entries per kind, chosen by a seeded shuffle.
  Gazetteer WithCoverage(double coverage, std::uint64_t seed) const;

  const std::map<SensitivityKind, std::vector<std::string>>& entries() const {
    return entries_;
  }
  double ConfidenceFor(SensitivityKind kind) const;
  std::size_t size() const;

  std::vector<Span> Scan(std::string_view text) const;

 private:
  std::map<SensitivityKind, std::vector<std::string>> entries_;
  std::map<SensitivityKind, double> confidence_;
};

inline constexpr double kDefaultPersonConfidence = 0.85;
inline constexpr double kDefaultOrgConfidence = 0.75;
inline constexpr double kDefaultAddressConfidence = 0.8;

// Gazetteer YAML: kind name -> [entries], plus optional `coverage`, `seed`
// and a `confidence` map. Coverage is applied on load.
Gazetteer ParseGazetteerYaml(const std::string& yaml_text);
Gazetteer LoadGazetteerFile(const std::string& path);

std::vector<Span> DetectRegex(std::string_view text, const RuleSet& rules);
std::vector<Span> DetectGazetteer(std::string_view text, const Gazetteer& gaz);

// Resolves overlaps. Spans are visited in priority order (confidence, then
// length, then earlier start, then kind name) and a span survives when it
// does not overlap an already surviving span. Output is sorted by start.
std::vector<Span> MergeSpans(std::vector<Span> spans);

struct DetectionResult {
  std::vector<Span> spans;  // merged, sorted, non-overlapping
  bool refused = false;
  std::optional<std::string> refusal_reason;
};

// Runs the enabled detectors and merges their output. Under strict mode any
// surviving span below the confidence floor refuses the request.
DetectionResult Detect(std::string_view text, const PipelineConfig& config,
                       const RuleSet& rules, const Gazetteer& gaz);

// Strict-mode decision over already merged spans.
DetectionResult ApplyStrictMode(std::vector<Span> spans,
                                const PipelineConfig& config);

}  // namespace redact_gate

#endif  // REDACT_GATE_DETECT_H_
