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

#include "redact_gate/detect.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <boost/regex.hpp>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "redact_gate/rng.h"

namespace redact_gate {

struct RuleSet::Compiled {
  std::vector<boost::regex> patterns;
};

namespace {

bool IsWordByte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) != 0 || c == '_';
}

bool IsBase64Byte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) != 0 || c == '+' || c == '/' || c == '=';
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

SensitivityKind KindFromYaml(const YAML::Node& node) {
  const auto name = node.as<std::string>();
  auto kind = ParseKind(name);
  if (!kind) throw std::invalid_argument("unknown sensitivity kind '" + name + "'");
  return *kind;
}

// Orders by (confidence, length, -start, kind name), highest first.
bool HigherPriority(const Span& a, const Span& b) {
  if (a.confidence() != b.confidence()) return a.confidence() > b.confidence();
  if (a.length() != b.length()) return a.length() > b.length();
  if (a.start() != b.start()) return a.start() < b.start();
  return KindName(a.kind()) > KindName(b.kind());
}

}  // namespace

RuleSet::RuleSet(std::vector<RuleSpec> specs, bool pem_body)
    : specs_(std::move(specs)),
      compiled_(std::make_unique<Compiled>()),
      pem_body_(pem_body) {
  compiled_->patterns.reserve(specs_.size());
  for (const RuleSpec& spec : specs_) {
    if (!(spec.confidence >= 0.0 && spec.confidence <= 1.0)) {
      throw std::invalid_argument("rule confidence outside [0, 1] for " +
                                  spec.pattern);
    }
    try {
      compiled_->patterns.emplace_back(spec.pattern, boost::regex::perl);
    } catch (const boost::regex_error& e) {
      throw std::invalid_argument("rule pattern does not compile: " +
                                  spec.pattern + " (" + e.what() + ")");
    }
  }
}

RuleSet::~RuleSet() = default;
RuleSet::RuleSet(RuleSet&&) noexcept = default;
RuleSet& RuleSet::operator=(RuleSet&&) noexcept = default;

bool RuleSet::FullMatch(std::size_t index, std::string_view text) const {
  return boost::regex_match(text.begin(), text.end(),
                            compiled_->patterns.at(index));
}

std::vector<Span> RuleSet::Scan(std::string_view text) const {
  std::vector<Span> out;
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    const auto& re = compiled_->patterns[i];
    using It = std::string_view::const_iterator;
    boost::regex_iterator<It> it(text.begin(), text.end(), re);
    for (; it != boost::regex_iterator<It>(); ++it) {
      const auto& m = *it;
      if (m.length() == 0) continue;
      const auto start = static_cast<std::size_t>(m.position());
      const auto end = start + static_cast<std::size_t>(m.length());
      if (!IsCharBoundary(text, start) || !IsCharBoundary(text, end)) continue;
      out.emplace_back(text, start, end, specs_[i].kind, specs_[i].confidence,
                       DetectorSource::kRegex);
    }
  }
  if (!pem_body_) return out;

  // Base64 bodies are spanned only between a BEGIN and the next END marker.
  std::vector<const Span*> markers;
  for (const Span& s : out) {
    if (s.kind() == SensitivityKind::kPemMarker) markers.push_back(&s);
  }
  std::sort(markers.begin(), markers.end(),
            [](const Span* a, const Span* b) { return a->start() < b->start(); });
  std::vector<Span> bodies;
  for (std::size_t i = 0; i + 1 < markers.size(); ++i) {
    const Span& begin = *markers[i];
    const Span& end = *markers[i + 1];
    if (begin.text().rfind("-----BEGIN", 0) != 0 ||
        end.text().rfind("-----END", 0) != 0 || begin.end() >= end.start()) {
      continue;
    }
    std::size_t lo = begin.end();
    std::size_t hi = end.start();
    while (lo < hi && (text[lo] == '\n' || text[lo] == '\r')) ++lo;
    while (hi > lo && (text[hi - 1] == '\n' || text[hi - 1] == '\r')) --hi;
    if (hi - lo < 16) continue;
    bool base64 = true;
    for (std::size_t k = lo; k < hi && base64; ++k) {
      base64 = IsBase64Byte(text[k]) || text[k] == '\n' || text[k] == '\r';
    }
    if (base64) {
      bodies.emplace_back(text, lo, hi, SensitivityKind::kPemMarker,
                          kPemBodyConfidence, DetectorSource::kRegex);
    }
  }
  out.insert(out.end(), bodies.begin(), bodies.end());
  return out;
}

const std::vector<RuleSpec>& DefaultRuleSpecs() {
  static const std::vector<RuleSpec> kSpecs = {
      {SensitivityKind::kEmail,
       R"([A-Za-z0-9._%+-]+@[A-Za-z0-9-]+(?:\.[A-Za-z0-9-]+)*\.[A-Za-z]{2,})",
       0.99},
      {SensitivityKind::kIpAddress,
       R"(\b(?:(?:25[0-5]|2[0-4]\d|1\d\d|[1-9]?\d)\.){3}(?:25[0-5]|2[0-4]\d|1\d\d|[1-9]?\d)\b)",
       0.95},
      {SensitivityKind::kPhone,
       R"((?<![\w+])(?:\+1[ .-]?)?(?:\(\d{3}\)[ .-]?|\d{3}[ .-])\d{3}[ .-]\d{4}\b)",
       0.9},
      {SensitivityKind::kSsn, R"(\b\d{3}-\d{2}-\d{4}\b)", 0.95},
      {SensitivityKind::kAwsKey, R"(\bAKIA[0-9A-Z]{16}\b)", 1.0},
      {SensitivityKind::kBearerToken, R"(Bearer\s+[A-Za-z0-9._~+/=-]{16,})",
       0.95},
      {SensitivityKind::kPemMarker, R"(-----(?:BEGIN|END) [A-Z ]+-----)", 1.0},
      {SensitivityKind::kApiKey, R"(\b(?:sk|pk|tok)[-_][A-Za-z0-9]{16,})",
       0.9},
      {SensitivityKind::kEmployeeId, R"(\bEMP-\d{4,6}\b)", 0.95},
      {SensitivityKind::kHostname,
       R"(\b[a-z0-9-]+\.(?:internal|corp|lan|local)\b)", 0.8},
  };
  return kSpecs;
}

RuleSet DefaultRuleSet() { return RuleSet(DefaultRuleSpecs()); }

RuleSet ParseRuleSetYaml(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("invalid ruleset YAML: ") + e.what());
  }
  YAML::Node list = root.IsMap() ? root["rules"] : root;
  if (!list || !list.IsSequence()) {
    throw std::invalid_argument("ruleset must be a list of rules");
  }
  bool pem_body = true;
  if (root.IsMap() && root["pem_body"]) pem_body = root["pem_body"].as<bool>();
  std::vector<RuleSpec> specs;
  for (const auto& node : list) {
    if (!node["kind"] || !node["pattern"]) {
      throw std::invalid_argument("rule needs 'kind' and 'pattern'");
    }
    RuleSpec spec{KindFromYaml(node["kind"]), node["pattern"].as<std::string>(),
                  node["confidence"] ? node["confidence"].as<double>() : 1.0};
    specs.push_back(std::move(spec));
  }
  return RuleSet(std::move(specs), pem_body);
}

RuleSet LoadRuleSetFile(const std::string& path) {
  return ParseRuleSetYaml(ReadFile(path));
}

Gazetteer::Gazetteer(std::map<SensitivityKind, std::vector<std::string>> entries,
                     std::map<SensitivityKind, double> confidence)
    : entries_(std::move(entries)), confidence_(std::move(confidence)) {
  for (auto& [kind, list] : entries_) {
    for (const auto& e : list) {
      if (e.empty()) throw std::invalid_argument("empty gazetteer entry");
    }
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  for (const auto& [kind, c] : confidence_) {
    if (!(c >= 0.0 && c <= 1.0)) {
      throw std::invalid_argument("gazetteer confidence outside [0, 1]");
    }
  }
}

Gazetteer Gazetteer::WithCoverage(double coverage, std::uint64_t seed) const {
  if (!(coverage >= 0.0 && coverage <= 1.0)) {
    throw std::invalid_argument("gazetteer coverage outside [0, 1]");
  }
  std::map<SensitivityKind, std::vector<std::string>> kept;
  for (const auto& [kind, list] : entries_) {
    // A per-kind stream keeps the choice for one kind independent of the
    // size of the others.
    Rng rng(seed ^ Fnv1a64(KindName(kind)));
    std::vector<std::string> shuffled = list;
    rng.Shuffle(shuffled);
    const auto keep = static_cast<std::size_t>(
        std::llround(coverage * static_cast<double>(list.size())));
    shuffled.resize(std::min(keep, shuffled.size()));
    kept[kind] = std::move(shuffled);
  }
  return Gazetteer(std::move(kept), confidence_);
}

double Gazetteer::ConfidenceFor(SensitivityKind kind) const {
  if (auto it = confidence_.find(kind); it != confidence_.end()) {
    return it->second;
  }
  switch (kind) {
    case SensitivityKind::kPerson:
      return kDefaultPersonConfidence;
    case SensitivityKind::kOrgName:
      return kDefaultOrgConfidence;
    case SensitivityKind::kAddress:
      return kDefaultAddressConfidence;
    default:
      return 0.7;
  }
}

std::size_t Gazetteer::size() const {
  std::size_t n = 0;
  for (const auto& [kind, list] : entries_) n += list.size();
  return n;
}

std::vector<Span> Gazetteer::Scan(std::string_view text) const {
  std::vector<Span> out;
  for (const auto& [kind, list] : entries_) {
    const double confidence = ConfidenceFor(kind);
    for (const std::string& entry : list) {
      std::size_t pos = text.find(entry);
      while (pos != std::string_view::npos) {
        const std::size_t end = pos + entry.size();
        const bool left_ok = pos == 0 || !IsWordByte(text[pos - 1]) ||
                             !IsWordByte(entry.front());
        const bool right_ok = end == text.size() || !IsWordByte(text[end]) ||
                              !IsWordByte(entry.back());
        if (left_ok && right_ok) {
          out.emplace_back(text, pos, end, kind, confidence,
                           DetectorSource::kGazetteer);
        }
        pos = text.find(entry, pos + 1);
      }
    }
  }
  return out;
}

Gazetteer ParseGazetteerYaml(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("invalid gazetteer YAML: ") +
                                e.what());
  }
  if (!root.IsMap()) throw std::invalid_argument("gazetteer must be a mapping");
  double coverage = 1.0;
  std::uint64_t seed = 0;
  std::map<SensitivityKind, std::vector<std::string>> entries;
  std::map<SensitivityKind, double> confidence;
  for (const auto& item : root) {
    const auto key = item.first.as<std::string>();
    if (key == "coverage") {
      coverage = item.second.as<double>();
    } else if (key == "seed") {
      seed = item.second.as<std::uint64_t>();
    } else if (key == "confidence") {
      for (const auto& c : item.second) {
        confidence[KindFromYaml(c.first)] = c.second.as<double>();
      }
    } else {
      auto kind = ParseKind(key);
      if (!kind) throw std::invalid_argument("unknown gazetteer key '" + key + "'");
      if (!item.second.IsSequence()) {
        throw std::invalid_argument("gazetteer kind '" + key +
                                    "' must map to a list");
      }
      auto& list = entries[*kind];
      for (const auto& e : item.second) list.push_back(e.as<std::string>());
    }
  }
  return Gazetteer(std::move(entries), std::move(confidence))
      .WithCoverage(coverage, seed);
}

Gazetteer LoadGazetteerFile(const std::string& path) {
  return ParseGazetteerYaml(ReadFile(path));
}

std::vector<Span> DetectRegex(std::string_view text, const RuleSet& rules) {
  return rules.Scan(text);
}

std::vector<Span> DetectGazetteer(std::string_view text, const Gazetteer& gaz) {
  return gaz.Scan(text);
}

std::vector<Span> MergeSpans(std::vector<Span> spans) {
  std::sort(spans.begin(), spans.end(), HigherPriority);
  std::vector<Span> kept;
  for (Span& s : spans) {
    bool clash = false;
    for (const Span& k : kept) {
      if (k.Overlaps(s)) {
        clash = true;
        break;
      }
    }
    if (!clash) kept.push_back(std::move(s));
  }
  std::sort(kept.begin(), kept.end(), [](const Span& a, const Span& b) {
    return a.start() < b.start();
  });
  return kept;
}

DetectionResult ApplyStrictMode(std::vector<Span> spans,
                                const PipelineConfig& config) {
  DetectionResult result;
  result.spans = std::move(spans);
  if (!config.strict_mode) return result;
  std::size_t low = 0;
  std::string kinds;
  for (const Span& s : result.spans) {
    if (s.confidence() < config.confidence_floor) {
      ++low;
      if (kinds.find(KindName(s.kind())) == std::string::npos) {
        if (!kinds.empty()) kinds += ",";
        kinds += KindName(s.kind());
      }
    }
  }
  if (low > 0) {
    std::ostringstream reason;
    reason << "strict mode: " << low
           << " detection(s) below confidence floor " << config.confidence_floor
           << " (kinds: " << kinds << ")";
    result.refused = true;
    result.refusal_reason = reason.str();
  }
  return result;
}

DetectionResult Detect(std::string_view text, const PipelineConfig& config,
                       const RuleSet& rules, const Gazetteer& gaz) {
  std::vector<Span> all;
  if (config.enable_regex) all = DetectRegex(text, rules);
  if (config.enable_gazetteer) {
    auto g = DetectGazetteer(text, gaz);
    all.insert(all.end(), std::make_move_iterator(g.begin()),
               std::make_move_iterator(g.end()));
  }
  return ApplyStrictMode(MergeSpans(std::move(all)), config);
}

}  // namespace redact_gate
