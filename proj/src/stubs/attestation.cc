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

#include "redact_gate/stubs/attestation.h"

#include <cctype>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace redact_gate::stubs {
namespace {

// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t DaysFromCivil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

unsigned DaysInMonth(int y, unsigned m) {
  static constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  return m == 2 && leap ? 29 : kDays[m - 1];
}

bool Digits(std::string_view s, std::size_t pos, std::size_t n, int& out) {
  if (pos + n > s.size()) return false;
  out = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    out = out * 10 + (s[i] - '0');
  }
  return true;
}

bool IsHexDigest(const std::string& s) {
  if (s.size() != 64 && s.size() != 96) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)) && (c < 'a' || c > 'f')) return false;
  }
  return true;
}

[[noreturn]] void Bad(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

std::optional<SystemTime> ParseRfc3339(std::string_view s) {
  int y, mo, d, h, mi, se;
  if (!Digits(s, 0, 4, y) || s.size() < 20 || s[4] != '-' || !Digits(s, 5, 2, mo) ||
      s[7] != '-' || !Digits(s, 8, 2, d) || (s[10] != 'T' && s[10] != 't') ||
      !Digits(s, 11, 2, h) || s[13] != ':' || !Digits(s, 14, 2, mi) || s[16] != ':' ||
      !Digits(s, 17, 2, se)) {
    return std::nullopt;
  }
  if (mo < 1 || mo > 12 || d < 1 || d > static_cast<int>(DaysInMonth(y, mo)) || h > 23 ||
      mi > 59 || se > 60) {
    return std::nullopt;
  }
  std::size_t pos = 19;
  std::int64_t nanos = 0;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::size_t digits = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      if (digits < 9) nanos = nanos * 10 + (s[pos] - '0');
      ++digits;
      ++pos;
    }
    if (digits == 0) return std::nullopt;
    for (std::size_t i = digits; i < 9; ++i) nanos *= 10;
  }
  std::int64_t offset_s = 0;
  if (pos < s.size() && (s[pos] == 'Z' || s[pos] == 'z')) {
    ++pos;
  } else if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    int oh, om;
    if (!Digits(s, pos + 1, 2, oh) || pos + 3 >= s.size() || s[pos + 3] != ':' ||
        !Digits(s, pos + 4, 2, om) || oh > 23 || om > 59) {
      return std::nullopt;
    }
    offset_s = (oh * 3600 + om * 60) * (s[pos] == '-' ? -1 : 1);
    pos += 6;
  } else {
    return std::nullopt;
  }
  if (pos != s.size()) return std::nullopt;
  const std::int64_t secs =
      DaysFromCivil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d)) * 86400 +
      h * 3600 + mi * 60 + se - offset_s;
  return SystemTime(std::chrono::duration_cast<SystemTime::duration>(
      std::chrono::seconds(secs) + std::chrono::nanoseconds(nanos)));
}

std::string FormatRfc3339(SystemTime t) {
  const std::int64_t secs =
      std::chrono::duration_cast<std::chrono::seconds>(t.time_since_epoch()).count();
  std::int64_t days = secs / 86400;
  std::int64_t rem = secs % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  // Inverse of DaysFromCivil.
  days += 719468;
  const std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
  const auto doe = static_cast<unsigned>(days - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400 + (m <= 2);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02d:%02d:%02dZ",
                static_cast<long long>(y), m, d, static_cast<int>(rem / 3600),
                static_cast<int>(rem % 3600 / 60), static_cast<int>(rem % 60));
  return buf;
}

AttestationDoc ParseAttestationDoc(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const std::exception& e) {
    Bad(std::string("not JSON: ") + e.what());
  }
  if (!j.is_object()) Bad("document must be an object");
  AttestationDoc doc;
  if (j.contains("module_id")) {
    if (!j["module_id"].is_string()) Bad("module_id must be a string");
    doc.module_id = j["module_id"].get<std::string>();
  }

  if (!j.contains("pcrs") || !j["pcrs"].is_array() || j["pcrs"].empty()) {
    Bad("pcrs must be a non-empty array");
  }
  for (const auto& p : j["pcrs"]) {
    if (!p.is_object() || !p.contains("index") || !p["index"].is_number_integer() ||
        !p.contains("digest") || !p["digest"].is_string()) {
      Bad("each pcr needs an integer index and a string digest");
    }
    const int index = p["index"].get<int>();
    if (index < 0 || index > 31) Bad("pcr index out of range");
    const std::string digest = p["digest"].get<std::string>();
    if (!IsHexDigest(digest)) Bad("pcr " + std::to_string(index) + " digest is not hex");
    if (!doc.pcrs.emplace(index, digest).second) {
      Bad("duplicate pcr index " + std::to_string(index));
    }
  }

  if (!j.contains("certificate_chain") || !j["certificate_chain"].is_array() ||
      j["certificate_chain"].empty()) {
    Bad("certificate_chain must be a non-empty array");
  }
  for (const auto& c : j["certificate_chain"]) {
    if (!c.is_string() || c.get<std::string>().empty()) Bad("certificates must be non-empty strings");
    doc.certificate_chain.push_back(c.get<std::string>());
  }

  if (!j.contains("expires_at") || !j["expires_at"].is_string()) Bad("expires_at missing");
  const auto expires = ParseRfc3339(j["expires_at"].get<std::string>());
  if (!expires) Bad("expires_at is not an RFC 3339 timestamp");
  doc.expires_at = *expires;

  if (!j.contains("nonce") || !j["nonce"].is_string() || j["nonce"].get<std::string>().empty()) {
    Bad("nonce must be a non-empty string");
  }
  doc.nonce = j["nonce"].get<std::string>();

  if (!j.contains("signature_present") || !j["signature_present"].is_boolean()) {
    Bad("signature_present must be a boolean");
  }
  doc.signature_present = j["signature_present"].get<bool>();
  return doc;
}

std::string AttestationDocToJson(const AttestationDoc& doc) {
  nlohmann::ordered_json j;
  j["module_id"] = doc.module_id;
  j["pcrs"] = nlohmann::ordered_json::array();
  for (const auto& [index, digest] : doc.pcrs) {
    j["pcrs"].push_back({{"index", index}, {"digest", digest}});
  }
  j["certificate_chain"] = doc.certificate_chain;
  j["expires_at"] = FormatRfc3339(doc.expires_at);
  j["nonce"] = doc.nonce;
  j["signature_present"] = doc.signature_present;
  return j.dump(2) + "\n";
}

AttestationPolicy ParseAttestationPolicy(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  if (!j.is_object()) Bad("policy must be an object");
  AttestationPolicy policy;
  if (!j.contains("allowed_pcrs") || !j["allowed_pcrs"].is_object() ||
      j["allowed_pcrs"].empty()) {
    Bad("allowed_pcrs must be a non-empty object");
  }
  for (const auto& [key, digests] : j["allowed_pcrs"].items()) {
    std::size_t used = 0;
    int index = -1;
    try {
      index = std::stoi(key, &used);
    } catch (const std::exception&) {
    }
    if (used != key.size() || index < 0 || index > 31) Bad("bad pcr index '" + key + "'");
    if (!digests.is_array() || digests.empty()) {
      Bad("pcr " + key + " needs at least one allowed digest");
    }
    auto& set = policy.allowed_pcrs[index];
    for (const auto& d : digests) {
      if (!d.is_string() || !IsHexDigest(d.get<std::string>())) {
        Bad("pcr " + key + " allowlist entry is not a hex digest");
      }
      set.insert(d.get<std::string>());
    }
  }
  if (j.contains("required_chain_length")) {
    const auto& n = j["required_chain_length"];
    if (!n.is_number_unsigned() || n.get<std::size_t>() == 0) {
      Bad("required_chain_length must be a positive integer");
    }
    policy.required_chain_length = n.get<std::size_t>();
  }
  if (j.contains("now")) {
    if (!j["now"].is_string()) Bad("now must be a timestamp string");
    policy.now = ParseRfc3339(j["now"].get<std::string>());
    if (!policy.now) Bad("now is not an RFC 3339 timestamp");
  }
  return policy;
}

Verdict VerifyAttestation(const AttestationDoc& doc, const AttestationPolicy& policy) {
  if (doc.pcrs.empty() || doc.certificate_chain.empty() || doc.nonce.empty()) {
    return Verdict::Reject(kRejectStructure, "missing pcrs, chain or nonce");
  }
  for (const auto& [index, digest] : doc.pcrs) {
    if (!IsHexDigest(digest)) {
      return Verdict::Reject(kRejectStructure, "pcr " + std::to_string(index));
    }
  }
  if (!doc.signature_present) return Verdict::Reject(kRejectSignatureMissing);
  for (const auto& [index, allowed] : policy.allowed_pcrs) {
    auto it = doc.pcrs.find(index);
    if (it == doc.pcrs.end()) {
      return Verdict::Reject(kRejectPcrMismatch, "pcr " + std::to_string(index) + " absent");
    }
    if (allowed.count(it->second) == 0) {
      return Verdict::Reject(kRejectPcrMismatch,
                             "pcr " + std::to_string(index) + " not in allowlist");
    }
  }
  if (doc.certificate_chain.size() < policy.required_chain_length) {
    return Verdict::Reject(kRejectChainTooShort,
                           std::to_string(doc.certificate_chain.size()) + " < " +
                               std::to_string(policy.required_chain_length));
  }
  const SystemTime now = policy.now.value_or(std::chrono::system_clock::now());
  if (doc.expires_at <= now) {
    return Verdict::Reject(kRejectExpired, "expired at " + FormatRfc3339(doc.expires_at));
  }
  return Verdict::Accept();
}

Verdict VerifyAttestationJson(const std::string& doc_json,
                              const AttestationPolicy& policy) {
  AttestationDoc doc;
  try {
    doc = ParseAttestationDoc(doc_json);
  } catch (const std::invalid_argument& e) {
    return Verdict::Reject(kRejectStructure, e.what());
  }
  return VerifyAttestation(doc, policy);
}

}  // namespace redact_gate::stubs
