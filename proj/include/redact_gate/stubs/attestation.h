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

#ifndef REDACT_GATE_STUBS_ATTESTATION_H_
#define REDACT_GATE_STUBS_ATTESTATION_H_

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace redact_gate::stubs {

using SystemTime = std::chrono::system_clock::time_point;

// Enclave attestation document. Signatures are simulated: only their
// presence is recorded.
struct AttestationDoc {
  std::string module_id;
  std::map<int, std::string> pcrs;              // index -> lowercase hex digest
  std::vector<std::string> certificate_chain;   // leaf first
  SystemTime expires_at;
  std::string nonce;
  bool signature_present = false;
};

struct AttestationPolicy {
  std::map<int, std::set<std::string>> allowed_pcrs;
  std::size_t required_chain_length = 1;
  // Fixed verification time; the system clock when unset.
  std::optional<SystemTime> now;
};

// Reject reasons, in the order the checks run.
inline constexpr std::string_view kRejectStructure = "structure";
inline constexpr std::string_view kRejectSignatureMissing = "signature_missing";
inline constexpr std::string_view kRejectPcrMismatch = "pcr_mismatch";
inline constexpr std::string_view kRejectChainTooShort = "chain_too_short";
inline constexpr std::string_view kRejectExpired = "expired";

struct Verdict {
  bool accepted = false;
  std::string reason;  // empty when accepted
  std::string detail;

  static Verdict Accept() { return {true, {}, {}}; }
  static Verdict Reject(std::string_view reason, std::string detail = {}) {
    return {false, std::string(reason), std::move(detail)};
  }
};

// "2027-03-01T12:00:00Z" or with a +hh:mm / -hh:mm offset. nullopt when
// malformed.
std::optional<SystemTime> ParseRfc3339(std::string_view text);
std::string FormatRfc3339(SystemTime t);

// Throws std::invalid_argument describing the first structural problem.
AttestationDoc ParseAttestationDoc(const std::string& json_text);
AttestationPolicy ParseAttestationPolicy(const std::string& json_text);
std::string AttestationDocToJson(const AttestationDoc& doc);

// Checks run in order: structure, signature, PCR allowlist, chain length,
// expiry. The first failure names the verdict.
Verdict VerifyAttestation(const AttestationDoc& doc, const AttestationPolicy& policy);
// Parses first; a document that does not parse is rejected as "structure".
Verdict VerifyAttestationJson(const std::string& doc_json,
                              const AttestationPolicy& policy);

}  // namespace redact_gate::stubs

#endif  // REDACT_GATE_STUBS_ATTESTATION_H_
