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

#ifndef REDACT_GATE_WORKLOADS_H_
#define REDACT_GATE_WORKLOADS_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "redact_gate/detect.h"
#include "redact_gate/rng.h"
#include "redact_gate/types.h"

namespace redact_gate {

// Fabricated identity pools. The fixed pools (persons, orgs, addresses,
// codenames) come from one internal seed so that the gazetteer and the
// generator agree; structured values are drawn per sample.
class IdentityCorpus {
 public:
  static const IdentityCorpus& Standard();

  const std::vector<std::string>& persons() const { return persons_; }
  const std::vector<std::string>& orgs() const { return orgs_; }
  const std::vector<std::string>& addresses() const { return addresses_; }
  const std::vector<std::string>& codenames() const { return codenames_; }

  std::string Person(Rng& rng) const { return rng.Pick(persons_); }
  std::string Org(Rng& rng) const { return rng.Pick(orgs_); }
  std::string Address(Rng& rng) const { return rng.Pick(addresses_); }
  std::string Codename(Rng& rng) const { return rng.Pick(codenames_); }
  std::string Email(Rng& rng) const;
  std::string Phone(Rng& rng) const;
  std::string Ssn(Rng& rng) const;
  std::string EmployeeId(Rng& rng) const;
  std::string IpAddress(Rng& rng) const;
  std::string Hostname(Rng& rng) const;
  std::string AwsKey(Rng& rng) const;
  std::string ApiKey(Rng& rng) const;
  std::string BearerToken(Rng& rng) const;
  std::string Password(Rng& rng) const;
  std::string PemType(Rng& rng) const;
  std::string PemBody(Rng& rng) const;
  std::string FunctionName(Rng& rng) const;
  std::string SchemaName(Rng& rng) const;
  std::string ImplicitClause(Rng& rng) const;

 private:
  IdentityCorpus();
  std::vector<std::string> persons_;
  std::vector<std::string> orgs_;
  std::vector<std::string> addresses_;
  std::vector<std::string> codenames_;
};

// Dictionary NER seeded from the corpus pools, with `coverage` of each
// kind's entries kept.
Gazetteer BuildCorpusGazetteer(double coverage, std::uint64_t seed);

// A template body with [[kind]] / [[kind:label]] slots (equal labels share
// a value within one sample), [[pem]] blocks, and [[=filler]] slots that are
// not annotated.
struct Template {
  std::string id;
  Workload workload;
  std::string body;
};

const std::vector<Template>& Templates(Workload workload);

// Renders one template; offsets of every filled slot are recorded.
Sample RenderTemplate(const Template& tmpl, const std::string& sample_id,
                      Rng& rng);

// Default plan: 500 / 300 / 200 / 300 samples.
std::size_t DefaultSampleCount(Workload workload);

// Deterministic in (workload, seed, count). Throws std::invalid_argument
// when count is zero.
std::vector<Sample> Generate(Workload workload, std::uint64_t seed,
                             std::size_t count);

class JsonlError : public std::runtime_error {
 public:
  JsonlError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// One object per line: {id, workload, text, annotations:[{start,end,kind,text}]}.
std::string SampleToJsonl(const Sample& sample);
std::string SamplesToJsonl(const std::vector<Sample>& samples);
std::vector<Sample> SamplesFromJsonl(std::string_view content);

void WriteJsonl(const std::vector<Sample>& samples, const std::string& path);
std::vector<Sample> ReadJsonl(const std::string& path);

}  // namespace redact_gate

#endif  // REDACT_GATE_WORKLOADS_H_
