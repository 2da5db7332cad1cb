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

#include "redact_gate/workloads.h"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace redact_gate {
namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<Template> Build(Workload workload, std::string_view prefix,
                            std::vector<std::string> bodies) {
  std::vector<Template> out;
  out.reserve(bodies.size());
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    std::string id(prefix);
    id += "-t";
    if (i + 1 < 10) id += '0';
    id += std::to_string(i + 1);
    out.push_back({std::move(id), workload, std::move(bodies[i])});
  }
  return out;
}

// PII-heavy prose.
std::vector<Template> Wl1Templates() {
  return Build(Workload::kWL1, "wl1", {
R"tpl(Hi team, please update the onboarding record for [[person:a]] ([[employee_id]]). Their new email is [[email]] and the best number is [[phone]]. Mail the badge to [[address]] and let [[person:a]] know when it ships.)tpl",
R"tpl(Reminder: [[person:a]] from [[org_name]] is visiting on [[=day]]. If anything changes, reach them at [[phone]] or [[email]].)tpl",
R"tpl(Summarize this complaint. Customer [[person]] (SSN on file [[ssn]]) says the refund never arrived at [[address]]. Callback number: [[phone]].)tpl",
R"tpl(Draft a polite reply to [[person:a]] at [[email]]. They asked whether [[org_name]] can move the contract review to [[=date]]. Sign it from [[person:b]] and thank [[person:a]] for the patience.)tpl",
R"tpl(The payroll export for [[person:a]], [[employee_id]], failed on [[hostname]] ([[ip_address]]). Can you explain what the error below means?
Error: row [[=nn]] rejected, duplicate SSN [[ssn]].)tpl",
R"tpl(Meeting notes, [[=date]]. Attendees: [[person]], [[person]] and [[person]] from [[org_name]]. Action item: send the revised quote to [[email]] by [[=day]].)tpl",
R"tpl(Please rewrite this paragraph to sound more professional: "hey, [[person:a]] here, i moved to [[address]] so send the checks there. my cell is [[phone]] now."
Keep the meaning the same.)tpl",
R"tpl(Background check request for candidate [[person]]. SSN: [[ssn]]. Current address: [[address]]. Previous employer: [[org_name]]. Contact: [[email]].)tpl",
R"tpl(Translate to French: Dear [[person:a]], your appointment at [[org_name]] is confirmed for [[=day]] at [[=n]] pm. Questions? Call [[phone]].)tpl",
R"tpl(I need a short incident summary. At [[=n]]:[[=nn]] the VPN gateway [[ip_address]] rejected logins from [[person]] ([[employee_id]]) and [[person]] ([[employee_id]]). Ticket [[=ticket]].)tpl",
R"tpl(Write a reference letter for [[person:a]], who worked with me at [[org_name]] for [[=n]] years. I would hire [[person:a]] again without hesitation. My details for the footer: [[person:b]], [[email]], [[phone]].)tpl",
R"tpl(Can you format this as a table? [[person]], [[email]], [[phone]]; [[person]], [[email]], [[phone]]; [[person]], [[email]], [[phone]].)tpl",
R"tpl(The tenant at [[address]] reported a leak. The landlord is [[person]] of [[org_name]]; their office line is [[phone]]. What should the notice say?)tpl",
R"tpl(Help me fill in this benefits form. Name: [[person]]. Employee ID: [[employee_id]]. SSN: [[ssn]]. Home address: [[address]].)tpl",
R"tpl(Please check the tone of this message before I send it to [[email]]: "[[person:a]], the invoice from [[org_name]] is overdue and I have tried calling [[phone]] [[=n]] times."
Is it too harsh?)tpl",
R"tpl(Our wiki lists the on-call engineer as [[person]] ([[email]]). The monitoring box is [[hostname]] at [[ip_address]]. Who should I escalate to if nobody answers?)tpl",
R"tpl(Proofread: "[[person:a]] and [[person:b]] will represent [[org_name]] at the summit. Shipping for the booth goes to [[address]]. Questions go to [[email]]. [[person:a]] will confirm the booth layout."
Fix grammar only.)tpl",
R"tpl(Why would a bank reject this wire? Sender [[person]], account holder SSN [[ssn]], beneficiary [[org_name]], contact [[phone]], reference [[=ticket]].)tpl",
  });
}

// Secret-heavy configuration.
std::vector<Template> Wl2Templates() {
  return Build(Workload::kWL2, "wl2", {
R"tpl(Why does my app fail to start with this .env?
AWS_ACCESS_KEY_ID=[[aws_key]]
AWS_REGION=us-west-2
DB_PASSWORD=[[password]]
LOG_LEVEL=debug)tpl",
R"tpl(Convert this to YAML:
OPENAI_API_KEY=[[api_key]]
CACHE_HOST=[[hostname:h]]
CACHE_TTL=[[=nn]]
HEALTHCHECK_URL=http://[[hostname:h]]:[[=port]]/ping)tpl",
R"tpl(My curl call returns 401, what am I missing?
curl -H "Authorization: [[bearer_token]]" https://[[hostname]]:[[=port]]/v1/reports)tpl",
R"tpl(Review this docker-compose service:
services:
  worker:
    image: registry/worker:[[=version]]
    environment:
      - API_KEY=[[api_key]]
      - POSTGRES_PASSWORD=[[password]]
      - QUEUE_HOST=[[hostname]])tpl",
R"tpl(Is it safe to commit this key file? It starts like this:
[[pem]])tpl",
R"tpl(Terraform plan is failing on these variables:
variable "access_key" { default = "[[aws_key]]" }
variable "db_host"    { default = "[[hostname]]" }
variable "db_pass"    { default = "[[password]]" })tpl",
R"tpl(Fix the indentation in this config.yaml:
upstream:
 url: https://[[hostname]]/api
 token: [[api_key]]
retries: [[=n]])tpl",
R"tpl(The deploy job logs show:
exporting AWS_ACCESS_KEY_ID=[[aws_key]]
pushing to [[ip_address]]:[[=port]]
auth header [[bearer_token]]
Why did the push time out?)tpl",
R"tpl(Explain what this Kubernetes secret does:
apiVersion: v1
kind: Secret
stringData:
  SERVICE_TOKEN: [[api_key]]
  ADMIN_PASSWORD: [[password]])tpl",
R"tpl(ssh keeps saying "invalid format" for this key, why?
[[pem]]
Permissions are 0644 on [[hostname]].)tpl",
R"tpl(Rewrite this Python settings block to read from the environment instead:
STRIPE_KEY = "[[api_key]]"
AWS_KEY = "[[aws_key]]"
SMTP_PASSWORD = "[[password]]")tpl",
R"tpl(Can you tell what is wrong with this request?
POST /v2/upload HTTP/1.1
Host: [[hostname]]
Authorization: [[bearer_token]]
Content-Length: [[=nn]])tpl",
R"tpl(Our Jenkins credentials file looks like this:
deploy_user=ci
deploy_password=[[password]]
notify_email=[[email]]
Should these live in a vault instead?)tpl",
R"tpl(Generate a .gitignore entry that would have stopped me committing this:
GITHUB_TOKEN=[[api_key]]
AWS_ACCESS_KEY_ID=[[aws_key]])tpl",
  });
}

// Implicit identity.
std::vector<Template> Wl3Templates() {
  return Build(Workload::kWL3, "wl3", {
R"tpl(Write a tactful email asking [[implicit]] to step back from the vendor selection.)tpl",
R"tpl(How should HR handle a complaint about [[implicit]]?)tpl",
R"tpl(Draft talking points for a meeting with [[implicit]]. Keep it under one page.)tpl",
R"tpl(Everyone knows it is [[implicit]]. How do I raise the conflict of interest without naming them?)tpl",
R"tpl(Summarize the risks of promoting [[implicit]] before the merger closes.)tpl",
R"tpl(I overheard that [[implicit]] is leaving. Should I tell my manager?)tpl",
R"tpl(Rewrite this so it is less gossipy: apparently [[implicit]] has been skipping the safety reviews.)tpl",
R"tpl(We need a reference check on [[implicit]]. What questions are fair to ask?)tpl",
R"tpl(Is it ethical to share with the board that [[implicit]] failed the background check?)tpl",
R"tpl(Give me a neutral way to describe [[implicit]] in the audit findings.)tpl",
R"tpl(Plan a farewell lunch for [[implicit]]; about [[=nn]] people are coming.)tpl",
R"tpl(Help me reply to a reporter asking about [[implicit]].)tpl",
R"tpl(Our investor wants to know why [[implicit]] was not at the offsite. What can I say?)tpl",
R"tpl(Write a short bio for [[implicit]] for the conference program.)tpl",
R"tpl(Should I forward this rumour about [[implicit]] to compliance? It came from [[implicit]].)tpl",
R"tpl(Draft an accommodation plan for [[implicit]].)tpl",
R"tpl(What are the legal risks if [[implicit]] sues over the reorg?)tpl",
R"tpl(Write a performance note for [[implicit]] that focuses only on deliverables.)tpl",
R"tpl(Compare two options for replacing [[implicit]] on the steering committee.)tpl",
R"tpl(Both [[implicit]] and [[implicit]] want the same budget. How do I mediate?)tpl",
R"tpl(Turn this into a calendar invite: sync with [[implicit]] on [[=day]] at [[=n]].)tpl",
  });
}

// Proprietary code.
std::vector<Template> Wl4Templates() {
  return Build(Workload::kWL4, "wl4", {
R"tpl(Why is this slow?
```python
def [[function_name:f]](conn, tenant_id):
    rows = conn.execute("SELECT * FROM [[schema_name]] WHERE tenant_id = %s", (tenant_id,))
    return [r for r in rows if r.status == "open"]
```
It is called from the [[codename]] nightly job.)tpl",
R"tpl(Add retries to this Go client:
```go
func [[function_name:f]](ctx context.Context) error {
    req, _ := http.NewRequest("GET", "https://[[hostname]]/v1/export", nil)
    req.Header.Set("X-Api-Key", "[[api_key]]")
    _, err := http.DefaultClient.Do(req)
    return err
}
```)tpl",
R"tpl(Explain this query plan problem:
```sql
SELECT a.id, SUM(p.amount)
FROM [[schema_name:a]] a
JOIN [[schema_name:b]] p ON p.account_id = a.id
WHERE a.created_at > now() - interval '[[=nn]] days'
GROUP BY a.id;
```)tpl",
R"tpl(Write unit tests for [[function_name:f]] in project [[codename:p]]:
```python
def [[function_name:f]](records):
    return sorted(records, key=lambda r: r["score"], reverse=True)[:[[=nn]]]
```)tpl",
R"tpl(This GraphQL resolver returns null for [[codename]] users:
```graphql
query {
  [[function_name]](limit: [[=nn]]) { id owner { email } }
}
```
Backed by table [[schema_name]].)tpl",
R"tpl(Shrink this Dockerfile:
```dockerfile
FROM python:3.11-slim
ENV AWS_ACCESS_KEY_ID=[[aws_key]]
ENV DB_PASSWORD=[[password]]
RUN pip install -r requirements.txt
CMD ["python", "-m", "[[codename]].worker"]
```)tpl",
R"tpl(What does this log mean?
[[=date]] ERROR [[codename]] [[function_name]] failed: connection refused [[hostname]]:[[=port]]
[[=date]] WARN  retrying [[function_name]] against [[schema_name]])tpl",
R"tpl(Refactor into smaller functions:
```python
def [[function_name:f]](cfg):
    client = connect("[[hostname]]", password="[[password]]")
    data = client.read("[[schema_name]]")
    return [[function_name:g]](data, cfg)
```)tpl",
R"tpl(Port this to TypeScript:
```go
// Used by [[codename]] billing.
func [[function_name]](t Tenant) float64 {
    return t.Usage * rateFor(t.Plan)
}
```
The rates live in [[schema_name]].)tpl",
R"tpl(Find the bug in this migration:
```sql
ALTER TABLE [[schema_name:a]] ADD COLUMN owner_id BIGINT;
UPDATE [[schema_name:a]] SET owner_id = (SELECT id FROM [[schema_name:b]] LIMIT 1);
```
It ran as part of [[codename]] release [[=version]].)tpl",
R"tpl(Review this cron wrapper:
```python
import os
os.environ["API_TOKEN"] = "[[api_key]]"
from [[codename]] import [[function_name]]
[[function_name]]()
```)tpl",
  });
}

std::string FillerValue(std::string_view name, Rng& rng) {
  static const std::vector<std::string> kDays = {
      "Monday", "Tuesday", "Wednesday", "Thursday", "Friday"};
  if (name == "day") return rng.Pick(kDays);
  if (name == "n") return std::to_string(2 + rng.Below(8));
  if (name == "nn") return std::to_string(10 + rng.Below(90));
  if (name == "port") return std::to_string(8000 + rng.Below(1000));
  if (name == "date") {
    const auto month = 1 + rng.Below(12);
    const auto day = 1 + rng.Below(28);
    return "2026-" + std::string(month < 10 ? "0" : "") + std::to_string(month) +
           "-" + std::string(day < 10 ? "0" : "") + std::to_string(day);
  }
  if (name == "ticket") return "OPS-" + std::to_string(1000 + rng.Below(9000));
  if (name == "version") {
    return "v" + std::to_string(1 + rng.Below(4)) + "." +
           std::to_string(rng.Below(20)) + "." + std::to_string(rng.Below(10));
  }
  throw std::invalid_argument("unknown filler slot '" + std::string(name) + "'");
}

std::string SlotValue(SensitivityKind kind, Rng& rng) {
  const IdentityCorpus& c = IdentityCorpus::Standard();
  switch (kind) {
    case SensitivityKind::kEmail: return c.Email(rng);
    case SensitivityKind::kPhone: return c.Phone(rng);
    case SensitivityKind::kIpAddress: return c.IpAddress(rng);
    case SensitivityKind::kSsn: return c.Ssn(rng);
    case SensitivityKind::kAwsKey: return c.AwsKey(rng);
    case SensitivityKind::kApiKey: return c.ApiKey(rng);
    case SensitivityKind::kBearerToken: return "Bearer " + c.BearerToken(rng);
    case SensitivityKind::kPassword: return c.Password(rng);
    case SensitivityKind::kHostname: return c.Hostname(rng);
    case SensitivityKind::kEmployeeId: return c.EmployeeId(rng);
    case SensitivityKind::kPerson: return c.Person(rng);
    case SensitivityKind::kOrgName: return c.Org(rng);
    case SensitivityKind::kAddress: return c.Address(rng);
    case SensitivityKind::kCodename: return c.Codename(rng);
    case SensitivityKind::kImplicit: return c.ImplicitClause(rng);
    case SensitivityKind::kSchemaName: return c.SchemaName(rng);
    case SensitivityKind::kFunctionName: return c.FunctionName(rng);
    case SensitivityKind::kPemMarker: break;
  }
  throw std::invalid_argument("slot kind has no generator");
}

struct Pending {
  std::size_t start;
  std::size_t end;
  SensitivityKind kind;
};

}  // namespace

const std::vector<Template>& Templates(Workload workload) {
  static const std::vector<Template> kWl1 = Wl1Templates();
  static const std::vector<Template> kWl2 = Wl2Templates();
  static const std::vector<Template> kWl3 = Wl3Templates();
  static const std::vector<Template> kWl4 = Wl4Templates();
  switch (workload) {
    case Workload::kWL1: return kWl1;
    case Workload::kWL2: return kWl2;
    case Workload::kWL3: return kWl3;
    case Workload::kWL4: return kWl4;
  }
  throw std::invalid_argument("unknown workload");
}

Sample RenderTemplate(const Template& tmpl, const std::string& sample_id,
                      Rng& rng) {
  const IdentityCorpus& corpus = IdentityCorpus::Standard();
  std::string text;
  std::vector<Pending> pending;
  std::map<std::string, std::string> labelled;
  const std::string& body = tmpl.body;

  auto emit = [&](const std::string& value, SensitivityKind kind) {
    pending.push_back({text.size(), text.size() + value.size(), kind});
    text += value;
  };

  std::size_t pos = 0;
  while (pos < body.size()) {
    const std::size_t open = body.find("[[", pos);
    if (open == std::string::npos) {
      text.append(body, pos, std::string::npos);
      break;
    }
    text.append(body, pos, open - pos);
    const std::size_t close = body.find("]]", open + 2);
    if (close == std::string::npos) {
      throw std::invalid_argument("template " + tmpl.id + ": unterminated slot");
    }
    const std::string slot = body.substr(open + 2, close - open - 2);
    pos = close + 2;

    if (!slot.empty() && slot[0] == '=') {
      text += FillerValue(std::string_view(slot).substr(1), rng);
      continue;
    }
    if (slot == "pem") {
      const std::string type = corpus.PemType(rng);
      emit("-----BEGIN " + type + "-----", SensitivityKind::kPemMarker);
      text += '\n';
      emit(corpus.PemBody(rng), SensitivityKind::kPemMarker);
      text += '\n';
      emit("-----END " + type + "-----", SensitivityKind::kPemMarker);
      continue;
    }
    const std::size_t colon = slot.find(':');
    const std::string kind_name = slot.substr(0, colon);
    const auto kind = ParseKind(kind_name);
    if (!kind) {
      throw std::invalid_argument("template " + tmpl.id + ": unknown slot kind '" +
                                  kind_name + "'");
    }
    std::string value;
    if (colon != std::string::npos) {
      auto [it, inserted] = labelled.try_emplace(slot);
      if (inserted) it->second = SlotValue(*kind, rng);
      value = it->second;
    } else {
      value = SlotValue(*kind, rng);
    }
    emit(value, *kind);
  }

  Sample sample;
  sample.id = sample_id;
  sample.workload = tmpl.workload;
  sample.text = std::move(text);
  for (const Pending& p : pending) {
    sample.annotations.emplace_back(sample.text, p.start, p.end, p.kind);
  }
  ValidateSample(sample);
  return sample;
}

std::size_t DefaultSampleCount(Workload workload) {
  switch (workload) {
    case Workload::kWL1: return 500;
    case Workload::kWL2: return 300;
    case Workload::kWL3: return 200;
    case Workload::kWL4: return 300;
  }
  throw std::invalid_argument("unknown workload");
}

std::vector<Sample> Generate(Workload workload, std::uint64_t seed,
                             std::size_t count) {
  if (count == 0) throw std::invalid_argument("count must be at least 1");
  const auto& templates = Templates(workload);
  const std::string name(WorkloadName(workload));
  std::string prefix;
  for (char c : name) prefix.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));

  Rng rng(seed ^ Fnv1a64(name));
  std::vector<Sample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::string n = std::to_string(i + 1);
    std::string id = prefix + "-" + std::string(n.size() < 5 ? 5 - n.size() : 0, '0') + n;
    out.push_back(RenderTemplate(templates[i % templates.size()], id, rng));
  }
  return out;
}

std::string SampleToJsonl(const Sample& sample) {
  ordered_json j;
  j["id"] = sample.id;
  j["workload"] = std::string(WorkloadName(sample.workload));
  j["text"] = sample.text;
  ordered_json anns = ordered_json::array();
  for (const Annotation& a : sample.annotations) {
    ordered_json aj;
    aj["start"] = a.start();
    aj["end"] = a.end();
    aj["kind"] = std::string(KindName(a.kind()));
    aj["text"] = a.text();
    anns.push_back(std::move(aj));
  }
  j["annotations"] = std::move(anns);
  return j.dump();
}

std::string SamplesToJsonl(const std::vector<Sample>& samples) {
  std::string out;
  for (const Sample& s : samples) {
    out += SampleToJsonl(s);
    out += '\n';
  }
  return out;
}

std::vector<Sample> SamplesFromJsonl(std::string_view content) {
  std::vector<Sample> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      Sample s;
      s.id = j.at("id").get<std::string>();
      if (s.id.empty()) throw std::invalid_argument("empty id");
      const auto wl = ParseWorkload(j.at("workload").get<std::string>());
      if (!wl) throw std::invalid_argument("unknown workload");
      s.workload = *wl;
      s.text = j.at("text").get<std::string>();
      for (const auto& a : j.at("annotations")) {
        const auto start = a.at("start").get<std::size_t>();
        const auto end = a.at("end").get<std::size_t>();
        if (end <= start) throw std::invalid_argument("annotation end <= start");
        const auto kind = ParseKind(a.at("kind").get<std::string>());
        if (!kind) throw std::invalid_argument("unknown annotation kind");
        Annotation ann(s.text, start, end, *kind);
        if (a.contains("text") && a.at("text").get<std::string>() != ann.text()) {
          throw std::invalid_argument("annotation text does not match offsets");
        }
        s.annotations.push_back(std::move(ann));
      }
      ValidateSample(s);
      out.push_back(std::move(s));
    } catch (const std::exception& e) {
      throw JsonlError(line_no, e.what());
    }
  }
  return out;
}

void WriteJsonl(const std::vector<Sample>& samples, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << SamplesToJsonl(samples);
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::vector<Sample> ReadJsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return SamplesFromJsonl(buffer.str());
}

}  // namespace redact_gate
