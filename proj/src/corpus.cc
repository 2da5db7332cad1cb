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

#include <cctype>
#include <functional>
#include <map>
#include <set>

#include "redact_gate/workloads.h"

namespace redact_gate {
namespace {

constexpr std::uint64_t kCorpusSeed = 0x1d3a7c5e2b9f4061ULL;

const std::vector<std::string> kFirstNames = {
    "Marisol", "Tobias",  "Ingrid",   "Desmond", "Priya",   "Kenji",
    "Amara",   "Lucian",  "Freya",    "Oskar",   "Nadia",   "Elias",
    "Simone",  "Rafael",  "Yara",     "Caspian", "Leonie",  "Matteo",
    "Aisha",   "Bastian", "Greta",    "Idris",   "Juno",    "Kaveh",
    "Liesel",  "Milo",    "Noor",     "Orla",    "Pavel",   "Quinn",
    "Rosalind", "Soren",  "Talia",    "Ulrich",  "Vesna",   "Wendell",
    "Ximena",  "Yusuf",   "Zofia",    "Anselm",  "Beatrix", "Cormac",
    "Delphine", "Emeric", "Fenna",    "Gideon",  "Hollis",  "Ines",
};

const std::vector<std::string> kLastNames = {
    "Vega",       "Halloran",   "Okonkwo",   "Lindqvist",  "Marchetti",
    "Tanaka",     "Oyelaran",   "Brandt",    "Castellanos", "Dufresne",
    "Eriksen",    "Fairweather", "Galloway", "Haddad",     "Ivanova",
    "Jablonski",  "Kowalczyk",  "Lachance",  "Moreau",     "Nakashima",
    "Ostrowski",  "Pellegrini", "Quintero",  "Rasmussen",  "Szabo",
    "Thorne",     "Uchida",     "Valdivia",  "Whitcombe",  "Yilmaz",
    "Zielinski",  "Abernathy",  "Bellweather", "Crowhurst", "Delacroix",
    "Eberhardt",  "Fontaine",   "Grimaldi",  "Holloway",   "Iverson",
    "Jovanovic",  "Kristiansen", "Larkspur", "Montague",   "Norberg",
    "Oduya",      "Petrakis",   "Sandoval",
};

const std::vector<std::string> kOrgPrefixes = {
    "Halvorsen",  "Brightwater", "Copperline", "Northgate",  "Silverpine",
    "Ambermoor",  "Redfern",     "Bluecrest",  "Stonebridge", "Harrowgate",
    "Lumenfield", "Greyhaven",   "Oakhollow",  "Westmarch",  "Tidewater",
    "Ironvale",   "Kestrelwood", "Marigold",   "Pinecrest",  "Quarrystone",
    "Ravenholt",  "Saltmarsh",   "Thistledown", "Wrenfield",
};

const std::vector<std::string> kOrgSuffixes = {
    "Logistics", "Analytics", "Biotech", "Capital",
    "Systems",   "Foods",     "Health",  "Robotics",
};

const std::vector<std::string> kStreets = {
    "Alder",   "Birchwood", "Cedar Hollow", "Dunmore",  "Elmsworth", "Foxglove",
    "Garnet",  "Heron",     "Juniper",      "Kingfisher", "Larch",    "Mulberry",
    "Nettle",  "Orchard",   "Primrose",     "Quillan",  "Rowan",     "Sorrel",
    "Tamarack", "Umber",    "Violet",       "Willow Bend", "Yarrow",  "Zinnia",
    "Ashcombe", "Bracken",  "Clover",       "Damson",   "Eastwick",  "Fernhill",
};

const std::vector<std::string> kStreetSuffixes = {
    "Street", "Avenue", "Road", "Lane", "Drive", "Court", "Way",
};

const std::vector<std::string> kCities = {
    "Portland", "Tacoma",   "Boise",   "Spokane", "Eugene",  "Fresno",
    "Reno",     "Sacramento", "Provo", "Billings", "Duluth", "Madison",
    "Dayton",   "Tulsa",    "Wichita", "Omaha",
};

const std::vector<std::string> kCodenames = {
    "Nightjar", "Bluefin",  "Tamarind", "Sundial",  "Obsidian", "Halcyon",
    "Marlin",   "Zephyr",   "Basilisk", "Aurora",   "Gossamer", "Lodestar",
    "Meridian", "Nebula",   "Orchid",   "Pinnacle", "Quasar",   "Riptide",
    "Sentinel", "Tempest",  "Umbra",    "Vantage",  "Wayfarer", "Yonder",
    "Zenith",   "Anvil",    "Bramble",  "Cinder",   "Driftwood", "Foxtrot",
};

const std::vector<std::string> kHostWords = {
    "ledger", "billing", "auth",   "vault",  "search", "metrics", "payroll",
    "queue",  "cache",   "report", "gateway", "batch", "notify",  "sso",
    "build",  "deploy",  "warehouse", "crm",  "hr",    "backup",
};

const std::vector<std::string> kHostRoles = {"db", "api", "svc", "worker",
                                             "primary", "replica", "node"};

const std::vector<std::string> kHostSuffixes = {"internal", "corp", "lan",
                                                "local"};

const std::vector<std::string> kPasswordWords = {
    "Harbor", "Quartz", "Maple",  "Falcon", "Winter", "Copper", "Sable",
    "Ember",  "Violet", "Thunder", "Glacier", "Saffron", "Pepper", "Lantern",
};

const std::vector<std::string> kPemTypes = {
    "RSA PRIVATE KEY", "PRIVATE KEY", "EC PRIVATE KEY", "OPENSSH PRIVATE KEY",
    "ENCRYPTED PRIVATE KEY",
};

const std::vector<std::string> kVerbs = {
    "reconcile", "compute", "fetch",    "sync",  "normalize", "rebalance",
    "hydrate",   "dispatch", "validate", "flush", "ingest",    "score",
};

const std::vector<std::string> kNouns = {
    "ledger", "invoice", "payroll", "risk",  "churn", "tenant",
    "shipment", "claim", "quota",   "cohort", "refund", "margin",
};

const std::vector<std::string> kFnSuffixes = {"batch", "v2", "internal",
                                              "nightly", "delta", ""};

const std::vector<std::string> kSchemas = {"billing", "hr_core", "fin_ops",
                                           "crm",     "telemetry", "payroll_db",
                                           "risk_mart"};

const std::vector<std::string> kTables = {
    "invoices_v2",  "employees",  "ledger_entries", "accounts",
    "events_raw",   "payouts",    "salary_bands",   "customer_notes",
    "refund_queue", "tenant_map",
};

// Pieces of implicit-identity clauses.
const std::vector<std::string> kRoles = {
    "the CFO",          "the head of legal",     "the chief nurse",
    "the lead architect", "the youngest partner", "the founding engineer",
    "the night-shift supervisor", "the deputy mayor", "the principal",
    "the head coach",   "the only pharmacist",   "the senior auditor",
};

const std::vector<std::string> kRelations = {
    "wife", "husband", "brother", "sister", "daughter", "son", "former partner",
};

const std::vector<std::string> kPlaces = {
    "our Boise office",       "the Tacoma warehouse",  "the east wing clinic",
    "the downtown branch",    "the night desk",        "the Reno depot",
    "the hillside campus",    "the second-floor lab",
};

const std::vector<std::string> kActs = {
    "ran for city council last spring",
    "won the regional chess open twice",
    "testified at the pipeline hearing",
    "was on the local news after the flood",
    "coaches the under-12 rugby team",
    "wrote the viral post about the layoffs",
    "left right after the audit started",
    "is the only one with a service dog",
    "was hired back after the lawsuit",
    "organised the walkout in March",
};

const std::vector<std::string> kConditions = {
    "who is on medical leave for a heart condition",
    "who just disclosed a cancer diagnosis to HR",
    "who is quietly interviewing with a rival",
    "who was arrested at the protest last month",
    "who is going through a custody dispute",
    "whose visa renewal was denied",
};

std::string Digits(Rng& rng, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s.push_back(static_cast<char>('0' + rng.Below(10)));
  return s;
}

std::string FromAlphabet(Rng& rng, std::string_view alphabet, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s.push_back(alphabet[rng.Below(alphabet.size())]);
  return s;
}

constexpr std::string_view kUpperDigits = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
constexpr std::string_view kAlnum =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
constexpr std::string_view kBase64 =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string Lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string Capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::vector<std::string> DistinctPool(Rng& rng, std::size_t size,
                                      const std::function<std::string()>& make) {
  std::set<std::string> seen;
  std::vector<std::string> out;
  while (out.size() < size) {
    std::string v = make();
    if (seen.insert(v).second) out.push_back(std::move(v));
  }
  (void)rng;
  return out;
}

}  // namespace

IdentityCorpus::IdentityCorpus() {
  Rng rng(kCorpusSeed);
  persons_ = DistinctPool(rng, 240, [&] {
    return rng.Pick(kFirstNames) + " " + rng.Pick(kLastNames);
  });
  orgs_ = DistinctPool(rng, 120, [&] {
    return rng.Pick(kOrgPrefixes) + " " + rng.Pick(kOrgSuffixes);
  });
  addresses_ = DistinctPool(rng, 200, [&] {
    return std::to_string(100 + rng.Below(9800)) + " " + rng.Pick(kStreets) +
           " " + rng.Pick(kStreetSuffixes) + ", " + rng.Pick(kCities);
  });
  codenames_ = kCodenames;
}

const IdentityCorpus& IdentityCorpus::Standard() {
  static const IdentityCorpus kCorpus;
  return kCorpus;
}

std::string IdentityCorpus::Email(Rng& rng) const {
  static const std::vector<std::string> kTlds = {".com", ".io", ".co", ".net"};
  std::string local = Lower(rng.Pick(kFirstNames));
  switch (rng.Below(3)) {
    case 0:
      local += "." + Lower(rng.Pick(kLastNames));
      break;
    case 1:
      local = local.substr(0, 1) + Lower(rng.Pick(kLastNames));
      break;
    default:
      local += Digits(rng, 2);
      break;
  }
  return local + "@" + Lower(rng.Pick(kOrgPrefixes)) + rng.Pick(kTlds);
}

std::string IdentityCorpus::Phone(Rng& rng) const {
  const std::string area = std::to_string(201 + rng.Below(780));
  const std::string exchange = std::to_string(200 + rng.Below(800));
  const std::string line = Digits(rng, 4);
  switch (rng.Below(4)) {
    case 0:
      return "(" + area + ") " + exchange + "-" + line;
    case 1:
      return area + "-" + exchange + "-" + line;
    case 2:
      return "+1 " + area + " " + exchange + " " + line;
    default:
      return area + "." + exchange + "." + line;
  }
}

std::string IdentityCorpus::Ssn(Rng& rng) const {
  return std::to_string(900 + rng.Below(100)) + "-" +
         std::to_string(10 + rng.Below(90)) + "-" +
         std::to_string(1000 + rng.Below(9000));
}

std::string IdentityCorpus::EmployeeId(Rng& rng) const {
  return "EMP-" + Digits(rng, 4 + static_cast<int>(rng.Below(3)));
}

std::string IdentityCorpus::IpAddress(Rng& rng) const {
  switch (rng.Below(3)) {
    case 0:
      return "10." + std::to_string(rng.Below(256)) + "." +
             std::to_string(rng.Below(256)) + "." + std::to_string(1 + rng.Below(254));
    case 1:
      return "192.168." + std::to_string(rng.Below(256)) + "." +
             std::to_string(1 + rng.Below(254));
    default:
      return "172." + std::to_string(16 + rng.Below(16)) + "." +
             std::to_string(rng.Below(256)) + "." + std::to_string(1 + rng.Below(254));
  }
}

std::string IdentityCorpus::Hostname(Rng& rng) const {
  std::string host = rng.Pick(kHostWords) + "-" + rng.Pick(kHostRoles);
  if (rng.Bernoulli(0.5)) host += "-0" + std::to_string(1 + rng.Below(9));
  return host + "." + rng.Pick(kHostSuffixes);
}

std::string IdentityCorpus::AwsKey(Rng& rng) const {
  return "AKIA" + FromAlphabet(rng, kUpperDigits, 16);
}

std::string IdentityCorpus::ApiKey(Rng& rng) const {
  switch (rng.Below(5)) {
    case 0:
    case 1:
      return "sk-" + FromAlphabet(rng, kAlnum, 32);
    case 2:
      return "pk_" + FromAlphabet(rng, kAlnum, 24);
    case 3:
      return "tok_" + FromAlphabet(rng, kAlnum, 20);
    default:
      // Vendor formats outside the generic family.
      return "ghp_" + FromAlphabet(rng, kAlnum, 36);
  }
}

std::string IdentityCorpus::BearerToken(Rng& rng) const {
  return "eyJ" + FromAlphabet(rng, kAlnum, 21) + "." +
         FromAlphabet(rng, kAlnum, 30) + "." + FromAlphabet(rng, kAlnum, 22);
}

std::string IdentityCorpus::Password(Rng& rng) const {
  static constexpr std::string_view kSymbols = "!#%&*?";
  switch (rng.Below(3)) {
    case 0:
      return rng.Pick(kPasswordWords) + std::string(1, kSymbols[rng.Below(kSymbols.size())]) +
             Digits(rng, 4);
    case 1:
      return Lower(rng.Pick(kPasswordWords)) + "-" + Lower(rng.Pick(kPasswordWords)) +
             "-" + Digits(rng, 2);
    default:
      return FromAlphabet(rng, kAlnum, 6) + std::string(1, kSymbols[rng.Below(kSymbols.size())]) +
             FromAlphabet(rng, kAlnum, 5);
  }
}

std::string IdentityCorpus::PemType(Rng& rng) const { return rng.Pick(kPemTypes); }

std::string IdentityCorpus::PemBody(Rng& rng) const {
  std::string body;
  const int lines = 3 + static_cast<int>(rng.Below(3));
  for (int i = 0; i < lines; ++i) {
    if (i > 0) body += '\n';
    body += FromAlphabet(rng, kBase64, i + 1 == lines ? 24 + static_cast<int>(rng.Below(40)) : 64);
  }
  return body;
}

std::string IdentityCorpus::FunctionName(Rng& rng) const {
  const std::string verb = rng.Pick(kVerbs);
  const std::string noun = rng.Pick(kNouns);
  const std::string suffix = rng.Pick(kFnSuffixes);
  if (rng.Bernoulli(0.5)) {
    return verb + "_" + noun + (suffix.empty() ? "" : "_" + suffix);
  }
  return verb + Capitalize(noun) + Capitalize(suffix);
}

std::string IdentityCorpus::SchemaName(Rng& rng) const {
  return rng.Pick(kSchemas) + "." + rng.Pick(kTables);
}

std::string IdentityCorpus::ImplicitClause(Rng& rng) const {
  switch (rng.Below(6)) {
    case 0:
      return rng.Pick(kRoles) + " of " + Org(rng) + " whose " +
             rng.Pick(kRelations) + " works at the competitor";
    case 1:
      return rng.Pick(kRoles) + " at " + rng.Pick(kPlaces) + " who " +
             rng.Pick(kActs);
    case 2:
      return rng.Pick(kRoles) + " " + rng.Pick(kConditions);
    case 3:
      return "the person at " + rng.Pick(kPlaces) + " who " + rng.Pick(kActs);
    case 4:
      return rng.Pick(kRoles) + " of " + Org(rng) + " " + rng.Pick(kConditions);
    default:
      return "the " + rng.Pick(kRelations) + " of " + rng.Pick(kRoles).substr(4) +
             " at " + rng.Pick(kPlaces);
  }
}

Gazetteer BuildCorpusGazetteer(double coverage, std::uint64_t seed) {
  const IdentityCorpus& corpus = IdentityCorpus::Standard();
  std::map<SensitivityKind, std::vector<std::string>> entries = {
      {SensitivityKind::kPerson, corpus.persons()},
      {SensitivityKind::kOrgName, corpus.orgs()},
      {SensitivityKind::kAddress, corpus.addresses()},
  };
  return Gazetteer(std::move(entries), {}).WithCoverage(coverage, seed);
}

}  // namespace redact_gate
