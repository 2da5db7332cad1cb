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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any fails. argv[1] is the redact_gate CLI binary.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "redact_gate/config.h"
#include "redact_gate/detect.h"
#include "redact_gate/eval.h"
#include "redact_gate/gateway.h"
#include "redact_gate/pipeline.h"
#include "redact_gate/stubs/attestation.h"
#include "redact_gate/stubs/mpc.h"
#include "redact_gate/workloads.h"

namespace rg = redact_gate;
namespace st = redact_gate::stubs;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void Report(int id, const std::string& name, const std::function<Outcome()>& check) {
  Outcome o;
  const auto started = Clock::now();
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - started).count();
  if (!o.pass) ++failures;
  std::printf("%s %2d %-28s %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string Fmt(const char* fmt, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c, d);
  return buf;
}

rg::PipelineConfig Config(const std::string& name) {
  return rg::LoadConfigFile(rg::DataDir() + "/configs/" + name);
}

const std::vector<rg::Sample>& Corpus(rg::Workload wl) {
  static const auto* all = [] {
    auto* m = new std::map<rg::Workload, std::vector<rg::Sample>>;
    for (rg::Workload w : rg::kAllWorkloads) {
      (*m)[w] = rg::Generate(w, 42, rg::DefaultSampleCount(w));
    }
    return m;
  }();
  return all->at(wl);
}

std::vector<rg::Sample> AllSamples() {
  std::vector<rg::Sample> out;
  for (rg::Workload w : rg::kAllWorkloads) {
    out.insert(out.end(), Corpus(w).begin(), Corpus(w).end());
  }
  return out;
}

json ChatBody(const std::string& text) {
  return {{"model", "cloud-model"}, {"messages", {{{"role", "user"}, {"content", text}}}}};
}

// Wire captures from the round-trip and routing checks, paired with the
// sample text they came from.
std::vector<std::pair<std::string, std::string>> g_captures;

void KeepCaptures(const rg::MockUpstream& upstream,
                  const std::vector<std::string>& texts) {
  const auto captures = upstream.captures();
  for (std::size_t i = 0; i < captures.size() && i < texts.size(); ++i) {
    g_captures.emplace_back(texts[i], captures[i]);
  }
}

Outcome BaselineIdentity() {
  const auto config = Config("baseline.yaml");
  const auto reports = rg::RunEval(config, rg::LoadResources(config), AllSamples(), {4});
  std::string detail;
  bool ok = reports.size() == 4;
  for (const auto& r : reports) {
    ok = ok && r.exact_rate == 1.0 && r.exact_leaks == r.annotations && r.annotations > 0;
    detail += std::string(rg::WorkloadName(r.workload)) + "=" + Fmt("%.3f ", r.exact_rate);
  }
  return {ok, "exact leak " + detail};
}

Outcome RoundTrip() {
  const auto config = Config("b.yaml");
  auto upstream = std::make_shared<rg::MockUpstream>();
  rg::ProxyService service(config, rg::LoadResources(config), upstream,
                           std::make_shared<rg::Stats>());
  std::size_t ok = 0, total = 0;
  std::vector<std::string> forwarded;
  std::string first_bad;
  for (const auto& s : AllSamples()) {
    ++total;
    const auto reply = service.HandleChatCompletions(ChatBody(s.text).dump());
    if (reply.status == 200) {
      forwarded.push_back(s.text);
      const auto body = json::parse(reply.body);
      if (body["choices"][0]["message"]["content"] == s.text) {
        ++ok;
        continue;
      }
    }
    if (first_bad.empty()) first_bad = s.id;
  }
  KeepCaptures(*upstream, forwarded);
  std::string detail = std::to_string(ok) + "/" + std::to_string(total) + " restored exactly";
  if (!first_bad.empty()) detail += ", first mismatch " + first_bad;
  return {ok == total && total == 1300, detail};
}

Outcome StructuredRecall() {
  const auto config = Config("b.yaml");
  const auto reports = rg::RunEval(config, rg::LoadResources(config), AllSamples(), {4});
  const std::vector<rg::SensitivityKind> kinds = {
      rg::SensitivityKind::kEmail,       rg::SensitivityKind::kPhone,
      rg::SensitivityKind::kIpAddress,   rg::SensitivityKind::kSsn,
      rg::SensitivityKind::kAwsKey,      rg::SensitivityKind::kPemMarker,
      rg::SensitivityKind::kBearerToken, rg::SensitivityKind::kEmployeeId,
      rg::SensitivityKind::kHostname};
  std::map<rg::SensitivityKind, rg::KindLeak> totals;
  for (const auto& r : reports) {
    for (const auto& [kind, k] : r.per_kind) {
      totals[kind].annotations += k.annotations;
      totals[kind].exact += k.exact;
    }
  }
  bool ok = true;
  std::string detail;
  for (auto kind : kinds) {
    const auto& k = totals[kind];
    ok = ok && k.annotations > 0 && k.exact == 0;
    detail += std::string(rg::KindName(kind)) + "=" + std::to_string(k.exact) + "/" +
              std::to_string(k.annotations) + " ";
  }
  return {ok, "exact leaks " + detail};
}

Outcome Coreference() {
  auto config = Config("b.yaml");
  config.gazetteer_coverage = 1.0;
  const auto resources = rg::LoadResources(config);
  std::size_t groups = 0, undetected = 0, bad = 0;
  std::string first_bad;
  for (const auto& s : AllSamples()) {
    std::map<std::pair<rg::SensitivityKind, std::string>, std::size_t> counts;
    for (const auto& a : s.annotations) ++counts[{a.kind(), a.text()}];
    bool any = false;
    for (const auto& [key, k] : counts) any = any || k >= 2;
    if (!any) continue;
    auto out = rg::ProcessRequest({{"user", s.text}}, config, resources, s.id);
    if (!out.is_cloud()) continue;
    const std::string outgoing = out.OutgoingText();
    const auto listing = out.cloud().map.Placeholders();
    for (const auto& [key, k] : counts) {
      if (k < 2) continue;
      std::vector<std::string> serving;
      for (const auto& [ph, kind] : listing) {
        const std::string* original = out.cloud().map.Lookup(ph);
        if (original != nullptr && *original == key.second) serving.push_back(ph);
      }
      if (serving.empty()) {
        ++undetected;
        continue;
      }
      ++groups;
      std::size_t uses = 0;
      for (auto pos = outgoing.find(serving[0]); pos != std::string::npos;
           pos = outgoing.find(serving[0], pos + 1)) {
        ++uses;
      }
      if (serving.size() != 1 || uses < k || outgoing.find(key.second) != std::string::npos) {
        ++bad;
        if (first_bad.empty()) first_bad = s.id;
      }
    }
  }
  std::string detail = std::to_string(groups - bad) + "/" + std::to_string(groups) +
                       " repeated-value groups share one placeholder (" +
                       std::to_string(undetected) + " undetected groups skipped)";
  if (!first_bad.empty()) detail += ", first bad " + first_bad;
  return {bad == 0 && groups > 0, detail};
}

Outcome DpCalibration() {
  const double p = rg::DpSubstitutionProb(4.0);
  const auto lexicon = rg::LoadLexiconFile(rg::DataDir() + "/lexicon.tsv");
  std::vector<std::string> words;
  for (const auto& [w, alts] : lexicon.entries()) {
    if (w.size() >= 3) words.push_back(w);
  }
  rg::Rng rng(2026);
  std::size_t eligible = 0, substituted = 0;
  for (int chunk = 0; chunk < 25; ++chunk) {
    std::string text;
    for (int i = 0; i < 4200; ++i) {
      text += rng.Pick(words);
      text += (i % 12 == 11) ? ". " : " ";
    }
    const auto out = rg::ApplyDpNoise(text, 4.0, 1000 + chunk, lexicon);
    eligible += out.eligible_words;
    substituted += out.substituted_words;
  }
  const double fraction = static_cast<double>(substituted) / static_cast<double>(eligible);
  const bool ok = std::fabs(p - 0.01799) <= 1e-5 && eligible >= 100000 &&
                  fraction >= 0.013 && fraction <= 0.023;
  return {ok, Fmt("p(4)=%.5f, observed %.5f over %.0f eligible words", p, fraction,
                  static_cast<double>(eligible))};
}

Outcome DpMonotone() {
  const double p2 = rg::DpSubstitutionProb(2.0);
  const double p4 = rg::DpSubstitutionProb(4.0);
  const double p8 = rg::DpSubstitutionProb(8.0);
  const bool ok = p2 > p4 && p4 > p8 && std::fabs(p2 - 0.11920) <= 1e-5 &&
                  std::fabs(p4 - 0.01799) <= 1e-5 && std::fabs(p8 - 0.00034) <= 1e-5;
  return {ok, Fmt("p(2)=%.5f p(4)=%.5f p(8)=%.5f", p2, p4, p8)};
}

Outcome RephraseRollback() {
  const std::string input =
      "Investigate why kafka brokers started rebalancing partitions during nightly "
      "backups on the western cluster, contact ops-lead@corp.example with findings";
  rg::PipelineConfig b_only;
  const auto resources = rg::LoadResources(b_only);
  const std::string redacted =
      rg::ProcessRequest({{"user", input}}, b_only, resources, "r").OutgoingText();
  const auto terms = rg::ExtractKeyTerms(redacted);
  const auto placeholders = rg::FindPlaceholders(redacted);
  if (terms.size() < 7 || placeholders.empty()) {
    return {false, "fixture has too few key terms"};
  }
  // Candidates keep the placeholders and the first m key terms.
  auto candidate = [&](std::size_t m) {
    std::string c = "Please check";
    for (std::size_t i = 0; i < m; ++i) c += " " + terms[i];
    for (const auto& ph : placeholders) {
      c += " " + redacted.substr(ph.start, ph.end - ph.start);
    }
    return c;
  };
  const std::size_t n = terms.size();
  const std::size_t keep_hi = static_cast<std::size_t>(std::ceil(0.70 * n - 1e-9));
  const std::size_t keep_lo = keep_hi - 1;

  auto run = [&](const std::string& reply) {
    rg::PipelineConfig config;
    config.enable_rephrase = true;
    auto res = resources;
    rg::MockScript script;
    script.Always(reply);
    res.client = std::make_shared<rg::MockChatClient>(script);
    return rg::ProcessRequest({{"user", input}}, config, res, "r");
  };
  const auto low = run(candidate(keep_lo));
  const auto high = run(candidate(keep_hi));
  const bool low_ok = low.rephrase_rollbacks == 1 && low.OutgoingText() == redacted;
  const bool high_ok = high.rephrase_rollbacks == 0 && high.OutgoingText() == candidate(keep_hi);

  // A candidate that keeps every term but drops a placeholder is rejected too.
  std::string dropped = "Please check";
  for (const auto& t : terms) dropped += " " + t;
  const auto drop = run(dropped);
  const bool drop_ok = drop.rephrase_rollbacks == 1 && drop.OutgoingText() == redacted;

  return {low_ok && high_ok && drop_ok,
          Fmt("%.0f key terms; keep %.0f rolled back, keep %.0f accepted", n, keep_lo,
              keep_hi) +
              (drop_ok ? ", placeholder drop rolled back" : ", placeholder drop NOT rolled back")};
}

Outcome StrictRefusal() {
  rg::PipelineConfig config;
  config.strict_mode = true;
  auto resources = rg::LoadResources(config);
  // Stand-in detector: one rule that reports codenames at confidence 0.4.
  resources.rules = std::make_shared<rg::RuleSet>(std::vector<rg::RuleSpec>{
      {rg::SensitivityKind::kCodename, "\\bProject [A-Z][a-z]+\\b", 0.4}});
  auto upstream = std::make_shared<rg::MockUpstream>();
  rg::ProxyService service(config, resources, upstream, std::make_shared<rg::Stats>());
  const auto reply =
      service.HandleChatCompletions(ChatBody("Summarise the status of Project Heron").dump());
  const auto outcome = rg::ProcessRequest({{"user", "Summarise the status of Project Heron"}},
                                          config, resources, "r");
  const bool ok = reply.status == 451 && outcome.is_refused() && upstream->call_count() == 0;
  return {ok, "HTTP " + std::to_string(reply.status) + ", upstream calls " +
                  std::to_string(upstream->call_count())};
}

const std::map<rg::Workload, std::uint64_t> kLocalPerMille = {
    {rg::Workload::kWL1, 944}, {rg::Workload::kWL2, 747},
    {rg::Workload::kWL3, 540}, {rg::Workload::kWL4, 380}};

bool ScriptedLocal(const rg::Sample& s) {
  return rg::Fnv1a64(s.text) % 1000 < kLocalPerMille.at(s.workload);
}

Outcome RoutingLaw() {
  auto config = Config("b.yaml");
  config.enable_route = true;
  config.generate_local_answers = false;
  config.name = "A+B";
  auto resources = rg::LoadResources(config);
  std::map<std::string, rg::Workload> workload_of;
  for (const auto& s : AllSamples()) workload_of[s.text] = s.workload;
  rg::MockScript script;
  script.When(
      [&](const rg::ChatRequest& r) {
        const std::string& text = r.messages.back().content;
        auto it = workload_of.find(text);
        return it != workload_of.end() &&
               rg::Fnv1a64(text) % 1000 < kLocalPerMille.at(it->second);
      },
      "TRIVIAL");
  script.Always("COMPLEX");
  resources.client = std::make_shared<rg::MockChatClient>(script);

  // Oracle: routing from the hash alone, cloud leaks from a B-only run.
  const auto b_config = Config("b.yaml");
  const auto b_resources = rg::LoadResources(b_config);

  bool ok = true;
  std::string detail;
  auto upstream = std::make_shared<rg::MockUpstream>();
  rg::ProxyService service(config, resources, upstream, std::make_shared<rg::Stats>());
  std::vector<std::string> forwarded;
  for (rg::Workload wl : rg::kAllWorkloads) {
    const auto& samples = Corpus(wl);
    const auto results = rg::EvaluateSamples(samples, config, resources, {4});
    const auto report = rg::Aggregate(config.name, wl, results);
    std::size_t expected_local = 0, expected_leaks = 0, local_leaks = 0, annotations = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& s = samples[i];
      annotations += s.annotations.size();
      const bool local = ScriptedLocal(s);
      if (local) {
        ++expected_local;
        for (const auto& l : results[i].leaks) local_leaks += l.exact || l.partial;
        ok = ok && results[i].route == rg::SampleRoute::kLocal;
      } else {
        const auto b = rg::EvaluateSample(s, b_config, b_resources);
        for (const auto& l : b.leaks) expected_leaks += l.exact;
        ok = ok && results[i].route == rg::SampleRoute::kCloud;
      }
      const auto reply = service.HandleChatCompletions(ChatBody(s.text).dump());
      if (reply.status == 200) forwarded.push_back(s.text);
      ok = ok && (local ? reply.status == 501 : reply.status == 200);
    }
    const double expected_rate =
        static_cast<double>(expected_leaks) / static_cast<double>(annotations);
    ok = ok && report.local == expected_local && local_leaks == 0 &&
         report.exact_leaks == expected_leaks && report.exact_rate == expected_rate;
    detail += std::string(rg::WorkloadName(wl)) +
              Fmt(" local %.1f%% exact %.3f (oracle %.3f); ",
                  100.0 * report.local / report.samples, report.exact_rate, expected_rate);
  }
  KeepCaptures(*upstream, forwarded);
  return {ok, detail};
}

Outcome TokenDelta() {
  const auto config = Config("b.yaml");
  const auto reports =
      rg::RunEval(config, rg::LoadResources(config), Corpus(rg::Workload::kWL1), {4});
  const double delta = reports.at(0).token_delta_pct;
  return {delta < 0.0, Fmt("WL1 word-count delta %.2f%%", delta)};
}

Outcome Latency() {
  auto config = Config("b.yaml");
  const auto resources = rg::LoadResources(config);
  const auto results = rg::EvaluateSamples(Corpus(rg::Workload::kWL1), config, resources, {1});
  const auto report = rg::Aggregate("B", rg::Workload::kWL1, results);
  return {report.samples == 500 && report.latency_median_ms < 50.0,
          Fmt("median %.3f ms, p95 %.3f ms over %.0f samples", report.latency_median_ms,
              report.latency_p95_ms, static_cast<double>(report.samples))};
}

Outcome WireCapture() {
  const auto config = Config("b.yaml");
  const auto resources = rg::LoadResources(config);
  std::size_t checked = 0, spans = 0, leaks = 0;
  for (const auto& [text, wire] : g_captures) {
    const auto body = json::parse(wire);
    std::string contents;
    for (const auto& m : body["messages"]) contents += m["content"].get<std::string>() + "\n";
    const auto detection = rg::Detect(text, config, *resources.rules, *resources.gazetteer);
    for (const auto& s : detection.spans) {
      ++spans;
      if (contents.find(s.text()) != std::string::npos) ++leaks;
    }
    ++checked;
  }
  return {checked > 0 && leaks == 0,
          std::to_string(checked) + " captured requests, " + std::to_string(spans) +
              " detected spans, " + std::to_string(leaks) + " found on the wire"};
}

Outcome Mpc() {
  const std::size_t vocab = 512, dim = 16;
  const auto table = st::RandomEmbeddingTable(vocab, dim, 13);
  rg::Rng rng(13);
  bool ok = true;
  std::size_t exact = 0, total = 0;
  for (std::size_t parties : {2u, 3u, 5u}) {
    for (int i = 0; i < 100; ++i) {
      const std::size_t token = rng.Below(vocab);
      const auto shares = st::MpcShare(st::OneHot(token, vocab), parties, rng.Next());
      const bool match = st::MpcEmbed(shares, table) == table.Row(token);
      exact += match;
      ++total;
    }
    const auto t = st::SimulateMpcTimings(100, parties);
    ok = ok && std::fabs(t.setup_ms - 200.0) <= 20.0;
    for (double ms : t.per_token_ms) ok = ok && std::fabs(ms - 50.0) <= 5.0;
  }
  ok = ok && exact == total;
  return {ok, std::to_string(exact) + "/" + std::to_string(total) +
                  " reconstructions equal the direct lookup; timings within 10%"};
}

Outcome Attestation() {
  auto read = [](const std::string& name) {
    std::ifstream in(rg::DataDir() + "/attestation/" + name);
    std::stringstream b;
    b << in.rdbuf();
    return b.str();
  };
  const auto policy = st::ParseAttestationPolicy(read("policy.json"));
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"accept.json", ""},
      {"pcr_flip.json", std::string(st::kRejectPcrMismatch)},
      {"expired.json", std::string(st::kRejectExpired)},
      {"truncated_chain.json", std::string(st::kRejectChainTooShort)}};
  std::vector<std::string> docs;
  for (const auto& [file, unused] : cases) docs.push_back(read(file));
  bool ok = true;
  std::string detail;
  double worst_ms = 0.0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto started = Clock::now();
    const auto verdict = st::VerifyAttestationJson(docs[i], policy);
    const double ms =
        std::chrono::duration<double, std::milli>(Clock::now() - started).count();
    worst_ms = std::max(worst_ms, ms);
    const bool match = cases[i].second.empty() ? verdict.accepted
                                               : !verdict.accepted && verdict.reason == cases[i].second;
    ok = ok && match;
    detail += cases[i].first + "->" + (verdict.accepted ? "accepted" : verdict.reason) + " ";
  }
  ok = ok && worst_ms < 100.0;
  return {ok, detail + Fmt("(slowest %.3f ms)", worst_ms)};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream b;
  b << in.rdbuf();
  return b.str();
}

Outcome Determinism(const std::string& cli) {
  if (cli.empty() || !fs::exists(cli)) return {false, "CLI binary not given"};
  const fs::path root = fs::temp_directory_path() / "redact_gate_acceptance";
  fs::remove_all(root);
  bool ok = true;
  std::string detail;
  std::vector<std::string> reports;
  for (const char* run : {"a", "b"}) {
    const fs::path dir = root / run;
    fs::create_directories(dir);
    const std::string gen = "\"" + cli + "\" gen --workload all --seed 42 --out \"" +
                            dir.string() + "\"";
    ok = ok && std::system(gen.c_str()) == 0;
    std::string eval = "\"" + cli + "\" eval --config \"" + rg::DataDir() +
                       "/configs/b.yaml\" --config \"" + rg::DataDir() +
                       "/configs/b_h.yaml\" --no-timing --threads 4 --out \"" +
                       (dir / "report.json").string() + "\"";
    for (const char* wl : {"wl1", "wl2", "wl3", "wl4"}) {
      eval += " --workloads \"" + (dir / (std::string(wl) + ".jsonl")).string() + "\"";
    }
    ok = ok && std::system(eval.c_str()) == 0;
    reports.push_back(Slurp(dir / "report.json"));
  }
  std::size_t identical = 0;
  for (const char* wl : {"wl1", "wl2", "wl3", "wl4"}) {
    const std::string name = std::string(wl) + ".jsonl";
    const std::string a = Slurp(root / "a" / name);
    if (!a.empty() && a == Slurp(root / "b" / name)) ++identical;
  }
  const bool same_report = !reports[0].empty() && reports[0] == reports[1];
  ok = ok && identical == 4 && same_report;
  detail = std::to_string(identical) + "/4 JSONL files identical, report " +
           (same_report ? "identical" : "differs") + " (" +
           std::to_string(reports[0].size()) + " bytes)";
  fs::remove_all(root);
  return {ok, detail};
}

bool BruteForcePartial(const std::string& value, const std::string& outgoing) {
  if (outgoing.find(value) != std::string::npos) return false;
  for (std::size_t len = 4; len <= value.size(); ++len) {
    for (std::size_t start = 0; start + len <= value.size(); ++start) {
      if (outgoing.find(value.substr(start, len)) != std::string::npos) return true;
    }
  }
  return false;
}

Outcome PartialOracle() {
  const auto& wl1 = Corpus(rg::Workload::kWL1);
  const auto& wl2 = Corpus(rg::Workload::kWL2);
  const auto config = Config("b.yaml");
  const auto resources = rg::LoadResources(config);
  std::size_t checked = 0, positives = 0, mismatches = 0;
  for (int i = 0; i < 10; ++i) {
    const rg::Sample& s = i < 5 ? wl1[i] : wl2[i];
    std::string outgoing =
        rg::ProcessRequest({{"user", s.text}}, config, resources, s.id).OutgoingText();
    if (i % 2 == 1) {
      // Keep a prefix of every value so that partial leaks occur.
      outgoing = s.text;
      for (auto it = s.annotations.rbegin(); it != s.annotations.rend(); ++it) {
        const std::size_t keep = (it->end() - it->start()) / 2;
        outgoing.replace(it->start() + keep, it->end() - it->start() - keep, "~");
      }
    }
    for (const auto& a : s.annotations) {
      const bool brute = BruteForcePartial(a.text(), outgoing);
      positives += brute;
      mismatches += brute != rg::LeakPartial(a.text(), outgoing);
      ++checked;
    }
  }
  return {mismatches == 0 && positives > 0,
          std::to_string(checked) + " annotations, " + std::to_string(positives) +
              " partial leaks, " + std::to_string(mismatches) + " disagreements"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  Report(1, "baseline identity", BaselineIdentity);
  Report(2, "round trip", RoundTrip);
  Report(3, "structured-kind recall", StructuredRecall);
  Report(4, "coreference stability", Coreference);
  Report(5, "dp calibration", DpCalibration);
  Report(6, "dp monotonicity", DpMonotone);
  Report(7, "rephrase rollback", RephraseRollback);
  Report(8, "strict-mode refusal", StrictRefusal);
  Report(9, "routing leak law", RoutingLaw);
  Report(10, "token-delta sign", TokenDelta);
  Report(11, "latency", Latency);
  Report(12, "wire capture", WireCapture);
  Report(13, "mpc stub", Mpc);
  Report(14, "attestation verifier", Attestation);
  Report(15, "determinism", [&] { return Determinism(cli); });
  Report(16, "partial-leak oracle", PartialOracle);
  std::printf("%d of 16 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
