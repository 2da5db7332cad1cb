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

#include "redact_gate/eval.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "json.hpp"

namespace redact_gate {
namespace {

using Clock = std::chrono::steady_clock;

std::size_t CountWords(std::string_view text) {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : text) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double Round3(double v) { return std::round(v * 1000.0) / 1000.0; }

std::string Fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", Round3(v) + 0.0);
  return buf;
}

double Median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
}

// Nearest-rank percentile.
double Percentile(std::vector<double> v, double p) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  std::size_t rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(v.size())));
  rank = std::clamp<std::size_t>(rank, 1, v.size());
  return v[rank - 1];
}

}  // namespace

bool LeakExact(std::string_view annotation_text, std::string_view outgoing) {
  if (annotation_text.empty()) return false;
  return outgoing.find(annotation_text) != std::string_view::npos;
}

bool LeakPartial(std::string_view annotation_text, std::string_view outgoing) {
  if (annotation_text.size() < kPartialLeakMinLength) return false;
  if (LeakExact(annotation_text, outgoing)) return false;
  // Any longer matching substring contains a matching window of the minimum
  // length, so windows are enough.
  for (std::size_t i = 0; i + kPartialLeakMinLength <= annotation_text.size(); ++i) {
    if (outgoing.find(annotation_text.substr(i, kPartialLeakMinLength)) !=
        std::string_view::npos) {
      return true;
    }
  }
  return false;
}

double FalsePositiveRate(const std::vector<Span>& spans,
                         const std::vector<Annotation>& annotations) {
  if (spans.empty()) return 0.0;
  std::size_t stray = 0;
  for (const Span& s : spans) {
    const bool hit = std::any_of(annotations.begin(), annotations.end(),
                                 [&](const Annotation& a) {
                                   return s.start() < a.end() && a.start() < s.end();
                                 });
    if (!hit) ++stray;
  }
  return Ratio(stray, spans.size());
}

std::string_view SampleRouteName(SampleRoute route) {
  switch (route) {
    case SampleRoute::kLocal: return "local";
    case SampleRoute::kCloud: return "cloud";
    case SampleRoute::kRefused: return "refused";
    case SampleRoute::kFailed: return "failed";
  }
  return "unknown";
}

SampleResult EvaluateSample(const Sample& sample, const PipelineConfig& config,
                            const PipelineResources& resources) {
  SampleResult r;
  r.id = sample.id;
  r.original_words = CountWords(sample.text);
  try {
    const auto started = Clock::now();
    PipelineOutcome outcome =
        ProcessRequest({{"user", sample.text}}, config, resources, sample.id);
    r.latency_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - started).count();
    r.rollbacks = outcome.rephrase_rollbacks;
    if (outcome.is_local()) {
      r.route = SampleRoute::kLocal;
    } else if (outcome.is_refused()) {
      r.route = SampleRoute::kRefused;
    } else {
      r.route = SampleRoute::kCloud;
      r.outgoing = outcome.OutgoingText();
      outcome.cloud().map.Clear();
    }
    if (!outcome.detections.empty()) {
      const auto& spans = outcome.detections.front();
      r.detected_spans = spans.size();
      for (const Span& s : spans) {
        if (FalsePositiveRate({s}, sample.annotations) > 0.0) ++r.false_positive_spans;
      }
    }
  } catch (const std::exception& e) {
    r.route = SampleRoute::kFailed;
    r.error = e.what();
    return r;
  }
  r.outgoing_words = CountWords(r.outgoing);
  for (std::size_t i = 0; i < sample.annotations.size(); ++i) {
    const Annotation& a = sample.annotations[i];
    LeakRecord leak;
    leak.sample_id = sample.id;
    leak.annotation_index = i;
    leak.kind = a.kind();
    leak.exact = LeakExact(a.text(), r.outgoing);
    leak.partial = !leak.exact && LeakPartial(a.text(), r.outgoing);
    r.leaks.push_back(leak);
  }
  return r;
}

double KindLeak::exact_rate() const { return Ratio(exact, annotations); }
double KindLeak::partial_rate() const { return Ratio(partial, annotations); }

Report Aggregate(const std::string& config_name, Workload workload,
                 const std::vector<SampleResult>& results) {
  Report rep;
  rep.config_name = config_name;
  rep.workload = workload;
  rep.samples = results.size();
  std::size_t stray = 0;
  std::size_t cloud_original_words = 0;
  std::size_t cloud_outgoing_words = 0;
  std::vector<double> latencies;
  for (const SampleResult& r : results) {
    switch (r.route) {
      case SampleRoute::kLocal: ++rep.local; break;
      case SampleRoute::kCloud: ++rep.cloud; break;
      case SampleRoute::kRefused: ++rep.refused; break;
      case SampleRoute::kFailed: ++rep.failed; continue;
    }
    latencies.push_back(r.latency_ms);
    rep.rollbacks += r.rollbacks;
    rep.detected_spans += r.detected_spans;
    stray += r.false_positive_spans;
    if (r.route == SampleRoute::kCloud) {
      cloud_original_words += r.original_words;
      cloud_outgoing_words += r.outgoing_words;
    }
    for (const LeakRecord& l : r.leaks) {
      KindLeak& k = rep.per_kind[l.kind];
      ++k.annotations;
      ++rep.annotations;
      if (l.exact) {
        ++k.exact;
        ++rep.exact_leaks;
      }
      if (l.partial) {
        ++k.partial;
        ++rep.partial_leaks;
      }
    }
  }
  rep.exact_rate = Ratio(rep.exact_leaks, rep.annotations);
  rep.partial_rate = Ratio(rep.partial_leaks, rep.annotations);
  rep.combined_rate = Ratio(rep.exact_leaks + rep.partial_leaks, rep.annotations);
  rep.false_positive_rate = Ratio(stray, rep.detected_spans);
  if (cloud_original_words > 0) {
    rep.token_delta_pct =
        100.0 * (static_cast<double>(cloud_outgoing_words) -
                 static_cast<double>(cloud_original_words)) /
        static_cast<double>(cloud_original_words);
  }
  rep.latency_median_ms = Median(latencies);
  rep.latency_p95_ms = Percentile(latencies, 0.95);
  return rep;
}

std::vector<SampleResult> EvaluateSamples(const std::vector<Sample>& samples,
                                          const PipelineConfig& config,
                                          const PipelineResources& resources,
                                          const EvalOptions& options) {
  std::vector<SampleResult> results(samples.size());
  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads,
                                      static_cast<unsigned>(samples.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      results[i] = EvaluateSample(samples[i], config, resources);
    }
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < samples.size(); i = next++) {
        results[i] = EvaluateSample(samples[i], config, resources);
      }
    });
  }
  for (auto& th : pool) th.join();
  return results;
}

std::vector<Report> RunEval(const PipelineConfig& config,
                            const PipelineResources& resources,
                            const std::vector<Sample>& samples,
                            const EvalOptions& options) {
  std::vector<Report> reports;
  for (Workload wl : kAllWorkloads) {
    std::vector<Sample> subset;
    for (const Sample& s : samples) {
      if (s.workload == wl) subset.push_back(s);
    }
    if (subset.empty()) continue;
    reports.push_back(Aggregate(config.name, wl,
                                EvaluateSamples(subset, config, resources, options)));
  }
  return reports;
}

std::optional<bool> ParseJudgeAnswer(std::string_view answer) {
  std::string a;
  for (char c : answer) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      a.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!std::isspace(static_cast<unsigned char>(c)) && c != '.' && c != '!') {
      return std::nullopt;
    }
  }
  if (a == "yes") return true;
  if (a == "no") return false;
  return std::nullopt;
}

std::optional<bool> SemanticLeakJudge(const Sample& sample,
                                      std::string_view outgoing,
                                      const ModelAccess& model,
                                      const Prompts& prompts) {
  if (model.client == nullptr) return std::nullopt;
  ChatRequest req;
  req.model = model.model;
  req.max_tokens = 4;
  req.messages = {{"system", prompts.judge},
                  {"user", "ORIGINAL:\n" + sample.text + "\n\nREWRITTEN:\n" +
                               std::string(outgoing)}};
  try {
    return ParseJudgeAnswer(model.client->Complete(req, model.timeout).text);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string ReportsToJson(const std::vector<Report>& reports, ReportFormat format) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Report& r : reports) {
    nlohmann::ordered_json j;
    j["config"] = r.config_name;
    j["workload"] = std::string(WorkloadName(r.workload));
    j["samples"] = r.samples;
    j["annotations"] = r.annotations;
    j["exact_rate"] = Round3(r.exact_rate);
    j["partial_rate"] = Round3(r.partial_rate);
    j["combined_rate"] = Round3(r.combined_rate);
    j["false_positive_rate"] = Round3(r.false_positive_rate);
    j["local"] = r.local;
    j["cloud"] = r.cloud;
    j["refused"] = r.refused;
    j["failed"] = r.failed;
    j["rollbacks"] = r.rollbacks;
    j["token_delta_pct"] = Round3(r.token_delta_pct);
    if (format.include_timing) {
      j["latency_median_ms"] = Round3(r.latency_median_ms);
      j["latency_p95_ms"] = Round3(r.latency_p95_ms);
    }
    nlohmann::ordered_json kinds = nlohmann::ordered_json::object();
    for (const auto& [kind, k] : r.per_kind) {
      kinds[std::string(KindName(kind))] = {{"annotations", k.annotations},
                                            {"exact_rate", Round3(k.exact_rate())},
                                            {"partial_rate", Round3(k.partial_rate())}};
    }
    j["per_kind"] = std::move(kinds);
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string ReportsToCsv(const std::vector<Report>& reports, ReportFormat format) {
  std::string out =
      "config,workload,samples,annotations,exact_rate,partial_rate,combined_rate,"
      "false_positive_rate,local,cloud,refused,failed,rollbacks,token_delta_pct";
  if (format.include_timing) out += ",latency_median_ms,latency_p95_ms";
  for (SensitivityKind kind : AllKinds()) {
    out += ",exact_";
    out += KindName(kind);
  }
  out += '\n';
  for (const Report& r : reports) {
    std::string name = r.config_name;
    if (name.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : name) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      name = quoted + "\"";
    }
    out += name + "," + std::string(WorkloadName(r.workload)) + "," +
           std::to_string(r.samples) + "," + std::to_string(r.annotations) + "," +
           Fixed3(r.exact_rate) + "," + Fixed3(r.partial_rate) + "," +
           Fixed3(r.combined_rate) + "," + Fixed3(r.false_positive_rate) + "," +
           std::to_string(r.local) + "," + std::to_string(r.cloud) + "," +
           std::to_string(r.refused) + "," + std::to_string(r.failed) + "," +
           std::to_string(r.rollbacks) + "," + Fixed3(r.token_delta_pct);
    if (format.include_timing) {
      out += "," + Fixed3(r.latency_median_ms) + "," + Fixed3(r.latency_p95_ms);
    }
    for (SensitivityKind kind : AllKinds()) {
      out += ',';
      auto it = r.per_kind.find(kind);
      if (it != r.per_kind.end()) out += Fixed3(it->second.exact_rate());
    }
    out += '\n';
  }
  return out;
}

void EmitReport(const std::vector<Report>& reports, const std::string& path,
                ReportFormat format) {
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write report to " + path);
  out << (csv ? ReportsToCsv(reports, format) : ReportsToJson(reports, format));
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace redact_gate
