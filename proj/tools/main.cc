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

// redact_gate command line: proxy, tool server, workload generator, eval
// harness and the research-stage stubs.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <cctype>
#include <memory>

#include "CLI11.hpp"
#include "json.hpp"
#include "redact_gate/config.h"
#include "redact_gate/eval.h"
#include "redact_gate/gateway.h"
#include "redact_gate/pipeline.h"
#include "redact_gate/recommend.h"
#include "redact_gate/stubs/attestation.h"
#include "redact_gate/stubs/fhe.h"
#include "redact_gate/stubs/mpc.h"
#include "redact_gate/stubs/split.h"
#include "redact_gate/workloads.h"

namespace rg = redact_gate;
namespace st = redact_gate::stubs;

namespace {

// Config-key flags shared by the subcommands that run the pipeline.
struct ConfigFlags {
  std::vector<std::string> files;
  std::map<std::string, std::string> values;

  void Attach(CLI::App* app, bool many_files) {
    if (many_files) {
      app->add_option("--config", files, "pipeline config YAML (repeatable)");
    } else {
      app->add_option("--config", files, "pipeline config YAML")->expected(0, 1);
    }
    for (const std::string& key : rg::ConfigKeys()) {
      app->add_option("--" + key, values[key], "config override")->group("Config keys");
    }
  }

  // defaults < file < REDACT_GATE_* environment < flags.
  rg::PipelineConfig Build(const std::string& file) const {
    rg::PipelineConfig config;
    if (!file.empty()) config = rg::LoadConfigFile(file);
    rg::ApplyProcessEnvOverrides(config);
    for (const auto& [key, value] : values) {
      if (!value.empty()) rg::SetConfigValue(config, key, value);
    }
    config.Validate();
    return config;
  }

  std::vector<rg::PipelineConfig> BuildAll() const {
    std::vector<std::string> paths = files;
    if (paths.empty()) {
      const char* env = std::getenv("REDACT_GATE_CONFIG");
      paths.push_back(env != nullptr ? env : "");
    }
    std::vector<rg::PipelineConfig> out;
    for (const auto& p : paths) out.push_back(Build(p));
    return out;
  }
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

rg::HttpGateway* g_gateway = nullptr;

void HandleSignal(int) {
  if (g_gateway != nullptr) g_gateway->Stop();
}

std::vector<rg::Sample> LoadWorkloads(const std::vector<std::string>& paths) {
  std::vector<rg::Sample> all;
  for (const auto& p : paths) {
    auto part = rg::ReadJsonl(p);
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"redact-gate: privacy gateway for LLM requests"};
  app.require_subcommand(1);

  // serve
  auto* serve = app.add_subcommand("serve", "run the OpenAI-compatible HTTP proxy");
  ConfigFlags serve_flags;
  serve_flags.Attach(serve, false);
  std::string host = "127.0.0.1";
  int port = 8080;
  serve->add_option("--host", host, "listen address");
  serve->add_option("--port", port, "listen port");

  // tools
  auto* tools = app.add_subcommand("tools", "run the JSON-RPC stdio tool server");
  ConfigFlags tools_flags;
  tools_flags.Attach(tools, false);

  // gen
  auto* gen = app.add_subcommand("gen", "generate benchmark workloads as JSONL");
  std::string gen_workload = "WL1";
  std::uint64_t gen_seed = 42;
  std::size_t gen_count = 0;
  std::string gen_out;
  gen->add_option("--workload", gen_workload, "WL1..WL4 or all");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--count", gen_count, "samples (default: the workload's plan)");
  gen->add_option("--out", gen_out,
                  "output file; a directory when --workload all")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "score configurations on workloads");
  ConfigFlags eval_flags;
  eval_flags.Attach(eval, true);
  std::vector<std::string> eval_workloads;
  std::string eval_out;
  unsigned eval_threads = 1;
  bool eval_no_timing = false;
  eval->add_option("--workloads", eval_workloads, "JSONL files")->required();
  eval->add_option("--out", eval_out, "report path (.json or .csv)")->required();
  eval->add_option("--threads", eval_threads, "worker threads");
  eval->add_flag("--no-timing", eval_no_timing,
                 "omit latency fields so reports are byte-reproducible");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "epsilon sensitivity of the DP noise stage");
  ConfigFlags sweep_flags;
  sweep_flags.Attach(sweep, false);
  std::vector<double> sweep_eps = {1, 2, 4, 8};
  std::vector<std::string> sweep_workloads;
  std::string sweep_out;
  bool sweep_no_timing = false;
  sweep->add_option("--epsilons", sweep_eps, "epsilon values")->delimiter(',');
  sweep->add_option("--workloads", sweep_workloads, "JSONL files")->required();
  sweep->add_option("--out", sweep_out, "report path (.json or .csv)")->required();
  sweep->add_flag("--no-timing", sweep_no_timing, "omit latency fields");

  // recommend
  auto* rec = app.add_subcommand("recommend", "decision rule: which options to deploy");
  double lambda = 0.05;
  bool latency_primary = false;
  bool implicit_risk = false;
  rec->add_option("--lambda", lambda, "tolerated exact leak rate in [0, 1]")->required();
  rec->add_flag("--latency-primary", latency_primary, "latency is the primary constraint");
  rec->add_flag("--implicit-risk", implicit_risk, "prompts may carry implicit identity");

  // stubs
  auto* stub = app.add_subcommand("stub", "research-stage demonstrations");
  stub->require_subcommand(1);
  auto* stub_d = stub->add_subcommand("d", "verify an attestation document");
  std::string d_doc, d_policy;
  stub_d->add_option("--doc", d_doc, "attestation document JSON")->required();
  stub_d->add_option("--policy", d_policy, "policy JSON")->required();

  auto* stub_e = stub->add_subcommand("e", "split-inference stub");
  std::string e_prompt, e_endpoint;
  std::uint64_t e_seed = 42;
  std::size_t e_dims = 16;
  stub_e->add_option("--prompt", e_prompt, "prompt text")->required();
  stub_e->add_option("--seed", e_seed, "activation seed");
  stub_e->add_option("--dims", e_dims, "activation width");
  stub_e->add_option("--endpoint", e_endpoint, "remote base URL (default: in-process mock)");

  auto* stub_f = stub->add_subcommand("f", "FHE classification timing simulation");
  std::string f_text;
  std::uint64_t f_seed = 42;
  stub_f->add_option("--text", f_text, "text to classify");
  stub_f->add_option("--seed", f_seed, "jitter seed");

  auto* stub_g = stub->add_subcommand("g", "MPC embedding lookup");
  std::size_t g_tokens = 8, g_parties = 3, g_vocab = 64, g_dim = 8;
  std::uint64_t g_seed = 42;
  stub_g->add_option("--tokens", g_tokens, "random tokens to embed");
  stub_g->add_option("--parties", g_parties, "number of parties (>= 2)");
  stub_g->add_option("--vocab", g_vocab, "vocabulary size");
  stub_g->add_option("--dim", g_dim, "embedding width");
  stub_g->add_option("--seed", g_seed, "seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) {
      const auto config = serve_flags.BuildAll().front();
      auto service = std::make_shared<rg::ProxyService>(
          config, rg::LoadResources(config), rg::MakeUpstream(config),
          std::make_shared<rg::Stats>());
      rg::HttpGateway gateway(service);
      g_gateway = &gateway;
      std::signal(SIGINT, HandleSignal);
      std::signal(SIGTERM, HandleSignal);
      std::cerr << "listening on " << host << ":" << port << " -> "
                << config.upstream_endpoint << "\n";
      gateway.Run(host, port);
      g_gateway = nullptr;
      return 0;
    }
    if (*tools) {
      const auto config = tools_flags.BuildAll().front();
      rg::ToolServer server(config, rg::LoadResources(config),
                            std::make_shared<rg::Stats>());
      server.Run(std::cin, std::cout);
      return 0;
    }
    if (*gen) {
      if (gen_workload == "all") {
        for (rg::Workload wl : rg::kAllWorkloads) {
          std::string name(rg::WorkloadName(wl));
          for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
          const std::size_t count = gen_count > 0 ? gen_count : rg::DefaultSampleCount(wl);
          rg::WriteJsonl(rg::Generate(wl, gen_seed, count), gen_out + "/" + name + ".jsonl");
        }
        return 0;
      }
      const auto wl = rg::ParseWorkload(gen_workload);
      if (!wl) {
        std::cerr << "unknown workload '" << gen_workload << "'\n";
        return 2;
      }
      const std::size_t count = gen_count > 0 ? gen_count : rg::DefaultSampleCount(*wl);
      rg::WriteJsonl(rg::Generate(*wl, gen_seed, count), gen_out);
      return 0;
    }
    if (*eval) {
      const auto samples = LoadWorkloads(eval_workloads);
      std::vector<rg::Report> reports;
      for (const auto& config : eval_flags.BuildAll()) {
        const auto resources = rg::LoadResources(config);
        auto part = rg::RunEval(config, resources, samples, {eval_threads});
        reports.insert(reports.end(), part.begin(), part.end());
      }
      rg::EmitReport(reports, eval_out, {!eval_no_timing});
      return 0;
    }
    if (*sweep) {
      const auto samples = LoadWorkloads(sweep_workloads);
      std::vector<rg::Report> reports;
      auto base = sweep_flags.BuildAll().front();
      base.enable_dp_noise = true;
      const auto resources = rg::LoadResources(base);
      for (double eps : sweep_eps) {
        auto config = base;
        config.epsilon = eps;
        config.Validate();
        std::ostringstream name;
        name << base.name << " eps=" << eps;
        config.name = name.str();
        auto part = rg::RunEval(config, resources, samples);
        reports.insert(reports.end(), part.begin(), part.end());
        std::cout << config.name << " p=" << rg::DpSubstitutionProb(eps) << "\n";
      }
      rg::EmitReport(reports, sweep_out, {!sweep_no_timing});
      return 0;
    }
    if (*rec) {
      std::cout << rg::RecommendConfig(lambda, latency_primary, implicit_risk).ToString()
                << "\n";
      return 0;
    }
    if (*stub_d) {
      const auto policy = st::ParseAttestationPolicy(ReadFile(d_policy));
      const auto verdict = st::VerifyAttestationJson(ReadFile(d_doc), policy);
      nlohmann::ordered_json j;
      j["accepted"] = verdict.accepted;
      if (!verdict.accepted) j["reason"] = verdict.reason;
      if (!verdict.detail.empty()) j["detail"] = verdict.detail;
      std::cout << j.dump() << "\n";
      return verdict.accepted ? 0 : 1;
    }
    if (*stub_e) {
      const auto activations = st::SimulateActivations(e_prompt, e_seed, e_dims);
      std::unique_ptr<st::SplitEndpoint> endpoint;
      if (e_endpoint.empty()) {
        endpoint = std::make_unique<st::MockSplitEndpoint>();
      } else {
        endpoint = std::make_unique<st::HttpSplitEndpoint>(e_endpoint);
      }
      const std::size_t tokens = st::SplitStubSend(activations, *endpoint);
      std::cout << nlohmann::ordered_json{{"rows", activations.rows},
                                          {"dims", activations.dims},
                                          {"completion_tokens", tokens}}
                       .dump()
                << "\n";
      return 0;
    }
    if (*stub_f) {
      const auto r = st::FheSimulate(f_text, f_seed);
      nlohmann::ordered_json j;
      j["label"] = r.sensitive ? "sensitive" : "benign";
      j["score"] = r.score;
      j["timings"] = {{"encrypt_ms", r.timings.encrypt_ms},
                      {"infer_ms", r.timings.infer_ms},
                      {"decrypt_ms", r.timings.decrypt_ms}};
      std::cout << j.dump() << "\n";
      return 0;
    }
    if (*stub_g) {
      rg::Rng rng(g_seed);
      const auto table = st::RandomEmbeddingTable(g_vocab, g_dim, g_seed + 1);
      std::size_t exact = 0;
      for (std::size_t i = 0; i < g_tokens; ++i) {
        const std::size_t token = rng.Below(g_vocab);
        const auto shares = st::MpcShare(st::OneHot(token, g_vocab), g_parties, rng.Next());
        if (st::MpcEmbed(shares, table) == table.Row(token)) ++exact;
      }
      const auto timings = st::SimulateMpcTimings(g_tokens, g_seed);
      std::cout << nlohmann::ordered_json{{"tokens", g_tokens},
                                          {"parties", g_parties},
                                          {"exact_reconstructions", exact},
                                          {"setup_ms", timings.setup_ms},
                                          {"total_ms", timings.total_ms()}}
                       .dump()
                << "\n";
      return exact == g_tokens ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
