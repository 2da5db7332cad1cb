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

#ifndef REDACT_GATE_GATEWAY_H_
#define REDACT_GATE_GATEWAY_H_

#include <array>
#include <atomic>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "redact_gate/config.h"
#include "redact_gate/http_post.h"
#include "redact_gate/pipeline.h"
#include "redact_gate/rng.h"

namespace httplib {
class Server;
}

namespace redact_gate {

struct StatsSnapshot {
  std::uint64_t requests_total = 0;
  std::uint64_t routed_local = 0;
  std::uint64_t refused = 0;
  std::uint64_t forwarded = 0;
  std::uint64_t upstream_errors = 0;
  std::uint64_t bad_requests = 0;
  std::map<SensitivityKind, std::uint64_t> spans_by_kind;
  std::uint64_t rephrase_rollbacks = 0;
  std::uint64_t dp_substitutions = 0;
  double latency_median_ms = 0.0;
  double latency_p95_ms = 0.0;
};

nlohmann::ordered_json ToJson(const StatsSnapshot& snapshot);

// Process-wide counters. Writers bump atomics under a shared lock; Snapshot
// takes the lock exclusively, so a snapshot never sees half a request.
class Stats {
 public:
  static constexpr std::size_t kReservoirSize = 1024;

  Stats() = default;
  Stats(const Stats&) = delete;
  Stats& operator=(const Stats&) = delete;

  // Counts one processed request and its pipeline latency.
  void Record(const PipelineOutcome& outcome);
  void RecordForwarded();
  void RecordUpstreamError();
  void RecordBadRequest();

  StatsSnapshot Snapshot() const;

 private:
  mutable std::shared_mutex mu_;
  std::atomic<std::uint64_t> requests_total_{0};
  std::atomic<std::uint64_t> routed_local_{0};
  std::atomic<std::uint64_t> refused_{0};
  std::atomic<std::uint64_t> forwarded_{0};
  std::atomic<std::uint64_t> upstream_errors_{0};
  std::atomic<std::uint64_t> bad_requests_{0};
  std::atomic<std::uint64_t> rephrase_rollbacks_{0};
  std::atomic<std::uint64_t> dp_substitutions_{0};
  std::array<std::atomic<std::uint64_t>, kNumKinds> spans_by_kind_{};

  mutable std::mutex reservoir_mu_;
  std::vector<double> reservoir_;
  std::uint64_t seen_ = 0;
  Rng reservoir_rng_{0x5eed5eedULL};
};

// Where cloud-bound requests go.
class Upstream {
 public:
  virtual ~Upstream() = default;
  // Throws HttpTransportError when no response arrives.
  virtual HttpResult Forward(const std::string& body,
                             std::chrono::milliseconds timeout) = 0;
};

// POSTs to <base_url>/v1/chat/completions, with `api_key` as the bearer
// token when set.
class HttpUpstream : public Upstream {
 public:
  explicit HttpUpstream(std::string base_url, std::string api_key = {});
  HttpResult Forward(const std::string& body,
                     std::chrono::milliseconds timeout) override;

 private:
  std::string base_url_;
  std::string api_key_;
};

// In-process upstream that records every body it receives. By default it
// answers with the joined user message contents.
class MockUpstream : public Upstream {
 public:
  enum class Mode { kEcho, kStatus, kUnreachable };

  explicit MockUpstream(Mode mode = Mode::kEcho, int status = 500);
  HttpResult Forward(const std::string& body,
                     std::chrono::milliseconds timeout) override;

  std::vector<std::string> captures() const;
  std::size_t call_count() const;

  // Echo completion for a chat-completions body.
  static std::string EchoResponse(const nlohmann::json& request);

 private:
  Mode mode_;
  int status_;
  mutable std::mutex mu_;
  std::vector<std::string> captures_;
};

struct HttpReply {
  int status = 200;
  std::string body;
};

// The chat-completions proxy without the socket: body in, reply out.
class ProxyService {
 public:
  ProxyService(PipelineConfig config, PipelineResources resources,
               std::shared_ptr<Upstream> upstream, std::shared_ptr<Stats> stats);

  HttpReply HandleChatCompletions(const std::string& body);

  const PipelineConfig& config() const { return config_; }
  Stats& stats() { return *stats_; }

 private:
  std::string NextRequestId();

  PipelineConfig config_;
  PipelineResources resources_;
  std::shared_ptr<Upstream> upstream_;
  std::shared_ptr<Stats> stats_;
  std::atomic<std::uint64_t> counter_{0};
};

// Builds the upstream named by config.upstream_endpoint ("mock" selects an
// echo MockUpstream). REDACT_GATE_UPSTREAM_KEY is forwarded as the bearer
// token.
std::shared_ptr<Upstream> MakeUpstream(const PipelineConfig& config);

// POST /v1/chat/completions and GET /healthz on a background thread.
class HttpGateway {
 public:
  explicit HttpGateway(std::shared_ptr<ProxyService> service);
  ~HttpGateway();
  HttpGateway(const HttpGateway&) = delete;
  HttpGateway& operator=(const HttpGateway&) = delete;

  // Binds and starts serving. Port 0 picks a free port. Returns the bound
  // port; throws std::runtime_error when binding fails.
  int Start(const std::string& host, int port);
  // Blocks in the calling thread until Stop().
  void Run(const std::string& host, int port);
  void Stop();

 private:
  void Install();

  std::shared_ptr<ProxyService> service_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

// JSON-RPC 2.0 over newline-delimited stdio. Accepts the tool-host
// handshake (initialize, tools/list, tools/call) and the tool names as
// direct methods.
class ToolServer {
 public:
  ToolServer(PipelineConfig config, PipelineResources resources,
             std::shared_ptr<Stats> stats);

  // Handles one line. Returns nullopt for notifications.
  std::optional<std::string> HandleLine(const std::string& line);
  // Reads until EOF.
  void Run(std::istream& in, std::ostream& out);

  // Tool bodies. Throw std::invalid_argument for bad arguments.
  nlohmann::ordered_json Transform(const nlohmann::json& args);
  nlohmann::ordered_json DetectTool(const nlohmann::json& args);
  nlohmann::ordered_json StatsTool() const;

 private:
  nlohmann::ordered_json Dispatch(const std::string& method,
                                  const nlohmann::json& params);

  PipelineConfig config_;
  PipelineResources resources_;
  std::shared_ptr<Stats> stats_;
  std::atomic<std::uint64_t> counter_{0};
};

}  // namespace redact_gate

#endif  // REDACT_GATE_GATEWAY_H_
