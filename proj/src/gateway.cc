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

#include "redact_gate/gateway.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>

#include "httplib.h"

namespace redact_gate {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kServerName = "redact-gate";
constexpr std::string_view kServerVersion = "0.1.0";
constexpr std::string_view kProtocolVersion = "2024-11-05";

std::string ErrorBody(std::string_view type, std::string_view message) {
  ordered_json j;
  j["error"] = {{"type", type}, {"message", message}};
  return j.dump();
}

double NearestRank(std::vector<double> v, double p) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(v.size())));
  rank = std::clamp<std::size_t>(rank, 1, v.size());
  return v[rank - 1];
}

// Pulls {role, content} pairs out of a chat-completions body. Throws
// std::invalid_argument when the shape is wrong.
std::vector<ChatMessage> ExtractMessages(const ordered_json& body) {
  if (!body.is_object()) throw std::invalid_argument("request body must be a JSON object");
  auto it = body.find("messages");
  if (it == body.end() || !it->is_array() || it->empty()) {
    throw std::invalid_argument("'messages' must be a non-empty array");
  }
  std::vector<ChatMessage> out;
  for (const auto& m : *it) {
    if (!m.is_object() || !m.contains("role") || !m["role"].is_string()) {
      throw std::invalid_argument("every message needs a string 'role'");
    }
    if (!m.contains("content") || !m["content"].is_string()) {
      throw std::invalid_argument("message content must be a string");
    }
    out.push_back({m["role"].get<std::string>(), m["content"].get<std::string>()});
  }
  ChatRequest check;
  check.messages = out;
  check.Validate();
  return out;
}

ordered_json CompletionPayload(const std::string& id, const std::string& model,
                               const std::string& content) {
  ordered_json j;
  j["id"] = id;
  j["object"] = "chat.completion";
  j["created"] = std::chrono::duration_cast<std::chrono::seconds>(
                     std::chrono::system_clock::now().time_since_epoch())
                     .count();
  j["model"] = model;
  j["choices"] = ordered_json::array(
      {{{"index", 0},
        {"message", {{"role", "assistant"}, {"content", content}}},
        {"finish_reason", "stop"}}});
  return j;
}

}  // namespace

nlohmann::ordered_json ToJson(const StatsSnapshot& s) {
  ordered_json j;
  j["requests_total"] = s.requests_total;
  j["routed_local"] = s.routed_local;
  j["refused"] = s.refused;
  j["forwarded"] = s.forwarded;
  j["upstream_errors"] = s.upstream_errors;
  j["bad_requests"] = s.bad_requests;
  ordered_json kinds = ordered_json::object();
  for (const auto& [kind, n] : s.spans_by_kind) kinds[std::string(KindName(kind))] = n;
  j["spans_by_kind"] = std::move(kinds);
  j["rephrase_rollbacks"] = s.rephrase_rollbacks;
  j["dp_substitutions"] = s.dp_substitutions;
  j["latency_median_ms"] = s.latency_median_ms;
  j["latency_p95_ms"] = s.latency_p95_ms;
  return j;
}

void Stats::Record(const PipelineOutcome& outcome) {
  {
    std::shared_lock lock(mu_);
    ++requests_total_;
    if (outcome.is_local()) ++routed_local_;
    if (outcome.is_refused()) ++refused_;
    for (const auto& spans : outcome.detections) {
      for (const Span& s : spans) ++spans_by_kind_[static_cast<std::size_t>(s.kind())];
    }
    rephrase_rollbacks_ += outcome.rephrase_rollbacks;
    dp_substitutions_ += outcome.dp_substitutions;
  }
  const double ms =
      std::chrono::duration<double, std::milli>(outcome.total_duration).count();
  std::lock_guard lock(reservoir_mu_);
  ++seen_;
  if (reservoir_.size() < kReservoirSize) {
    reservoir_.push_back(ms);
  } else {
    const std::uint64_t slot = reservoir_rng_.Below(seen_);
    if (slot < kReservoirSize) reservoir_[slot] = ms;
  }
}

void Stats::RecordForwarded() {
  std::shared_lock lock(mu_);
  ++forwarded_;
}

void Stats::RecordUpstreamError() {
  std::shared_lock lock(mu_);
  ++upstream_errors_;
}

void Stats::RecordBadRequest() {
  std::shared_lock lock(mu_);
  ++bad_requests_;
}

StatsSnapshot Stats::Snapshot() const {
  StatsSnapshot s;
  {
    std::unique_lock lock(mu_);
    s.requests_total = requests_total_;
    s.routed_local = routed_local_;
    s.refused = refused_;
    s.forwarded = forwarded_;
    s.upstream_errors = upstream_errors_;
    s.bad_requests = bad_requests_;
    s.rephrase_rollbacks = rephrase_rollbacks_;
    s.dp_substitutions = dp_substitutions_;
    for (SensitivityKind kind : AllKinds()) {
      const std::uint64_t n = spans_by_kind_[static_cast<std::size_t>(kind)];
      if (n > 0) s.spans_by_kind[kind] = n;
    }
  }
  std::vector<double> sample;
  {
    std::lock_guard lock(reservoir_mu_);
    sample = reservoir_;
  }
  s.latency_median_ms = NearestRank(sample, 0.5);
  s.latency_p95_ms = NearestRank(sample, 0.95);
  return s;
}

HttpUpstream::HttpUpstream(std::string base_url, std::string api_key)
    : base_url_(std::move(base_url)), api_key_(std::move(api_key)) {
  SplitBaseUrl(base_url_);  // validates
}

HttpResult HttpUpstream::Forward(const std::string& body,
                                 std::chrono::milliseconds timeout) {
  std::vector<std::pair<std::string, std::string>> headers;
  if (!api_key_.empty()) headers.emplace_back("Authorization", "Bearer " + api_key_);
  return PostJson(base_url_, "/v1/chat/completions", body, headers, timeout);
}

MockUpstream::MockUpstream(Mode mode, int status) : mode_(mode), status_(status) {}

std::string MockUpstream::EchoResponse(const nlohmann::json& request) {
  std::string joined;
  for (const auto& m : request.at("messages")) {
    if (m.value("role", "") != "user") continue;
    if (!joined.empty()) joined += '\n';
    joined += m.value("content", "");
  }
  return CompletionPayload("mock-echo", request.value("model", "mock"), joined).dump();
}

HttpResult MockUpstream::Forward(const std::string& body, std::chrono::milliseconds) {
  {
    std::lock_guard lock(mu_);
    captures_.push_back(body);
  }
  switch (mode_) {
    case Mode::kUnreachable:
      throw HttpTransportError(false, "mock upstream unreachable");
    case Mode::kStatus:
      return {status_, R"({"error":"mock failure"})"};
    case Mode::kEcho:
      break;
  }
  return {200, EchoResponse(nlohmann::json::parse(body))};
}

std::vector<std::string> MockUpstream::captures() const {
  std::lock_guard lock(mu_);
  return captures_;
}

std::size_t MockUpstream::call_count() const {
  std::lock_guard lock(mu_);
  return captures_.size();
}

std::shared_ptr<Upstream> MakeUpstream(const PipelineConfig& config) {
  if (config.upstream_endpoint == "mock") return std::make_shared<MockUpstream>();
  const char* key = std::getenv("REDACT_GATE_UPSTREAM_KEY");
  return std::make_shared<HttpUpstream>(config.upstream_endpoint,
                                        key != nullptr ? key : "");
}

ProxyService::ProxyService(PipelineConfig config, PipelineResources resources,
                           std::shared_ptr<Upstream> upstream,
                           std::shared_ptr<Stats> stats)
    : config_(std::move(config)),
      resources_(std::move(resources)),
      upstream_(std::move(upstream)),
      stats_(stats ? std::move(stats) : std::make_shared<Stats>()) {}

std::string ProxyService::NextRequestId() {
  return "req-" + std::to_string(++counter_);
}

HttpReply ProxyService::HandleChatCompletions(const std::string& body) {
  ordered_json request;
  std::vector<ChatMessage> messages;
  try {
    request = ordered_json::parse(body);
    messages = ExtractMessages(request);
  } catch (const std::exception& e) {
    stats_->RecordBadRequest();
    return {400, ErrorBody("invalid_request", e.what())};
  }

  const std::string id = NextRequestId();
  PipelineOutcome outcome = ProcessRequest(messages, config_, resources_, id);
  stats_->Record(outcome);

  if (outcome.is_refused()) {
    return {451, ErrorBody("policy_refusal", outcome.refusal().reason)};
  }
  const std::string model = request.value("model", config_.model_name);
  if (outcome.is_local()) {
    if (!outcome.local().answer) {
      return {501, ErrorBody("local_route_offline",
                             "request routed to the local model, but local "
                             "answering is disabled")};
    }
    return {200, CompletionPayload(id, model, *outcome.local().answer).dump()};
  }

  CloudRequest& cloud = outcome.cloud();
  ordered_json forward = request;
  for (std::size_t i = 0; i < cloud.messages.size(); ++i) {
    forward["messages"][i]["content"] = cloud.messages[i].content;
  }
  // Restoration needs the whole completion, so streaming is turned off.
  forward.erase("stream");

  HttpResult upstream;
  try {
    upstream = upstream_->Forward(forward.dump(),
                                  std::chrono::milliseconds(config_.timeout_ms));
  } catch (const std::exception& e) {
    cloud.map.Clear();
    stats_->RecordUpstreamError();
    const bool timed_out = dynamic_cast<const HttpTransportError*>(&e) != nullptr &&
                           static_cast<const HttpTransportError&>(e).timed_out();
    return {502, ErrorBody("upstream_error", timed_out ? "upstream timed out"
                                                       : "upstream unreachable")};
  }
  stats_->RecordForwarded();
  if (upstream.status < 200 || upstream.status >= 300) {
    cloud.map.Clear();
    stats_->RecordUpstreamError();
    return {502, ErrorBody("upstream_error", "upstream returned status " +
                                                 std::to_string(upstream.status))};
  }

  ordered_json response;
  try {
    response = ordered_json::parse(upstream.body);
    if (!response.is_object()) throw std::invalid_argument("not an object");
  } catch (const std::exception&) {
    cloud.map.Clear();
    stats_->RecordUpstreamError();
    return {502, ErrorBody("upstream_error", "upstream sent a malformed completion")};
  }
  if (auto choices = response.find("choices"); choices != response.end() && choices->is_array()) {
    for (auto& choice : *choices) {
      if (!choice.is_object()) continue;
      auto msg = choice.find("message");
      if (msg == choice.end() || !msg->is_object()) continue;
      auto content = msg->find("content");
      if (content != msg->end() && content->is_string()) {
        *content = Restore(content->get<std::string>(), cloud.map);
      }
    }
  }
  cloud.map.Clear();
  return {200, response.dump()};
}

HttpGateway::HttpGateway(std::shared_ptr<ProxyService> service)
    : service_(std::move(service)), server_(std::make_unique<httplib::Server>()) {
  Install();
}

HttpGateway::~HttpGateway() { Stop(); }

void HttpGateway::Install() {
  server_->Post("/v1/chat/completions",
                [this](const httplib::Request& req, httplib::Response& res) {
                  HttpReply reply = service_->HandleChatCompletions(req.body);
                  res.status = reply.status;
                  res.set_content(reply.body, "application/json");
                });
  server_->Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"status":"ok"})", "application/json");
  });
}

int HttpGateway::Start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
  } else if (!server_->bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound <= 0) {
    throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

void HttpGateway::Run(const std::string& host, int port) {
  if (!server_->listen(host, port)) {
    throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
  }
}

void HttpGateway::Stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

ToolServer::ToolServer(PipelineConfig config, PipelineResources resources,
                       std::shared_ptr<Stats> stats)
    : config_(std::move(config)),
      resources_(std::move(resources)),
      stats_(stats ? std::move(stats) : std::make_shared<Stats>()) {}

namespace {

struct RpcError {
  int code;
  std::string message;
};

constexpr int kParseError = -32700;
constexpr int kInvalidRequest = -32600;
constexpr int kMethodNotFound = -32601;
constexpr int kInvalidParams = -32602;
constexpr int kInternalError = -32603;

std::string ScalarToString(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return v.dump();
  throw std::invalid_argument("option values must be scalars");
}

std::string RequireText(const nlohmann::json& args) {
  if (!args.is_object() || !args.contains("text") || !args["text"].is_string()) {
    throw std::invalid_argument("'text' must be a string");
  }
  return args["text"].get<std::string>();
}

ordered_json ToolList() {
  const ordered_json text_schema = {
      {"type", "object"},
      {"properties", {{"text", {{"type", "string"}}}}},
      {"required", {"text"}}};
  ordered_json transform_schema = text_schema;
  transform_schema["properties"]["options"] = {
      {"type", "object"},
      {"description", "pipeline config overrides, e.g. strict_mode"}};
  return ordered_json::array({
      {{"name", "redact.transform"},
       {"description", "Redacts sensitive spans and returns the outgoing text "
                       "with typed placeholders."},
       {"inputSchema", transform_schema}},
      {{"name", "redact.detect"},
       {"description", "Lists sensitive spans (kind, offsets, confidence, "
                       "source) without their text."},
       {"inputSchema", text_schema}},
      {{"name", "redact.stats"},
       {"description", "Returns the process counters."},
       {"inputSchema", {{"type", "object"}, {"properties", ordered_json::object()}}}},
  });
}

}  // namespace

nlohmann::ordered_json ToolServer::Transform(const nlohmann::json& args) {
  const std::string text = RequireText(args);
  PipelineConfig config = config_;
  if (args.contains("options")) {
    const auto& options = args["options"];
    if (!options.is_object()) throw std::invalid_argument("'options' must be an object");
    try {
      for (const auto& [key, value] : options.items()) {
        SetConfigValue(config, key, ScalarToString(value));
      }
      config.Validate();
    } catch (const ConfigError& e) {
      throw std::invalid_argument(e.what());
    }
  }
  ordered_json out;
  if (text.empty()) {
    out["outgoing_text"] = "";
    out["placeholders"] = ordered_json::array();
    out["refused"] = false;
    return out;
  }
  PipelineOutcome outcome = ProcessRequest({{"user", text}}, config, resources_,
                                           "tool-" + std::to_string(++counter_));
  stats_->Record(outcome);
  ordered_json placeholders = ordered_json::array();
  if (outcome.is_cloud()) {
    for (const auto& [placeholder, kind] : outcome.cloud().map.Placeholders()) {
      placeholders.push_back({{"placeholder", placeholder}, {"kind", KindName(kind)}});
    }
    out["outgoing_text"] = outcome.OutgoingText();
    outcome.cloud().map.Clear();
  } else {
    out["outgoing_text"] = "";
  }
  out["placeholders"] = std::move(placeholders);
  out["refused"] = outcome.is_refused();
  if (outcome.is_refused()) out["refusal_reason"] = outcome.refusal().reason;
  if (outcome.is_local()) out["routed_local"] = true;
  return out;
}

nlohmann::ordered_json ToolServer::DetectTool(const nlohmann::json& args) {
  const std::string text = RequireText(args);
  std::vector<Span> all;
  if (config_.enable_regex) all = DetectRegex(text, *resources_.rules);
  if (config_.enable_gazetteer) {
    auto g = DetectGazetteer(text, *resources_.gazetteer);
    all.insert(all.end(), g.begin(), g.end());
  }
  if (config_.enable_classifier_detector) {
    const ModelAccess model{resources_.client.get(), config_.model_name,
                            std::chrono::milliseconds(config_.timeout_ms)};
    auto c = DetectWithClassifier(text, model, *resources_.prompts);
    all.insert(all.end(), c.begin(), c.end());
  }
  ordered_json spans = ordered_json::array();
  for (const Span& s : MergeSpans(std::move(all))) {
    spans.push_back({{"kind", KindName(s.kind())},
                     {"start", s.start()},
                     {"end", s.end()},
                     {"confidence", s.confidence()},
                     {"source", SourceName(s.source())}});
  }
  return {{"spans", std::move(spans)}};
}

nlohmann::ordered_json ToolServer::StatsTool() const { return ToJson(stats_->Snapshot()); }

nlohmann::ordered_json ToolServer::Dispatch(const std::string& method,
                                            const nlohmann::json& params) {
  auto run_tool = [&](const std::string& name, const nlohmann::json& args) -> ordered_json {
    if (name == "redact.transform") return Transform(args);
    if (name == "redact.detect") return DetectTool(args);
    if (name == "redact.stats") return StatsTool();
    throw RpcError{kMethodNotFound, "unknown tool '" + name + "'"};
  };

  if (method == "initialize") {
    return {{"protocolVersion", kProtocolVersion},
            {"capabilities", {{"tools", ordered_json::object()}}},
            {"serverInfo", {{"name", kServerName}, {"version", kServerVersion}}}};
  }
  if (method == "ping") return ordered_json::object();
  if (method == "tools/list") return {{"tools", ToolList()}};
  if (method == "tools/call") {
    if (!params.is_object() || !params.contains("name") || !params["name"].is_string()) {
      throw RpcError{kInvalidParams, "tools/call needs a string 'name'"};
    }
    const nlohmann::json args =
        params.contains("arguments") ? params["arguments"] : nlohmann::json::object();
    try {
      ordered_json result = run_tool(params["name"].get<std::string>(), args);
      return {{"content", {{{"type", "text"}, {"text", result.dump()}}}},
              {"structuredContent", result},
              {"isError", false}};
    } catch (const std::invalid_argument& e) {
      // Tool-level failure: reported in the result, not as a protocol error.
      return {{"content", {{{"type", "text"}, {"text", e.what()}}}}, {"isError", true}};
    }
  }
  if (method.rfind("redact.", 0) == 0) {
    try {
      return run_tool(method, params.is_null() ? nlohmann::json::object() : params);
    } catch (const std::invalid_argument& e) {
      throw RpcError{kInvalidParams, e.what()};
    }
  }
  throw RpcError{kMethodNotFound, "method not found: " + method};
}

std::optional<std::string> ToolServer::HandleLine(const std::string& line) {
  ordered_json reply;
  reply["jsonrpc"] = "2.0";
  nlohmann::json msg;
  try {
    msg = nlohmann::json::parse(line);
  } catch (const std::exception&) {
    reply["id"] = nullptr;
    reply["error"] = {{"code", kParseError}, {"message", "parse error"}};
    return reply.dump();
  }
  const bool has_id = msg.is_object() && msg.contains("id");
  reply["id"] = has_id ? msg["id"] : nullptr;
  if (!msg.is_object() || msg.value("jsonrpc", "") != "2.0" || !msg.contains("method") ||
      !msg["method"].is_string()) {
    reply["error"] = {{"code", kInvalidRequest}, {"message", "invalid request"}};
    return reply.dump();
  }
  const std::string method = msg["method"].get<std::string>();
  const nlohmann::json params = msg.contains("params") ? msg["params"] : nlohmann::json();
  try {
    ordered_json result = Dispatch(method, params);
    if (!has_id) return std::nullopt;
    reply["result"] = std::move(result);
  } catch (const RpcError& e) {
    if (!has_id) return std::nullopt;
    reply["error"] = {{"code", e.code}, {"message", e.message}};
  } catch (const std::exception& e) {
    if (!has_id) return std::nullopt;
    reply["error"] = {{"code", kInternalError}, {"message", e.what()}};
  }
  return reply.dump();
}

void ToolServer::Run(std::istream& in, std::ostream& out) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (auto reply = HandleLine(line)) {
      out << *reply << '\n';
      out.flush();
    }
  }
}

}  // namespace redact_gate
