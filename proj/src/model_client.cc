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

#include "redact_gate/model_client.h"

#include <yaml-cpp/yaml.h>

#include <boost/regex.hpp>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "redact_gate/http_post.h"

namespace redact_gate {

using nlohmann::json;

void ChatRequest::Validate() const {
  if (messages.empty()) {
    throw std::invalid_argument("chat request needs at least one message");
  }
  for (const auto& m : messages) {
    if (m.role != "system" && m.role != "user" && m.role != "assistant") {
      throw std::invalid_argument("unsupported chat role '" + m.role + "'");
    }
  }
}

std::string ChatRequest::JoinedContent() const {
  std::string out;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    if (i > 0) out += '\n';
    out += messages[i].content;
  }
  return out;
}

json ToJson(const ChatRequest& request) {
  json messages = json::array();
  for (const auto& m : request.messages) {
    messages.push_back({{"role", m.role}, {"content", m.content}});
  }
  return {{"model", request.model},
          {"messages", std::move(messages)},
          {"temperature", request.temperature},
          {"max_tokens", request.max_tokens},
          {"stream", false}};
}

HttpChatClient::HttpChatClient(std::string base_url, std::string bearer_token)
    : base_url_(std::move(base_url)), bearer_token_(std::move(bearer_token)) {
  SplitBaseUrl(base_url_);
}

Completion HttpChatClient::Complete(const ChatRequest& request,
                                    std::chrono::milliseconds timeout) {
  request.Validate();
  std::vector<std::pair<std::string, std::string>> headers;
  if (!bearer_token_.empty()) {
    headers.emplace_back("Authorization", "Bearer " + bearer_token_);
  }
  const auto started = std::chrono::steady_clock::now();
  HttpResult res;
  try {
    res = PostJson(base_url_, "/v1/chat/completions", ToJson(request).dump(),
                   headers, timeout);
  } catch (const HttpTransportError& e) {
    throw ModelError(e.timed_out() ? ModelErrorKind::kTimeout
                                   : ModelErrorKind::kUnreachable,
                     e.what());
  }
  const auto latency = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - started);
  if (res.status < 200 || res.status >= 300) {
    throw ModelError(ModelErrorKind::kUpstreamStatus,
                     "model endpoint returned HTTP " + std::to_string(res.status));
  }
  try {
    const json body = json::parse(res.body);
    return {body.at("choices").at(0).at("message").at("content").get<std::string>(),
            latency};
  } catch (const json::exception& e) {
    throw ModelError(ModelErrorKind::kBadResponse,
                     std::string("malformed chat completion: ") + e.what());
  }
}

MockScript& MockScript::Always(std::string response) {
  MockRule r;
  r.responses.push_back(std::move(response));
  rules.push_back(std::move(r));
  return *this;
}

MockScript& MockScript::WhenContains(std::string needle, std::string response) {
  MockRule r;
  r.match = MockRule::Match::kContains;
  r.pattern = std::move(needle);
  r.responses.push_back(std::move(response));
  rules.push_back(std::move(r));
  return *this;
}

MockScript& MockScript::WhenRegex(std::string pattern, std::string response) {
  MockRule r;
  r.match = MockRule::Match::kRegex;
  r.pattern = std::move(pattern);
  r.responses.push_back(std::move(response));
  rules.push_back(std::move(r));
  return *this;
}

MockScript& MockScript::When(std::function<bool(const ChatRequest&)> predicate,
                             std::string response) {
  MockRule r;
  r.match = MockRule::Match::kPredicate;
  r.predicate = std::move(predicate);
  r.responses.push_back(std::move(response));
  rules.push_back(std::move(r));
  return *this;
}

MockScript& MockScript::Sequence(std::vector<std::string> responses) {
  MockRule r;
  r.responses = std::move(responses);
  rules.push_back(std::move(r));
  return *this;
}

MockScript& MockScript::Fail(ModelErrorKind kind) {
  MockRule r;
  r.error = kind;
  rules.push_back(std::move(r));
  return *this;
}

MockScript ParseMockScriptYaml(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("invalid mock script: ") + e.what());
  }
  if (!root.IsSequence()) throw std::invalid_argument("mock script must be a list");
  MockScript script;
  for (const auto& node : root) {
    MockRule r;
    if (node["contains"]) {
      r.match = MockRule::Match::kContains;
      r.pattern = node["contains"].as<std::string>();
    } else if (node["regex"]) {
      r.match = MockRule::Match::kRegex;
      r.pattern = node["regex"].as<std::string>();
    }
    if (node["response"]) r.responses.push_back(node["response"].as<std::string>());
    if (node["responses"]) {
      for (const auto& s : node["responses"]) r.responses.push_back(s.as<std::string>());
    }
    if (node["error"]) {
      const auto e = node["error"].as<std::string>();
      if (e == "timeout") {
        r.error = ModelErrorKind::kTimeout;
      } else if (e == "unreachable") {
        r.error = ModelErrorKind::kUnreachable;
      } else if (e == "upstream") {
        r.error = ModelErrorKind::kUpstreamStatus;
      } else {
        throw std::invalid_argument("unknown mock error '" + e + "'");
      }
    }
    if (r.responses.empty() && !r.error) {
      throw std::invalid_argument("mock rule needs a response or an error");
    }
    script.rules.push_back(std::move(r));
  }
  return script;
}

MockScript LoadMockScriptFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mock script " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseMockScriptYaml(buffer.str());
}

MockChatClient::MockChatClient(MockScript script)
    : script_(std::move(script)), cursor_(script_.rules.size(), 0) {}

Completion MockChatClient::Complete(const ChatRequest& request,
                                    std::chrono::milliseconds /*timeout*/) {
  request.Validate();
  const auto started = std::chrono::steady_clock::now();
  const std::string content = request.JoinedContent();
  std::lock_guard<std::mutex> lock(mu_);
  calls_.push_back(request);
  for (std::size_t i = 0; i < script_.rules.size(); ++i) {
    const MockRule& rule = script_.rules[i];
    bool hit = false;
    switch (rule.match) {
      case MockRule::Match::kAny:
        hit = true;
        break;
      case MockRule::Match::kContains:
        hit = content.find(rule.pattern) != std::string::npos;
        break;
      case MockRule::Match::kRegex:
        hit = boost::regex_search(content, boost::regex(rule.pattern));
        break;
      case MockRule::Match::kPredicate:
        hit = rule.predicate && rule.predicate(request);
        break;
    }
    if (!hit) continue;
    if (rule.error) throw ModelError(*rule.error, "scripted mock failure");
    std::size_t& c = cursor_[i];
    const std::string& text = rule.responses[std::min(c, rule.responses.size() - 1)];
    if (c < rule.responses.size()) ++c;
    return {text, std::chrono::duration_cast<std::chrono::microseconds>(
                      std::chrono::steady_clock::now() - started)};
  }
  throw ModelError(ModelErrorKind::kNoScript, "no scripted response for request");
}

std::size_t MockChatClient::call_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  return calls_.size();
}

std::vector<ChatRequest> MockChatClient::calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return calls_;
}

std::shared_ptr<ChatClient> MakeChatClient(const std::string& endpoint,
                                           const std::string& mock_script_path) {
  if (endpoint == "mock") {
    MockScript script;
    if (!mock_script_path.empty()) script = LoadMockScriptFile(mock_script_path);
    return std::make_shared<MockChatClient>(std::move(script));
  }
  const char* key = std::getenv("REDACT_GATE_MODEL_KEY");
  return std::make_shared<HttpChatClient>(endpoint, key != nullptr ? key : "");
}

}  // namespace redact_gate
