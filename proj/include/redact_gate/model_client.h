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

#ifndef REDACT_GATE_MODEL_CLIENT_H_
#define REDACT_GATE_MODEL_CLIENT_H_

#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace redact_gate {

struct ChatMessage {
  std::string role;  // system | user | assistant
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct ChatRequest {
  std::string model = "local";
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
  int max_tokens = 256;

  // Throws std::invalid_argument for an empty message list or an unknown
  // role.
  void Validate() const;
  // Message contents joined by newlines; what mock matchers see.
  std::string JoinedContent() const;
};

nlohmann::json ToJson(const ChatRequest& request);

struct Completion {
  std::string text;
  std::chrono::microseconds latency{0};
};

enum class ModelErrorKind { kTimeout, kUnreachable, kUpstreamStatus, kBadResponse, kNoScript };

class ModelError : public std::runtime_error {
 public:
  ModelError(ModelErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ModelErrorKind kind() const { return kind_; }

 private:
  ModelErrorKind kind_;
};

// Chat-completions client. Implementations are safe to share between
// concurrent requests.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  // Throws ModelError.
  virtual Completion Complete(const ChatRequest& request,
                              std::chrono::milliseconds timeout) = 0;
};

// POSTs to <base_url>/v1/chat/completions. No retries.
class HttpChatClient : public ChatClient {
 public:
  // `bearer_token` is sent as Authorization when non-empty.
  explicit HttpChatClient(std::string base_url, std::string bearer_token = {});

  Completion Complete(const ChatRequest& request,
                      std::chrono::milliseconds timeout) override;

 private:
  std::string base_url_;
  std::string bearer_token_;
};

// Ordered rules; the first rule whose matcher accepts the request content
// answers. A rule with several responses hands them out in order and then
// repeats the last one.
struct MockRule {
  enum class Match { kAny, kContains, kRegex, kPredicate };
  Match match = Match::kAny;
  std::string pattern;
  std::function<bool(const ChatRequest&)> predicate;
  std::vector<std::string> responses;
  // When set, the rule raises this error instead of answering.
  std::optional<ModelErrorKind> error;
};

struct MockScript {
  std::vector<MockRule> rules;

  MockScript& Always(std::string response);
  MockScript& WhenContains(std::string needle, std::string response);
  MockScript& WhenRegex(std::string pattern, std::string response);
  MockScript& When(std::function<bool(const ChatRequest&)> predicate,
                   std::string response);
  MockScript& Sequence(std::vector<std::string> responses);
  MockScript& Fail(ModelErrorKind kind);
};

// YAML list of {contains|regex|any, response|responses|error}.
MockScript ParseMockScriptYaml(const std::string& yaml_text);
MockScript LoadMockScriptFile(const std::string& path);

// Offline, deterministic client. Requests with no matching rule raise
// ModelError(kNoScript).
class MockChatClient : public ChatClient {
 public:
  explicit MockChatClient(MockScript script = {});

  Completion Complete(const ChatRequest& request,
                      std::chrono::milliseconds timeout) override;

  std::size_t call_count() const;
  std::vector<ChatRequest> calls() const;

 private:
  mutable std::mutex mu_;
  MockScript script_;
  std::vector<std::size_t> cursor_;
  std::vector<ChatRequest> calls_;
};

// Builds the client named by an endpoint string: "mock" (optionally with a
// script file) or an HTTP base URL. REDACT_GATE_MODEL_KEY supplies the
// bearer token for HTTP endpoints.
std::shared_ptr<ChatClient> MakeChatClient(const std::string& endpoint,
                                           const std::string& mock_script_path);

}  // namespace redact_gate

#endif  // REDACT_GATE_MODEL_CLIENT_H_
