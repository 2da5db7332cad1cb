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

#include "redact_gate/stubs/split.h"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "redact_gate/http_post.h"
#include "redact_gate/rng.h"

namespace redact_gate::stubs {

Activations SimulateActivations(const std::string& prompt, std::uint64_t seed,
                                std::size_t dims) {
  std::size_t tokens = 0;
  bool in_word = false;
  for (char c : prompt) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++tokens;
    in_word = !space;
  }
  if (tokens == 0) throw std::invalid_argument("split stub needs a non-empty prompt");
  if (dims == 0) throw std::invalid_argument("activation width must be positive");
  Activations a;
  a.rows = tokens;
  a.dims = dims;
  a.values.reserve(tokens * dims);
  Rng rng(seed);
  for (std::size_t i = 0; i < tokens * dims; ++i) {
    a.values.push_back(static_cast<float>(rng.Uniform() * 2.0 - 1.0));
  }
  return a;
}

HttpSplitEndpoint::HttpSplitEndpoint(std::string base_url, std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {}

std::string HttpSplitEndpoint::Send(const std::string& body) {
  HttpResult r = PostJson(base_url_, "/v1/split/forward", body, {}, timeout_);
  if (r.status != 200) {
    throw std::runtime_error("split endpoint returned status " + std::to_string(r.status));
  }
  return r.body;
}

std::string MockSplitEndpoint::Send(const std::string& body) {
  const auto j = nlohmann::json::parse(body);
  {
    std::lock_guard lock(mu_);
    captures_.push_back(body);
  }
  return nlohmann::json{{"completion_tokens", j.at("shape").at(0)}}.dump();
}

std::vector<std::string> MockSplitEndpoint::captures() const {
  std::lock_guard lock(mu_);
  return captures_;
}

std::string ActivationsToJson(const Activations& a) {
  nlohmann::ordered_json j;
  j["shape"] = {a.rows, a.dims};
  nlohmann::ordered_json values = nlohmann::ordered_json::array();
  for (float v : a.values) values.push_back(std::round(static_cast<double>(v) * 1e6) / 1e6);
  j["activations"] = std::move(values);
  return j.dump();
}

std::size_t SplitStubSend(const Activations& activations, SplitEndpoint& endpoint) {
  if (activations.values.empty()) throw std::invalid_argument("empty activation vector");
  const std::string reply = endpoint.Send(ActivationsToJson(activations));
  try {
    return nlohmann::json::parse(reply).at("completion_tokens").get<std::size_t>();
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("malformed split endpoint reply: ") + e.what());
  }
}

}  // namespace redact_gate::stubs
