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

#ifndef REDACT_GATE_STUBS_SPLIT_H_
#define REDACT_GATE_STUBS_SPLIT_H_

#include <chrono>
#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

namespace redact_gate::stubs {

// Stand-in for the first layers of a split model: one row of `dims` random
// values per whitespace token of the prompt. The prompt only sets the row
// count, so nothing of its text reaches the vector. Throws
// std::invalid_argument on an empty prompt.
struct Activations {
  std::size_t rows = 0;
  std::size_t dims = 0;
  std::vector<float> values;  // row-major
};

Activations SimulateActivations(const std::string& prompt, std::uint64_t seed,
                                std::size_t dims = 16);

class SplitEndpoint {
 public:
  virtual ~SplitEndpoint() = default;
  // Returns the response body; throws on transport failure.
  virtual std::string Send(const std::string& body) = 0;
};

// POSTs to <base_url>/v1/split/forward.
class HttpSplitEndpoint : public SplitEndpoint {
 public:
  explicit HttpSplitEndpoint(std::string base_url,
                             std::chrono::milliseconds timeout = std::chrono::seconds(30));
  std::string Send(const std::string& body) override;

 private:
  std::string base_url_;
  std::chrono::milliseconds timeout_;
};

// Records wire bytes and answers {"completion_tokens": rows}.
class MockSplitEndpoint : public SplitEndpoint {
 public:
  std::string Send(const std::string& body) override;
  std::vector<std::string> captures() const;

 private:
  mutable std::mutex mu_;
  std::vector<std::string> captures_;
};

std::string ActivationsToJson(const Activations& activations);

// Posts the activations and returns the simulated completion token count.
// Throws std::invalid_argument for an empty vector and std::runtime_error
// for a malformed reply.
std::size_t SplitStubSend(const Activations& activations, SplitEndpoint& endpoint);

}  // namespace redact_gate::stubs

#endif  // REDACT_GATE_STUBS_SPLIT_H_
