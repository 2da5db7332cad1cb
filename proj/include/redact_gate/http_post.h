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

#ifndef REDACT_GATE_HTTP_POST_H_
#define REDACT_GATE_HTTP_POST_H_

#include <chrono>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace redact_gate {

struct HttpResult {
  int status = 0;
  std::string body;
};

class HttpTransportError : public std::runtime_error {
 public:
  HttpTransportError(bool timed_out, const std::string& what)
      : std::runtime_error(what), timed_out_(timed_out) {}
  bool timed_out() const { return timed_out_; }

 private:
  bool timed_out_;
};

// Splits "http://host:port/prefix" into origin and path prefix.
// Throws std::invalid_argument on anything else.
std::pair<std::string, std::string> SplitBaseUrl(const std::string& base_url);

// POSTs a JSON body to base_url + path. Throws HttpTransportError when no
// HTTP response arrives (connect failure, timeout).
HttpResult PostJson(const std::string& base_url, const std::string& path,
                    const std::string& body,
                    const std::vector<std::pair<std::string, std::string>>& headers,
                    std::chrono::milliseconds timeout);

}  // namespace redact_gate

#endif  // REDACT_GATE_HTTP_POST_H_
