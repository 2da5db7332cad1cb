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

#ifndef REDACT_GATE_REDACT_H_
#define REDACT_GATE_REDACT_H_

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "redact_gate/types.h"

namespace redact_gate {

// U+27E8 and U+27E9 in UTF-8.
inline constexpr std::string_view kPlaceholderOpen = "\xE2\x9F\xA8";
inline constexpr std::string_view kPlaceholderClose = "\xE2\x9F\xA9";

struct Placeholder {
  SensitivityKind kind;
  int index;  // >= 1

  // ⟨EMAIL_1⟩
  std::string Render() const;

  friend auto operator<=>(const Placeholder&, const Placeholder&) = default;
};

// Parses a rendered placeholder; nullopt if `token` is not one.
std::optional<Placeholder> ParsePlaceholder(std::string_view token);

struct PlaceholderMatch {
  std::size_t start;
  std::size_t end;
  Placeholder placeholder;
};

// All well-formed placeholders in `text`, left to right.
std::vector<PlaceholderMatch> FindPlaceholders(std::string_view text);

// Per-request placeholder -> original mapping. Memory only: there is no
// serialization, copies are disabled, and contents are wiped on
// destruction.
class ReverseMap {
 public:
  explicit ReverseMap(std::string request_id = {});
  ~ReverseMap();
  ReverseMap(ReverseMap&& other) noexcept;
  ReverseMap& operator=(ReverseMap&& other) noexcept;
  ReverseMap(const ReverseMap&) = delete;
  ReverseMap& operator=(const ReverseMap&) = delete;

  const std::string& request_id() const { return request_id_; }
  std::chrono::system_clock::time_point created() const { return created_; }

  // Marks placeholder tokens already present in `text` as taken so that new
  // assignments never collide with user text.
  void Reserve(std::string_view text);

  // Returns the placeholder for (kind, original), assigning the next free
  // index for the kind on first sight.
  const std::string& Assign(SensitivityKind kind, std::string_view original);

  // Original for a rendered placeholder, if mapped.
  const std::string* Lookup(std::string_view placeholder) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // (placeholder, kind) pairs in assignment order. Originals are not exposed
  // through this listing.
  std::vector<std::pair<std::string, SensitivityKind>> Placeholders() const;

  // Wipes every entry.
  void Clear();

 private:
  struct Entry {
    Placeholder placeholder;
    std::string rendered;
    std::string original;
  };

  std::string request_id_;
  std::chrono::system_clock::time_point created_;
  std::vector<Entry> entries_;
  std::map<std::pair<SensitivityKind, std::string>, std::size_t, std::less<>>
      by_value_;
  std::map<std::string, std::size_t, std::less<>> by_placeholder_;
  std::set<Placeholder> reserved_;
  std::map<SensitivityKind, int> next_index_;
};

struct RedactResult {
  std::string text;
  ReverseMap map;
};

// Replaces each span with its placeholder, extending `map`. Spans must be
// sorted and non-overlapping (std::invalid_argument otherwise) and must
// refer to `text`.
std::string RedactInto(std::string_view text, const std::vector<Span>& spans,
                       ReverseMap& map);

// Single-text convenience: reserves placeholders in `text`, then redacts.
RedactResult Redact(std::string_view text, const std::vector<Span>& spans);

// Replaces every mapped placeholder with its original, left to right, by
// literal match. Unmapped placeholder-shaped tokens are left as they are.
std::string Restore(std::string_view response_text, const ReverseMap& map);

}  // namespace redact_gate

#endif  // REDACT_GATE_REDACT_H_
