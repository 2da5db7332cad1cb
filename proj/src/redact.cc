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

#include "redact_gate/redact.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace redact_gate {
namespace {

std::string UpperKindName(SensitivityKind kind) {
  std::string name(KindName(kind));
  for (char& c : name) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return name;
}

void Wipe(std::string& s) {
  volatile char* p = s.data();
  for (std::size_t i = 0; i < s.size(); ++i) p[i] = 0;
  s.clear();
}

}  // namespace

std::string Placeholder::Render() const {
  std::string out(kPlaceholderOpen);
  out += UpperKindName(kind);
  out += '_';
  out += std::to_string(index);
  out += kPlaceholderClose;
  return out;
}

std::optional<Placeholder> ParsePlaceholder(std::string_view token) {
  if (token.size() <= kPlaceholderOpen.size() + kPlaceholderClose.size() ||
      token.substr(0, kPlaceholderOpen.size()) != kPlaceholderOpen ||
      token.substr(token.size() - kPlaceholderClose.size()) != kPlaceholderClose) {
    return std::nullopt;
  }
  std::string_view body = token.substr(
      kPlaceholderOpen.size(),
      token.size() - kPlaceholderOpen.size() - kPlaceholderClose.size());
  const auto underscore = body.rfind('_');
  if (underscore == std::string_view::npos || underscore == 0 ||
      underscore + 1 == body.size()) {
    return std::nullopt;
  }
  std::string_view digits = body.substr(underscore + 1);
  if (digits.size() > 9 || digits.front() == '0') return std::nullopt;
  int index = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') return std::nullopt;
    index = index * 10 + (c - '0');
  }
  std::string kind_name;
  for (char c : body.substr(0, underscore)) {
    if (!(std::isupper(static_cast<unsigned char>(c)) || c == '_')) {
      return std::nullopt;
    }
    kind_name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  auto kind = ParseKind(kind_name);
  if (!kind) return std::nullopt;
  return Placeholder{*kind, index};
}

std::vector<PlaceholderMatch> FindPlaceholders(std::string_view text) {
  std::vector<PlaceholderMatch> out;
  std::size_t pos = text.find(kPlaceholderOpen);
  while (pos != std::string_view::npos) {
    const std::size_t close = text.find(kPlaceholderClose, pos + kPlaceholderOpen.size());
    if (close == std::string_view::npos) break;
    const std::size_t end = close + kPlaceholderClose.size();
    // A nested opener means this one was a stray bracket.
    const std::size_t next_open = text.find(kPlaceholderOpen, pos + kPlaceholderOpen.size());
    if (next_open != std::string_view::npos && next_open < close) {
      pos = next_open;
      continue;
    }
    if (auto ph = ParsePlaceholder(text.substr(pos, end - pos))) {
      out.push_back({pos, end, *ph});
      pos = text.find(kPlaceholderOpen, end);
    } else {
      pos = text.find(kPlaceholderOpen, pos + kPlaceholderOpen.size());
    }
  }
  return out;
}

ReverseMap::ReverseMap(std::string request_id)
    : request_id_(std::move(request_id)),
      created_(std::chrono::system_clock::now()) {}

ReverseMap::~ReverseMap() { Clear(); }

ReverseMap::ReverseMap(ReverseMap&& other) noexcept
    : request_id_(std::move(other.request_id_)),
      created_(other.created_),
      entries_(std::move(other.entries_)),
      by_value_(std::move(other.by_value_)),
      by_placeholder_(std::move(other.by_placeholder_)),
      reserved_(std::move(other.reserved_)),
      next_index_(std::move(other.next_index_)) {
  other.Clear();
}

ReverseMap& ReverseMap::operator=(ReverseMap&& other) noexcept {
  if (this != &other) {
    Clear();
    request_id_ = std::move(other.request_id_);
    created_ = other.created_;
    entries_ = std::move(other.entries_);
    by_value_ = std::move(other.by_value_);
    by_placeholder_ = std::move(other.by_placeholder_);
    reserved_ = std::move(other.reserved_);
    next_index_ = std::move(other.next_index_);
    other.Clear();
  }
  return *this;
}

void ReverseMap::Reserve(std::string_view text) {
  for (const auto& m : FindPlaceholders(text)) reserved_.insert(m.placeholder);
}

const std::string& ReverseMap::Assign(SensitivityKind kind,
                                      std::string_view original) {
  auto key = std::make_pair(kind, std::string(original));
  if (auto it = by_value_.find(key); it != by_value_.end()) {
    return entries_[it->second].rendered;
  }
  int& next = next_index_[kind];
  Placeholder ph{kind, next + 1};
  while (reserved_.count(ph) != 0) ++ph.index;
  next = ph.index;
  Entry entry{ph, ph.Render(), std::string(original)};
  const std::size_t slot = entries_.size();
  by_placeholder_.emplace(entry.rendered, slot);
  by_value_.emplace(std::move(key), slot);
  entries_.push_back(std::move(entry));
  return entries_.back().rendered;
}

const std::string* ReverseMap::Lookup(std::string_view placeholder) const {
  auto it = by_placeholder_.find(placeholder);
  if (it == by_placeholder_.end()) return nullptr;
  return &entries_[it->second].original;
}

std::vector<std::pair<std::string, SensitivityKind>> ReverseMap::Placeholders()
    const {
  std::vector<std::pair<std::string, SensitivityKind>> out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) out.emplace_back(e.rendered, e.placeholder.kind);
  return out;
}

void ReverseMap::Clear() {
  for (Entry& e : entries_) Wipe(e.original);
  entries_.clear();
  // by_value_ keys hold originals too.
  while (!by_value_.empty()) {
    auto node = by_value_.extract(by_value_.begin());
    Wipe(node.key().second);
  }
  by_placeholder_.clear();
  reserved_.clear();
  next_index_.clear();
}

std::string RedactInto(std::string_view text, const std::vector<Span>& spans,
                       ReverseMap& map) {
  std::string out;
  out.reserve(text.size());
  std::size_t cursor = 0;
  for (const Span& span : spans) {
    if (span.start() < cursor) {
      throw std::invalid_argument("redact: spans overlap or are unsorted");
    }
    if (span.end() > text.size() ||
        text.substr(span.start(), span.length()) != span.text()) {
      throw std::invalid_argument("redact: span does not refer to this text");
    }
    out.append(text.substr(cursor, span.start() - cursor));
    out += map.Assign(span.kind(), span.text());
    cursor = span.end();
  }
  out.append(text.substr(cursor));
  return out;
}

RedactResult Redact(std::string_view text, const std::vector<Span>& spans) {
  RedactResult result{{}, ReverseMap()};
  result.map.Reserve(text);
  result.text = RedactInto(text, spans, result.map);
  return result;
}

std::string Restore(std::string_view response_text, const ReverseMap& map) {
  if (map.empty()) return std::string(response_text);
  std::string out;
  out.reserve(response_text.size());
  std::size_t cursor = 0;
  for (const auto& m : FindPlaceholders(response_text)) {
    const std::string* original =
        map.Lookup(response_text.substr(m.start, m.end - m.start));
    if (original == nullptr) continue;
    out.append(response_text.substr(cursor, m.start - cursor));
    out += *original;
    cursor = m.end;
  }
  out.append(response_text.substr(cursor));
  return out;
}

}  // namespace redact_gate
