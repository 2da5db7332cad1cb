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

#include "redact_gate/transforms.h"

#include <algorithm>
#include <boost/regex.hpp>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "redact_gate/redact.h"
#include "redact_gate/rng.h"

namespace redact_gate {
namespace {

constexpr std::string_view kFence = "```";

const std::unordered_set<std::string>& Stopwords() {
  static const std::unordered_set<std::string> kWords = {
      "about",   "above",    "after",     "again",    "against", "along",
      "already", "although", "always",    "among",    "another", "anything",
      "around",  "because",  "before",    "being",    "below",   "between",
      "could",   "doing",    "during",    "either",   "every",   "everything",
      "first",   "further",  "having",    "hello",    "itself",  "maybe",
      "might",   "myself",   "never",     "nothing",  "often",   "other",
      "others",  "ourselves", "please",   "quite",    "rather",  "really",
      "should",  "since",    "something", "still",    "thank",   "thanks",
      "their",   "theirs",   "there",     "these",    "thing",   "things",
      "think",   "those",    "though",    "through",  "under",   "until",
      "using",   "where",    "whether",   "which",    "while",   "whose",
      "within",  "without",  "would",     "yours",    "yourself", "themselves",
      "whatever", "someone", "anyone",    "everyone", "given",   "across",
  };
  return kWords;
}

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool IsAlpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool IsWordChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

// Replaces placeholders with spaces of equal byte length so offsets hold.
std::string BlankPlaceholders(std::string_view text) {
  std::string out(text);
  for (const auto& m : FindPlaceholders(text)) {
    std::fill(out.begin() + static_cast<std::ptrdiff_t>(m.start),
              out.begin() + static_cast<std::ptrdiff_t>(m.end), ' ');
  }
  return out;
}

bool IsIdentifierShaped(std::string_view tok) {
  bool has_alpha = false;
  for (char c : tok) has_alpha |= IsAlpha(c);
  if (!has_alpha) return false;
  for (std::size_t i = 0; i < tok.size(); ++i) {
    const char c = tok[i];
    const bool inner = i > 0 && i + 1 < tok.size();
    if (c == '_' && tok.size() > 1) return true;
    if (c == '.' && inner && std::isalnum(static_cast<unsigned char>(tok[i - 1])) &&
        std::isalnum(static_cast<unsigned char>(tok[i + 1]))) {
      return true;
    }
    if (i > 0 && std::islower(static_cast<unsigned char>(tok[i - 1])) &&
        std::isupper(static_cast<unsigned char>(c))) {
      return true;
    }
  }
  return false;
}

std::multiset<std::string> PlaceholderMultiset(std::string_view text) {
  std::multiset<std::string> out;
  for (const auto& m : FindPlaceholders(text)) {
    out.insert(std::string(text.substr(m.start, m.end - m.start)));
  }
  return out;
}

}  // namespace

const Prompts& DefaultPrompts() {
  static const Prompts kPrompts = {
      "1",
      "You triage requests for a privacy gateway. Reply with exactly one "
      "word: TRIVIAL if a small local model can fully answer the request, "
      "COMPLEX if it needs a frontier model.\n"
      "Request: What is the capital of France? -> TRIVIAL\n"
      "Request: Summarise this paragraph in one sentence. -> TRIVIAL\n"
      "Request: Refactor this 300-line Go service to use contexts. -> COMPLEX\n"
      "Request: Debug this race in our Kafka consumer. -> COMPLEX",
      "Rewrite the user's text so it no longer identifies any person, "
      "organisation or project, while keeping the technical question intact. "
      "Keep every token of the form \xE2\x9F\xA8KIND_N\xE2\x9F\xA9 exactly as "
      "written. Keep identifiers, file names and numbers. Reply with the "
      "rewritten text only.",
      "You audit redactions. Given the sensitive facts and a redacted text, "
      "answer YES if the redacted text still identifies the same individual "
      "or organisation, otherwise NO. Reply with exactly one word.",
      "List every phrase in the user's text that could identify a person or "
      "organisation without naming them. Reply with one phrase per line, "
      "copied verbatim, or NONE.",
  };
  return kPrompts;
}

Prompts ParsePrompts(const std::string& text) {
  Prompts p = DefaultPrompts();
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::map<std::string, std::string> bodies;
  while (std::getline(in, line)) {
    if (section.empty() && line.rfind("version:", 0) == 0) {
      p.version = Trim(line.substr(8));
      continue;
    }
    if (line.size() > 2 && line.front() == '[' && line.back() == ']') {
      section = line.substr(1, line.size() - 2);
      bodies[section];
      continue;
    }
    if (line.rfind('#', 0) == 0 && section.empty()) continue;
    if (!section.empty()) bodies[section] += line + "\n";
  }
  for (auto& [name, body] : bodies) {
    std::string trimmed = Trim(body);
    if (name == "classifier") {
      p.classifier = trimmed;
    } else if (name == "rephrase") {
      p.rephrase = trimmed;
    } else if (name == "judge") {
      p.judge = trimmed;
    } else if (name == "sensitivity") {
      p.sensitivity = trimmed;
    } else {
      throw std::invalid_argument("unknown prompt section [" + name + "]");
    }
  }
  return p;
}

Prompts LoadPromptsFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open prompts file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParsePrompts(buffer.str());
}

std::string_view RouteClassName(RouteClass route) {
  return route == RouteClass::kTrivial ? "TRIVIAL" : "COMPLEX";
}

RouteClass HeuristicRoute(std::string_view text) {
  if (text.find(kFence) != std::string_view::npos) return RouteClass::kComplex;
  if (text.size() > 1200) return RouteClass::kComplex;
  const std::string trimmed = Trim(text);
  bool question = !trimmed.empty() && trimmed.back() == '?';
  if (!question) {
    static const char* kLeads[] = {"what ", "how ", "why ",   "when ", "who ",
                                   "where ", "which ", "can ", "is ",   "are ",
                                   "does ", "do "};
    const std::string lower = Lower(trimmed);
    for (const char* lead : kLeads) {
      if (lower.rfind(lead, 0) == 0) {
        question = true;
        break;
      }
    }
  }
  if (question && text.size() <= 400) return RouteClass::kTrivial;
  if (text.size() <= 160) return RouteClass::kTrivial;
  return RouteClass::kComplex;
}

std::optional<RouteClass> ParseRouteAnswer(std::string_view answer) {
  const std::string word = Lower(Trim(answer));
  if (word == "trivial") return RouteClass::kTrivial;
  if (word == "complex") return RouteClass::kComplex;
  return std::nullopt;
}

RouteClass ClassifyRoute(std::string_view text, const ModelAccess& model,
                         const Prompts& prompts, bool fallback_heuristic) {
  const RouteClass fallback =
      fallback_heuristic ? HeuristicRoute(text) : RouteClass::kComplex;
  if (model.client == nullptr) return fallback;
  try {
    ChatRequest req;
    req.model = model.model;
    req.max_tokens = 4;
    req.messages = {{"system", prompts.classifier},
                    {"user", std::string(text)}};
    const Completion c = model.client->Complete(req, model.timeout);
    if (auto route = ParseRouteAnswer(c.text)) return *route;
  } catch (const std::exception&) {
    // Falls through to the fallback verdict.
  }
  return fallback;
}

std::vector<std::string> ExtractKeyTerms(std::string_view raw) {
  const std::string text = BlankPlaceholders(raw);
  std::vector<std::pair<std::size_t, std::string>> found;

  // Fenced blocks: every identifier token inside counts.
  std::vector<std::pair<std::size_t, std::size_t>> fenced;
  for (std::size_t open = text.find(kFence); open != std::string::npos;) {
    const std::size_t close = text.find(kFence, open + kFence.size());
    const std::size_t end = close == std::string::npos ? text.size() : close + kFence.size();
    fenced.emplace_back(open, end);
    if (close == std::string::npos) break;
    open = text.find(kFence, end);
  }
  static const boost::regex kCodeToken(R"([A-Za-z_][A-Za-z0-9_]*(?:\.[A-Za-z_][A-Za-z0-9_]*)*)");
  auto in_fence = [&fenced](std::size_t pos) {
    for (const auto& [b, e] : fenced) {
      if (pos >= b && pos < e) return true;
    }
    return false;
  };
  for (const auto& [b, e] : fenced) {
    // Skip the language tag line after the opening fence.
    std::size_t body = text.find('\n', b);
    if (body == std::string::npos || body >= e) continue;
    const std::size_t body_end = e - (e >= kFence.size() && text.compare(e - 3, 3, kFence) == 0 ? 3 : 0);
    auto first = text.begin() + static_cast<std::ptrdiff_t>(body);
    auto last = text.begin() + static_cast<std::ptrdiff_t>(std::max(body, body_end));
    for (boost::sregex_iterator it(first, last, kCodeToken), stop; it != stop; ++it) {
      if (it->length() >= 2) {
        found.emplace_back(body + static_cast<std::size_t>(it->position()), it->str());
      }
    }
  }

  // Inline `code`.
  for (std::size_t pos = 0; pos < text.size();) {
    const std::size_t open = text.find('`', pos);
    if (open == std::string::npos) break;
    if (text.compare(open, 3, kFence) == 0 || in_fence(open)) {
      pos = open + 1;
      continue;
    }
    const std::size_t close = text.find('`', open + 1);
    if (close == std::string::npos) break;
    std::string inner = Trim(std::string_view(text).substr(open + 1, close - open - 1));
    if (!inner.empty() && inner.find('\n') == std::string::npos) {
      found.emplace_back(open, inner);
    }
    pos = close + 1;
  }

  // Numbers with units.
  static const boost::regex kUnits(
      R"(\b\d+(?:\.\d+)?\s?(?:ms|us|ns|sec|s|min|h|KB|MB|GB|TB|kb|mb|gb|tb|%|px|rpm|rps|qps)(?![A-Za-z0-9]))");
  for (boost::sregex_iterator it(text.begin(), text.end(), kUnits), stop; it != stop; ++it) {
    const auto pos = static_cast<std::size_t>(it->position());
    if (!in_fence(pos)) found.emplace_back(pos, it->str());
  }

  // Plain tokens.
  static const boost::regex kToken(R"([A-Za-z0-9_][A-Za-z0-9_./-]*)");
  for (boost::sregex_iterator it(text.begin(), text.end(), kToken), stop; it != stop; ++it) {
    const auto pos = static_cast<std::size_t>(it->position());
    if (in_fence(pos)) continue;
    if (pos > 0 && text[pos - 1] == '`') continue;
    std::string tok = it->str();
    while (!tok.empty() && (tok.back() == '.' || tok.back() == '/' || tok.back() == '-')) {
      tok.pop_back();
    }
    if (tok.empty()) continue;
    if (IsIdentifierShaped(tok)) {
      found.emplace_back(pos, tok);
      continue;
    }
    const bool alphabetic = std::all_of(tok.begin(), tok.end(), IsAlpha);
    if (alphabetic && tok.size() >= 5 && Stopwords().count(Lower(tok)) == 0) {
      found.emplace_back(pos, tok);
    }
  }

  std::stable_sort(found.begin(), found.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::string> terms;
  std::unordered_set<std::string> seen;
  for (auto& [pos, term] : found) {
    if (seen.insert(term).second) terms.push_back(std::move(term));
  }
  return terms;
}

double TermSurvival(const std::vector<std::string>& terms,
                    std::string_view candidate) {
  if (terms.empty()) return 1.0;
  std::size_t kept = 0;
  for (const std::string& term : terms) {
    for (std::size_t pos = candidate.find(term); pos != std::string_view::npos;
         pos = candidate.find(term, pos + 1)) {
      const std::size_t end = pos + term.size();
      const bool left = pos == 0 || !IsWordChar(candidate[pos - 1]) ||
                        !IsWordChar(term.front());
      const bool right = end == candidate.size() || !IsWordChar(candidate[end]) ||
                         !IsWordChar(term.back());
      if (left && right) {
        ++kept;
        break;
      }
    }
  }
  return static_cast<double>(kept) / static_cast<double>(terms.size());
}

RephraseResult ValidateRephrase(std::string_view input, std::string candidate,
                                double survival_threshold) {
  RephraseResult r;
  r.key_terms = ExtractKeyTerms(input);
  candidate = Trim(candidate);
  r.survival_rate = TermSurvival(r.key_terms, candidate);
  r.placeholders_preserved = PlaceholderMultiset(input) == PlaceholderMultiset(candidate);
  if (candidate.empty()) {
    r.rejection = "empty rephrase";
  } else if (!r.placeholders_preserved) {
    r.rejection = "placeholders changed";
  } else if (r.survival_rate < survival_threshold) {
    r.rejection = "key-term survival below threshold";
  }
  r.accepted = r.rejection.empty();
  r.text = r.accepted ? std::move(candidate) : std::string(input);
  return r;
}

RephraseResult Rephrase(std::string_view text, const ModelAccess& model,
                        const Prompts& prompts, double survival_threshold) {
  if (model.client == nullptr) {
    RephraseResult r;
    r.text = std::string(text);
    r.key_terms = ExtractKeyTerms(text);
    r.rejection = "model unavailable";
    return r;
  }
  try {
    ChatRequest req;
    req.model = model.model;
    req.max_tokens = 2048;
    req.messages = {{"system", prompts.rephrase}, {"user", std::string(text)}};
    Completion c = model.client->Complete(req, model.timeout);
    return ValidateRephrase(text, std::move(c.text), survival_threshold);
  } catch (const std::exception& e) {
    RephraseResult r;
    r.text = std::string(text);
    r.key_terms = ExtractKeyTerms(text);
    r.rejection = std::string("model failure: ") + e.what();
    return r;
  }
}

double DpSubstitutionProb(double epsilon) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("epsilon must be positive");
  }
  return 1.0 / (1.0 + std::exp(epsilon));
}

Lexicon::Lexicon(std::map<std::string, std::vector<std::string>> entries) {
  auto lower_alpha = [](const std::string& w) {
    return !w.empty() && std::all_of(w.begin(), w.end(), [](char c) {
      return c >= 'a' && c <= 'z';
    });
  };
  for (auto& [word, alts] : entries) {
    if (!lower_alpha(word)) {
      throw std::invalid_argument("lexicon headword must be lowercase letters: " + word);
    }
    if (alts.empty()) {
      throw std::invalid_argument("lexicon headword without alternatives: " + word);
    }
    for (const auto& a : alts) {
      if (!lower_alpha(a) || a == word) {
        throw std::invalid_argument("bad alternative '" + a + "' for " + word);
      }
    }
    entries_.emplace(word, std::move(alts));
  }
}

const std::vector<std::string>* Lexicon::Find(std::string_view folded) const {
  auto it = entries_.find(folded);
  return it == entries_.end() ? nullptr : &it->second;
}

Lexicon ParseLexicon(const std::string& text) {
  std::map<std::string, std::vector<std::string>> entries;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw std::invalid_argument("lexicon line " + std::to_string(line_no) +
                                  ": expected word<TAB>alternatives");
    }
    std::vector<std::string> alts;
    std::stringstream list(line.substr(tab + 1));
    std::string alt;
    while (std::getline(list, alt, ',')) {
      alt = Trim(alt);
      if (!alt.empty()) alts.push_back(alt);
    }
    auto& slot = entries[Trim(line.substr(0, tab))];
    slot.insert(slot.end(), alts.begin(), alts.end());
  }
  return Lexicon(std::move(entries));
}

Lexicon LoadLexiconFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lexicon " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseLexicon(buffer.str());
}

std::vector<std::pair<std::size_t, std::size_t>> ProtectedRegions(
    std::string_view text) {
  std::vector<std::pair<std::size_t, std::size_t>> regions;
  for (const auto& m : FindPlaceholders(text)) regions.emplace_back(m.start, m.end);
  for (std::size_t open = text.find(kFence); open != std::string_view::npos;) {
    const std::size_t close = text.find(kFence, open + kFence.size());
    const std::size_t end = close == std::string_view::npos ? text.size() : close + kFence.size();
    regions.emplace_back(open, end);
    if (close == std::string_view::npos) break;
    open = text.find(kFence, end);
  }
  std::sort(regions.begin(), regions.end());
  return regions;
}

NoiseOutcome ApplyDpNoise(std::string_view text, double epsilon,
                          std::uint64_t seed, const Lexicon& lexicon) {
  const double p = DpSubstitutionProb(epsilon);
  NoiseOutcome out;
  out.epsilon = epsilon;
  out.seed = seed;
  out.text.reserve(text.size());
  const auto regions = ProtectedRegions(text);
  std::size_t region = 0;
  Rng rng(seed);

  std::size_t i = 0;
  while (i < text.size()) {
    while (region < regions.size() && regions[region].second <= i) ++region;
    if (region < regions.size() && regions[region].first <= i) {
      const std::size_t end = regions[region].second;
      out.text.append(text.substr(i, end - i));
      i = end;
      continue;
    }
    if (!IsAlpha(text[i])) {
      out.text.push_back(text[i++]);
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && IsAlpha(text[j])) ++j;
    // A run that reaches into a protected region is left alone.
    const bool clipped = region < regions.size() && regions[region].first < j;
    const std::string_view word = text.substr(i, j - i);
    const std::vector<std::string>* alts =
        (!clipped && word.size() >= 3) ? lexicon.Find(Lower(word)) : nullptr;
    if (alts == nullptr) {
      out.text.append(word);
      i = j;
      continue;
    }
    ++out.eligible_words;
    if (!rng.Bernoulli(p)) {
      out.text.append(word);
      i = j;
      continue;
    }
    std::string alt = (*alts)[rng.Below(alts->size())];
    const bool all_upper = std::all_of(word.begin(), word.end(), [](char c) {
      return std::isupper(static_cast<unsigned char>(c)) != 0;
    });
    if (all_upper && word.size() > 1) {
      for (char& c : alt) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    } else if (std::isupper(static_cast<unsigned char>(word[0]))) {
      alt[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(alt[0])));
    }
    out.text += alt;
    ++out.substituted_words;
    i = j;
  }
  return out;
}

std::uint64_t RequestSeed(std::uint64_t config_seed, std::string_view request_id) {
  return config_seed ^ Fnv1a64(request_id);
}

std::vector<Span> DetectWithClassifier(std::string_view text,
                                       const ModelAccess& model,
                                       const Prompts& prompts) {
  std::vector<Span> spans;
  if (model.client == nullptr || text.empty()) return spans;
  std::string answer;
  try {
    ChatRequest req;
    req.model = model.model;
    req.max_tokens = 512;
    req.messages = {{"system", prompts.sensitivity}, {"user", std::string(text)}};
    answer = model.client->Complete(req, model.timeout).text;
  } catch (const std::exception&) {
    return spans;
  }
  std::istringstream in(answer);
  std::string line;
  while (std::getline(in, line)) {
    const std::string phrase = Trim(line);
    if (phrase.empty() || phrase == "NONE") continue;
    for (std::size_t pos = text.find(phrase); pos != std::string_view::npos;
         pos = text.find(phrase, pos + phrase.size())) {
      if (!IsCharBoundary(text, pos) || !IsCharBoundary(text, pos + phrase.size())) continue;
      spans.emplace_back(text, pos, pos + phrase.size(), SensitivityKind::kImplicit,
                         kClassifierSpanConfidence, DetectorSource::kClassifier);
    }
  }
  return spans;
}

}  // namespace redact_gate
