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

#ifndef REDACT_GATE_TRANSFORMS_H_
#define REDACT_GATE_TRANSFORMS_H_

#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "redact_gate/model_client.h"
#include "redact_gate/types.h"

namespace redact_gate {

// System prompts for the local-model tasks.
struct Prompts {
  std::string version;
  std::string classifier;
  std::string rephrase;
  std::string judge;
  std::string sensitivity;
};

// Built-in prompts, identical to the shipped prompts file.
const Prompts& DefaultPrompts();
// Sectioned text file: a `version:` line, then `[classifier]`, `[rephrase]`,
// `[judge]`, `[sensitivity]` sections. Missing sections keep the default.
Prompts ParsePrompts(const std::string& text);
Prompts LoadPromptsFile(const std::string& path);

// How transforms reach the local model.
struct ModelAccess {
  ChatClient* client = nullptr;  // not owned; null means unavailable
  std::string model = "local";
  std::chrono::milliseconds timeout{30000};
};

enum class RouteClass { kTrivial, kComplex };

std::string_view RouteClassName(RouteClass route);

// Offline fallback when the classifier is unavailable:
//   contains a ``` fence            -> COMPLEX
//   longer than 1200 bytes          -> COMPLEX
//   question form and <= 400 bytes  -> TRIVIAL
//   at most 160 bytes               -> TRIVIAL
//   otherwise                       -> COMPLEX
RouteClass HeuristicRoute(std::string_view text);

// Parses a classifier answer: exactly one word, TRIVIAL or COMPLEX, with
// surrounding whitespace ignored and case folded.
std::optional<RouteClass> ParseRouteAnswer(std::string_view answer);

// Never throws. Model failures or unparseable answers fall back to the
// heuristic when enabled, otherwise to COMPLEX.
RouteClass ClassifyRoute(std::string_view text, const ModelAccess& model,
                         const Prompts& prompts, bool fallback_heuristic);

// Identifier-shaped tokens (snake_case, camelCase, dotted paths), code in
// backticks or fences, numbers with units, and alphabetic words of at least
// five letters that are not stopwords. Placeholders are ignored.
// Deduplicated, in first-occurrence order.
std::vector<std::string> ExtractKeyTerms(std::string_view text);

// Fraction of `terms` found in `candidate` as whole tokens; 1 when `terms`
// is empty.
double TermSurvival(const std::vector<std::string>& terms,
                    std::string_view candidate);

struct RephraseResult {
  std::string text;  // the rephrase when accepted, else the input
  double survival_rate = 0.0;
  bool accepted = false;
  bool placeholders_preserved = false;
  std::vector<std::string> key_terms;
  std::string rejection;  // empty when accepted
};

// Asks the local model for a rephrase and validates it. Rejected when the
// model fails, when survival < threshold, or when the placeholder multiset
// changes.
RephraseResult Rephrase(std::string_view text, const ModelAccess& model,
                        const Prompts& prompts, double survival_threshold);

// Validation step on its own, for a candidate produced elsewhere.
RephraseResult ValidateRephrase(std::string_view input, std::string candidate,
                                double survival_threshold);

// p(eps) = 1 / (1 + e^eps). Throws std::invalid_argument for eps <= 0.
double DpSubstitutionProb(double epsilon);

// Word -> single-word alternatives. Keys and alternatives are lowercase
// ASCII letters.
class Lexicon {
 public:
  Lexicon() = default;
  // Throws std::invalid_argument on malformed entries.
  explicit Lexicon(std::map<std::string, std::vector<std::string>> entries);

  const std::vector<std::string>* Find(std::string_view folded) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, std::vector<std::string>, std::less<>>& entries()
      const {
    return entries_;
  }

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> entries_;
};

// Tab-separated `word<TAB>alt1,alt2,...`; '#' starts a comment line.
Lexicon ParseLexicon(const std::string& text);
Lexicon LoadLexiconFile(const std::string& path);

struct NoiseOutcome {
  std::string text;
  std::size_t eligible_words = 0;
  std::size_t substituted_words = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
};

// Byte ranges of placeholders and ``` fenced blocks, sorted.
std::vector<std::pair<std::size_t, std::size_t>> ProtectedRegions(
    std::string_view text);

// Substitutes each eligible word with probability p(eps). An eligible word
// is a maximal ASCII-letter run of length >= 3 whose lowercase form is in
// the lexicon and which lies outside placeholders and code fences.
// Deterministic in (text, epsilon, seed, lexicon).
NoiseOutcome ApplyDpNoise(std::string_view text, double epsilon,
                          std::uint64_t seed, const Lexicon& lexicon);

// Per-request noise seed.
std::uint64_t RequestSeed(std::uint64_t config_seed, std::string_view request_id);

// Optional third detector: asks the local model to list sensitive phrases,
// one per line, and spans every verbatim occurrence as `implicit`. Model
// failures yield no spans.
inline constexpr double kClassifierSpanConfidence = 0.6;
std::vector<Span> DetectWithClassifier(std::string_view text,
                                       const ModelAccess& model,
                                       const Prompts& prompts);

}  // namespace redact_gate

#endif  // REDACT_GATE_TRANSFORMS_H_
