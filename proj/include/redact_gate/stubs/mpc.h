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

#ifndef REDACT_GATE_STUBS_MPC_H_
#define REDACT_GATE_STUBS_MPC_H_

#include <cstdint>
#include <vector>

namespace redact_gate::stubs {

// Arithmetic is in Z_{2^32}; uint32_t wraparound does the reduction.
using RingElem = std::uint32_t;
inline constexpr int kRingBits = 32;

inline constexpr double kMpcSetupMs = 200.0;
inline constexpr double kMpcPerTokenMs = 50.0;

struct ShareVector {
  std::size_t parties = 0;
  std::vector<std::vector<RingElem>> shares;  // [party][element]
};

struct EmbeddingTable {
  std::size_t rows = 0;  // vocabulary size
  std::size_t cols = 0;  // embedding width
  std::vector<RingElem> data;  // row-major

  RingElem at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::vector<RingElem> Row(std::size_t r) const;
};

std::vector<RingElem> OneHot(std::size_t token, std::size_t vocab);

// Parties 0..N-2 get uniform random vectors, the last the residual.
// Throws std::invalid_argument when parties < 2 or one_hot is not one-hot.
ShareVector MpcShare(const std::vector<RingElem>& one_hot, std::size_t parties,
                     std::uint64_t seed);

std::vector<RingElem> Reconstruct(const std::vector<std::vector<RingElem>>& parts);

// Each party's share times the table; throws std::invalid_argument when
// the share length differs from the table's row count.
std::vector<std::vector<RingElem>> MpcPartials(const ShareVector& shares,
                                               const EmbeddingTable& table);

// Sum of the partials: the embedding row of the shared token.
std::vector<RingElem> MpcEmbed(const ShareVector& shares, const EmbeddingTable& table);

struct MpcTimings {
  double setup_ms = 0.0;
  std::vector<double> per_token_ms;
  double total_ms() const;
};

// Simulated, not slept: nominal constants with seeded +/-10% jitter.
MpcTimings SimulateMpcTimings(std::size_t tokens, std::uint64_t seed);

EmbeddingTable RandomEmbeddingTable(std::size_t rows, std::size_t cols,
                                    std::uint64_t seed);

}  // namespace redact_gate::stubs

#endif  // REDACT_GATE_STUBS_MPC_H_
