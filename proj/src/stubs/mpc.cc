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

#include "redact_gate/stubs/mpc.h"

#include <stdexcept>
#include <string>

#include "redact_gate/rng.h"

namespace redact_gate::stubs {

std::vector<RingElem> EmbeddingTable::Row(std::size_t r) const {
  if (r >= rows) throw std::out_of_range("embedding row out of range");
  return {data.begin() + static_cast<std::ptrdiff_t>(r * cols),
          data.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols)};
}

std::vector<RingElem> OneHot(std::size_t token, std::size_t vocab) {
  if (token >= vocab) throw std::invalid_argument("token id outside the vocabulary");
  std::vector<RingElem> v(vocab, 0);
  v[token] = 1;
  return v;
}

ShareVector MpcShare(const std::vector<RingElem>& one_hot, std::size_t parties,
                     std::uint64_t seed) {
  if (parties < 2) throw std::invalid_argument("secret sharing needs at least 2 parties");
  std::size_t ones = 0;
  for (RingElem e : one_hot) {
    if (e == 1) {
      ++ones;
    } else if (e != 0) {
      ones = 2;
      break;
    }
  }
  if (ones != 1) throw std::invalid_argument("input is not a one-hot vector");

  Rng rng(seed);
  ShareVector out;
  out.parties = parties;
  out.shares.assign(parties, std::vector<RingElem>(one_hot.size(), 0));
  std::vector<RingElem> residual = one_hot;
  for (std::size_t p = 0; p + 1 < parties; ++p) {
    for (std::size_t i = 0; i < one_hot.size(); ++i) {
      const auto r = static_cast<RingElem>(rng.Next() >> 32);
      out.shares[p][i] = r;
      residual[i] -= r;
    }
  }
  out.shares.back() = std::move(residual);
  return out;
}

std::vector<RingElem> Reconstruct(const std::vector<std::vector<RingElem>>& parts) {
  if (parts.empty()) return {};
  std::vector<RingElem> sum(parts.front().size(), 0);
  for (const auto& p : parts) {
    if (p.size() != sum.size()) throw std::invalid_argument("share length mismatch");
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += p[i];
  }
  return sum;
}

std::vector<std::vector<RingElem>> MpcPartials(const ShareVector& shares,
                                               const EmbeddingTable& table) {
  if (table.data.size() != table.rows * table.cols) {
    throw std::invalid_argument("embedding table data does not match its shape");
  }
  std::vector<std::vector<RingElem>> partials;
  for (const auto& share : shares.shares) {
    if (share.size() != table.rows) {
      throw std::invalid_argument("share length " + std::to_string(share.size()) +
                                  " does not match vocabulary " + std::to_string(table.rows));
    }
    std::vector<RingElem> acc(table.cols, 0);
    for (std::size_t r = 0; r < table.rows; ++r) {
      if (share[r] == 0) continue;
      for (std::size_t c = 0; c < table.cols; ++c) acc[c] += share[r] * table.at(r, c);
    }
    partials.push_back(std::move(acc));
  }
  return partials;
}

std::vector<RingElem> MpcEmbed(const ShareVector& shares, const EmbeddingTable& table) {
  return Reconstruct(MpcPartials(shares, table));
}

double MpcTimings::total_ms() const {
  double t = setup_ms;
  for (double x : per_token_ms) t += x;
  return t;
}

MpcTimings SimulateMpcTimings(std::size_t tokens, std::uint64_t seed) {
  Rng rng(seed);
  auto jitter = [&](double nominal) {
    return nominal * (1.0 + 0.10 * (2.0 * rng.Uniform() - 1.0));
  };
  MpcTimings t;
  t.setup_ms = jitter(kMpcSetupMs);
  for (std::size_t i = 0; i < tokens; ++i) t.per_token_ms.push_back(jitter(kMpcPerTokenMs));
  return t;
}

EmbeddingTable RandomEmbeddingTable(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  EmbeddingTable t{rows, cols, {}};
  t.data.reserve(rows * cols);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    t.data.push_back(static_cast<RingElem>(rng.Next() >> 32));
  }
  return t;
}

}  // namespace redact_gate::stubs
