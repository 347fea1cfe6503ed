// Copyright 2026 The SpecDiff Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "specdiff/random.hpp"

#include <cmath>

#include "specdiff/error.hpp"

namespace specdiff {

namespace {

constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr uint32_t kPhiloxW1 = 0xBB67AE85u;

constexpr double kTwoPi = 6.283185307179586476925286766559;

inline void PhiloxRound(std::array<uint32_t, 4>& ctr,
                        const std::array<uint32_t, 2>& key) {
  const uint64_t p0 = uint64_t{kPhiloxM0} * ctr[0];
  const uint64_t p1 = uint64_t{kPhiloxM1} * ctr[2];
  const uint32_t hi0 = static_cast<uint32_t>(p0 >> 32);
  const uint32_t lo0 = static_cast<uint32_t>(p0);
  const uint32_t hi1 = static_cast<uint32_t>(p1 >> 32);
  const uint32_t lo1 = static_cast<uint32_t>(p1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

std::array<uint32_t, 4> Philox4x32(uint64_t counter_lo, uint64_t counter_hi,
                                   uint64_t key) {
  std::array<uint32_t, 4> ctr = {
      static_cast<uint32_t>(counter_lo), static_cast<uint32_t>(counter_lo >> 32),
      static_cast<uint32_t>(counter_hi), static_cast<uint32_t>(counter_hi >> 32)};
  std::array<uint32_t, 2> k = {static_cast<uint32_t>(key),
                               static_cast<uint32_t>(key >> 32)};
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k[0] += kPhiloxW0;
      k[1] += kPhiloxW1;
    }
    PhiloxRound(ctr, k);
  }
  return ctr;
}

double StandardNormal(uint64_t seed, uint64_t sequence, uint64_t index) {
  const std::array<uint32_t, 4> r = Philox4x32(index, sequence, seed);
  const uint64_t a = (uint64_t{r[0]} << 32) | r[1];
  const uint64_t b = (uint64_t{r[2]} << 32) | r[3];
  // (0, 1] so the log below never sees zero.
  const double u1 = static_cast<double>((a >> 11) + 1) * 0x1.0p-53;
  const double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

std::vector<double> StandardNormalVector(uint64_t seed, uint64_t sequence,
                                         size_t n) {
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) {
    out[i] = StandardNormal(seed, sequence, i);
  }
  return out;
}

int UniformStep(uint64_t seed, uint64_t sequence, int n) {
  if (n < 1) {
    throw InvalidArgumentError("UniformStep: n must be >= 1");
  }
  const std::array<uint32_t, 4> r = Philox4x32(0, sequence, seed);
  const uint64_t x = (uint64_t{r[0]} << 32) | r[1];
  return static_cast<int>(x % static_cast<uint64_t>(n)) + 1;
}

}  // namespace specdiff
