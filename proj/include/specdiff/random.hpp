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

#ifndef SPECDIFF_RANDOM_HPP_
#define SPECDIFF_RANDOM_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace specdiff {

// Counter-based PRNG block function (Philox4x32, 10 rounds). Every output is
// a pure function of (counter, key), so draws indexed by (seed, sequence,
// index) are reproducible regardless of evaluation order or thread count.
std::array<uint32_t, 4> Philox4x32(uint64_t counter_lo, uint64_t counter_hi,
                                   uint64_t key);

// One N(0, 1) draw for element `index` of draw `sequence` under `seed`.
// Box-Muller over two 53-bit uniforms taken from a single Philox block.
double StandardNormal(uint64_t seed, uint64_t sequence, uint64_t index);

// n independent standard normals for draw `sequence` under `seed`.
std::vector<double> StandardNormalVector(uint64_t seed, uint64_t sequence,
                                         size_t n);

// Uniform integer in [1, n]; `sequence` selects an independent stream.
int UniformStep(uint64_t seed, uint64_t sequence, int n);

}  // namespace specdiff

#endif  // SPECDIFF_RANDOM_HPP_
