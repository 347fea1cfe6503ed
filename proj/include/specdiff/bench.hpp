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

#ifndef SPECDIFF_BENCH_HPP_
#define SPECDIFF_BENCH_HPP_

#include <vector>

namespace specdiff {

struct BenchPoint {
  int frames;
  double seconds;  // best of `repeat` runs
};

// Times the time-varying filter at `frames` and 2*frames with a random
// nonzero filter at the given FFT size. With per-frame FFTs the cost is
// O(frames * fft_size log fft_size), so the ratio of the two timings should
// stay near 2 when the frame count doubles.
std::vector<BenchPoint> BenchTfFilter(int frames, int fft_size, int repeat);

}  // namespace specdiff

#endif  // SPECDIFF_BENCH_HPP_
