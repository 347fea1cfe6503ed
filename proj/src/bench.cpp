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

#include "specdiff/bench.hpp"

#include <chrono>
#include <cmath>

#include "specdiff/error.hpp"
#include "specdiff/random.hpp"
#include "specdiff/stft.hpp"

namespace specdiff {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Random filter with magnitudes in [0.5, 2] and real DC/Nyquist entries.
ComplexSpectrogram RandomFilter(int64_t frames, int bins, uint64_t seed) {
  ComplexSpectrogram filter(frames, bins);
  uint64_t index = 0;
  for (int64_t k = 0; k < frames; ++k) {
    for (int b = 0; b < bins; ++b) {
      const auto r = Philox4x32(index++, 0, seed);
      const double mag = 0.5 + 1.5 * (r[0] * 0x1.0p-32);
      const double phase =
          (b == 0 || b == bins - 1) ? 0.0 : kTwoPi * (r[1] * 0x1.0p-32);
      filter.at(k, b) = {mag * std::cos(phase), mag * std::sin(phase)};
    }
  }
  return filter;
}

double TimeOnce(const Waveform& x, const ComplexSpectrogram& filter,
                const StftConfig& cfg, const WindowPair& pair) {
  const auto start = std::chrono::steady_clock::now();
  const Waveform y = ApplyTfFilter(x, filter, cfg, pair);
  const auto stop = std::chrono::steady_clock::now();
  // Fold the output back in so the filter call cannot be optimized away.
  volatile double sink = y[0];
  (void)sink;
  return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

std::vector<BenchPoint> BenchTfFilter(int frames, int fft_size, int repeat) {
  if (frames < 1 || repeat < 1) {
    throw InvalidArgumentError("BenchTfFilter: frames and repeat must be >= 1");
  }
  StftConfig cfg;
  cfg.fft_size = fft_size;
  cfg.window_length = fft_size / 2;
  cfg.hop = fft_size / 8;
  cfg.Validate();
  const WindowPair pair = MakeWindowPair(cfg);

  std::vector<BenchPoint> points;
  for (const int k : {frames, 2 * frames}) {
    const int64_t num_samples = static_cast<int64_t>(k) * cfg.hop;
    const Waveform x =
        StandardNormalVector(0x5eedULL, 7, static_cast<size_t>(num_samples));
    const ComplexSpectrogram filter = RandomFilter(k, cfg.num_bins(), 11);
    TimeOnce(x, filter, cfg, pair);  // warmup
    double best = TimeOnce(x, filter, cfg, pair);
    for (int r = 1; r < repeat; ++r) {
      best = std::min(best, TimeOnce(x, filter, cfg, pair));
    }
    points.push_back({k, best});
  }
  return points;
}

}  // namespace specdiff
