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

#ifndef SPECDIFF_STFT_HPP_
#define SPECDIFF_STFT_HPP_

#include <complex>
#include <cstdint>
#include <vector>

namespace specdiff {

// Mono waveform, unit-scale amplitude.
using Waveform = std::vector<double>;

// Analysis/synthesis framing. Frame k is centered at sample k*hop; samples
// outside the signal are treated as zero, so a signal of D samples (D a
// multiple of hop) yields exactly D/hop frames — the same count as the
// conditioning mel frames.
struct StftConfig {
  int window_length = 1200;  // 50 ms at 24 kHz
  int hop = 300;             // 12.5 ms
  int fft_size = 2048;
  int sample_rate = 24000;

  int num_bins() const { return fft_size / 2 + 1; }

  // Throws InvalidArgumentError unless 0 < hop <= window_length <= fft_size,
  // hop divides window_length, and fft_size is even.
  void Validate() const;
};

struct WindowPair {
  std::vector<double> analysis;
  std::vector<double> dual;
};

// One-sided complex spectrogram, frame-major storage.
struct ComplexSpectrogram {
  int64_t num_frames = 0;
  int num_bins = 0;
  std::vector<std::complex<double>> data;

  ComplexSpectrogram() = default;
  ComplexSpectrogram(int64_t frames, int bins)
      : num_frames(frames),
        num_bins(bins),
        data(static_cast<size_t>(frames) * static_cast<size_t>(bins)) {}

  std::complex<double>& at(int64_t frame, int bin) {
    return data[static_cast<size_t>(frame) * num_bins + bin];
  }
  const std::complex<double>& at(int64_t frame, int bin) const {
    return data[static_cast<size_t>(frame) * num_bins + bin];
  }
  std::complex<double>* frame(int64_t k) {
    return data.data() + static_cast<size_t>(k) * num_bins;
  }
  const std::complex<double>* frame(int64_t k) const {
    return data.data() + static_cast<size_t>(k) * num_bins;
  }
};

// Periodic Hann window: w[n] = 0.5*(1 - cos(2*pi*n/length)).
std::vector<double> MakeHannWindow(int length);

// Canonical dual window d[n] = w[n] / sum_k w[n - k*hop]^2. The pair then
// satisfies sum_k w[n - k*hop] * d[n - k*hop] = 1 for every n, which makes
// dual-window overlap-add the exact left inverse of the analysis transform.
// Throws NumericalError if the squared overlap sum vanishes anywhere.
std::vector<double> ComputeDualWindow(const std::vector<double>& window,
                                      int hop);

// Hann analysis window plus its canonical dual for the given config.
WindowPair MakeWindowPair(const StftConfig& cfg);

// Per-sample sum of analysis[j]*dual[j] over the frames that actually exist
// for a signal of num_samples. Equals 1 away from the signal edges; the
// synthesis side divides by it so reconstruction is exact at the edges too.
std::vector<double> RealizedWindowOverlap(const StftConfig& cfg,
                                          const WindowPair& pair,
                                          int64_t num_samples);

// Windowed forward transform. x.size() must be a positive multiple of hop.
ComplexSpectrogram Stft(const Waveform& x, const StftConfig& cfg,
                        const WindowPair& pair);

// Dual-window overlap-add inverse, normalized by the realized window
// overlap. out_length must equal num_frames * hop. Istft(Stft(x)) == x up
// to floating-point rounding.
Waveform Istft(const ComplexSpectrogram& spectrogram, const StftConfig& cfg,
               const WindowPair& pair, int64_t out_length);

// Time-varying filter in the T-F domain: inverse(filter .* forward(x)).
// `filter` holds one complex coefficient per T-F bin; its frame count must
// match the frame count of x and every entry must be nonzero. The DC and
// Nyquist coefficients are projected onto their real parts before use so
// the one-sided product still describes a conjugate-symmetric spectrum and
// the output stays real. Linear in x; costs O(K * N log N).
Waveform ApplyTfFilter(const Waveform& x, const ComplexSpectrogram& filter,
                       const StftConfig& cfg, const WindowPair& pair);

}  // namespace specdiff

#endif  // SPECDIFF_STFT_HPP_
