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

#include "specdiff/stft.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "fft.hpp"
#include "specdiff/error.hpp"

namespace specdiff {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kOverlapFloor = 1e-12;

int64_t FrameCount(const Waveform& x, const StftConfig& cfg) {
  const int64_t n = static_cast<int64_t>(x.size());
  if (n <= 0 || n % cfg.hop != 0) {
    throw InvalidArgumentError(
        "signal length must be a positive multiple of the hop (got " +
        std::to_string(n) + ", hop " + std::to_string(cfg.hop) + ")");
  }
  return n / cfg.hop;
}

void ValidateWindows(const StftConfig& cfg, const WindowPair& pair) {
  if (static_cast<int>(pair.analysis.size()) != cfg.window_length ||
      static_cast<int>(pair.dual.size()) != cfg.window_length) {
    throw InvalidArgumentError("window pair does not match config length");
  }
}

}  // namespace

void StftConfig::Validate() const {
  if (window_length <= 0 || hop <= 0 || fft_size <= 0 || sample_rate <= 0) {
    throw InvalidArgumentError("StftConfig: all fields must be positive");
  }
  if (hop > window_length) {
    throw InvalidArgumentError("StftConfig: hop must not exceed window_length");
  }
  if (window_length > fft_size) {
    throw InvalidArgumentError(
        "StftConfig: window_length must not exceed fft_size");
  }
  if (window_length % hop != 0) {
    throw InvalidArgumentError("StftConfig: hop must divide window_length");
  }
  if (fft_size % 2 != 0) {
    throw InvalidArgumentError("StftConfig: fft_size must be even");
  }
}

std::vector<double> MakeHannWindow(int length) {
  if (length < 2) {
    throw InvalidArgumentError("MakeHannWindow: length must be >= 2");
  }
  std::vector<double> w(static_cast<size_t>(length));
  for (int n = 0; n < length; ++n) {
    w[n] = 0.5 * (1.0 - std::cos(kTwoPi * n / length));
  }
  return w;
}

std::vector<double> ComputeDualWindow(const std::vector<double>& window,
                                      int hop) {
  if (hop <= 0) {
    throw InvalidArgumentError("ComputeDualWindow: hop must be positive");
  }
  if (window.empty()) {
    throw InvalidArgumentError("ComputeDualWindow: empty window");
  }
  // The squared overlap sum is hop-periodic in the sample index.
  std::vector<double> overlap(static_cast<size_t>(hop), 0.0);
  for (size_t n = 0; n < window.size(); ++n) {
    overlap[n % static_cast<size_t>(hop)] += window[n] * window[n];
  }
  for (int j = 0; j < hop; ++j) {
    if (!(overlap[j] > kOverlapFloor)) {
      throw NumericalError(
          "degenerate window: squared overlap sum vanishes at offset " +
          std::to_string(j));
    }
  }
  std::vector<double> dual(window.size());
  for (size_t n = 0; n < window.size(); ++n) {
    dual[n] = window[n] / overlap[n % static_cast<size_t>(hop)];
  }
  return dual;
}

WindowPair MakeWindowPair(const StftConfig& cfg) {
  cfg.Validate();
  WindowPair pair;
  pair.analysis = MakeHannWindow(cfg.window_length);
  pair.dual = ComputeDualWindow(pair.analysis, cfg.hop);
  return pair;
}

std::vector<double> RealizedWindowOverlap(const StftConfig& cfg,
                                          const WindowPair& pair,
                                          int64_t num_samples) {
  cfg.Validate();
  ValidateWindows(cfg, pair);
  if (num_samples <= 0 || num_samples % cfg.hop != 0) {
    throw InvalidArgumentError(
        "RealizedWindowOverlap: num_samples must be a positive multiple of hop");
  }
  const int64_t frames = num_samples / cfg.hop;
  const int half = cfg.window_length / 2;
  std::vector<double> overlap(static_cast<size_t>(num_samples), 0.0);
  for (int64_t k = 0; k < frames; ++k) {
    const int64_t start = k * cfg.hop - half;
    for (int j = 0; j < cfg.window_length; ++j) {
      const int64_t g = start + j;
      if (g >= 0 && g < num_samples) {
        overlap[g] += pair.analysis[j] * pair.dual[j];
      }
    }
  }
  return overlap;
}

ComplexSpectrogram Stft(const Waveform& x, const StftConfig& cfg,
                        const WindowPair& pair) {
  cfg.Validate();
  ValidateWindows(cfg, pair);
  const int64_t frames = FrameCount(x, cfg);
  const int64_t num_samples = static_cast<int64_t>(x.size());
  const int half = cfg.window_length / 2;

  ComplexSpectrogram out(frames, cfg.num_bins());
  internal::RealFft fft(cfg.fft_size);
  std::vector<double> buffer(static_cast<size_t>(cfg.window_length));
  for (int64_t k = 0; k < frames; ++k) {
    const int64_t start = k * cfg.hop - half;
    for (int j = 0; j < cfg.window_length; ++j) {
      const int64_t g = start + j;
      buffer[j] = (g >= 0 && g < num_samples) ? pair.analysis[j] * x[g] : 0.0;
    }
    fft.Forward(buffer, out.frame(k));
  }
  return out;
}

Waveform Istft(const ComplexSpectrogram& spectrogram, const StftConfig& cfg,
               const WindowPair& pair, int64_t out_length) {
  cfg.Validate();
  ValidateWindows(cfg, pair);
  if (spectrogram.num_frames <= 0 || spectrogram.num_bins != cfg.num_bins()) {
    throw InvalidArgumentError("Istft: spectrogram shape does not match config");
  }
  if (out_length != spectrogram.num_frames * cfg.hop) {
    throw InvalidArgumentError(
        "Istft: out_length must equal num_frames * hop");
  }
  const int half = cfg.window_length / 2;

  Waveform y(static_cast<size_t>(out_length), 0.0);
  internal::RealFft fft(cfg.fft_size);
  std::vector<double> buffer(static_cast<size_t>(cfg.fft_size));
  for (int64_t k = 0; k < spectrogram.num_frames; ++k) {
    fft.Inverse({spectrogram.frame(k), static_cast<size_t>(cfg.num_bins())},
                buffer.data());
    const int64_t start = k * cfg.hop - half;
    for (int j = 0; j < cfg.window_length; ++j) {
      const int64_t g = start + j;
      if (g >= 0 && g < out_length) {
        y[g] += pair.dual[j] * buffer[j];
      }
    }
  }

  const std::vector<double> overlap =
      RealizedWindowOverlap(cfg, pair, out_length);
  for (int64_t n = 0; n < out_length; ++n) {
    if (!(overlap[n] > kOverlapFloor)) {
      throw NumericalError(
          "degenerate window: realized overlap vanishes at sample " +
          std::to_string(n));
    }
    y[n] /= overlap[n];
  }
  return y;
}

Waveform ApplyTfFilter(const Waveform& x, const ComplexSpectrogram& filter,
                       const StftConfig& cfg, const WindowPair& pair) {
  cfg.Validate();
  const int64_t frames = FrameCount(x, cfg);
  if (filter.num_frames != frames || filter.num_bins != cfg.num_bins()) {
    throw InvalidArgumentError(
        "ApplyTfFilter: filter shape (" + std::to_string(filter.num_frames) +
        " x " + std::to_string(filter.num_bins) + ") does not match signal (" +
        std::to_string(frames) + " x " + std::to_string(cfg.num_bins()) + ")");
  }
  for (const std::complex<double>& m : filter.data) {
    if (m.real() == 0.0 && m.imag() == 0.0) {
      throw InvalidArgumentError("ApplyTfFilter: filter entry is zero");
    }
  }

  ComplexSpectrogram s = Stft(x, cfg, pair);
  const int nyquist = cfg.num_bins() - 1;
  for (int64_t k = 0; k < frames; ++k) {
    for (int b = 0; b <= nyquist; ++b) {
      const std::complex<double>& m = filter.at(k, b);
      if (b == 0 || b == nyquist) {
        s.at(k, b) *= m.real();
      } else {
        s.at(k, b) *= m;
      }
    }
  }
  return Istft(s, cfg, pair, static_cast<int64_t>(x.size()));
}

}  // namespace specdiff
