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

#ifndef SPECDIFF_ENVELOPE_HPP_
#define SPECDIFF_ENVELOPE_HPP_

#include <complex>
#include <span>
#include <vector>

#include "specdiff/mel.hpp"
#include "specdiff/stft.hpp"

namespace specdiff {

struct EnvelopeConfig {
  int lifter_order = 24;
  double stabilizer = 0.01;  // amplitude offset added to the envelope

  // fft_size is the transform the envelope lives on: 1 <= order < fft_size/2.
  void Validate(int fft_size) const;
};

// Per-frame complex frequency responses of the time-varying shaping filter,
// one-sided. Specs produced by BuildFilterSpec have DC/Nyquist entries real,
// every magnitude bounded away from zero, and unit mean squared magnitude.
struct FilterSpec {
  ComplexSpectrogram responses;
  double normalization_gain = 1.0;

  // True when every coefficient is exactly 1 + 0i; such a spec is a no-op
  // and callers may skip the transform round trip entirely.
  bool IsIdentity() const;
};

// Cepstral-lifter amplitude envelope of one strictly positive power frame
// (length fft_size/2 + 1). The real cepstrum of the half log power is
// truncated to quefrencies |q| <= lifter_order and transformed back.
std::vector<double> SpectralEnvelope(std::span<const double> power_frame,
                                     int lifter_order);

// Minimum-phase frequency response with the given strictly positive
// amplitude: fold the real cepstrum of ln(envelope) onto the causal side and
// exponentiate its spectrum. |response| equals the envelope; DC and Nyquist
// come out real and positive.
std::vector<std::complex<double>> MinimumPhaseResponse(
    std::span<const double> envelope);

// Full shaping-filter assembly: per frame, pseudoinverted mel power ->
// liftered envelope -> + stabilizer -> minimum-phase response; then one
// global gain so the mean squared magnitude over all T-F bins is 1.
FilterSpec BuildFilterSpec(const LogMelSpectrogram& c, const MelAnalyzer& mel,
                           const EnvelopeConfig& env_cfg);

// Entry-wise reciprocal; an involution. Throws on zero entries.
FilterSpec InverseFilterSpec(const FilterSpec& spec);

}  // namespace specdiff

#endif  // SPECDIFF_ENVELOPE_HPP_
