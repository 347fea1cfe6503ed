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

#include "testing_util.hpp"

#include <complex>

#include "fft.hpp"

namespace testutil {

specdiff::Waveform FilterWithEnvelope(const specdiff::Waveform& excitation,
                                      const KnownEnvelope& envelope) {
  const size_t n = excitation.size();
  specdiff::internal::RealFft fft(static_cast<int>(n));
  std::vector<std::complex<double>> spectrum(fft.num_bins());
  fft.Forward(excitation, spectrum.data());
  for (int b = 0; b < fft.num_bins(); ++b) {
    const double nu = static_cast<double>(b) / static_cast<double>(n);
    spectrum[b] *= std::exp(envelope.LogAmplitudeAt(nu));
  }
  specdiff::Waveform out(n);
  fft.Inverse(spectrum, out.data());
  return out;
}

specdiff::Waveform NoiseExcitedSignal(size_t n, const KnownEnvelope& envelope,
                                      uint64_t seed) {
  return FilterWithEnvelope(specdiff::StandardNormalVector(seed, 5, n),
                            envelope);
}

specdiff::Waveform VoicedSignal(size_t n, const KnownEnvelope& envelope,
                                int period, uint64_t seed) {
  specdiff::Waveform excitation =
      specdiff::StandardNormalVector(seed, 6, n);
  for (double& v : excitation) v *= 0.05;
  for (size_t i = 0; i < n; i += static_cast<size_t>(period)) {
    excitation[i] += 1.0;
  }
  return FilterWithEnvelope(excitation, envelope);
}

}  // namespace testutil
