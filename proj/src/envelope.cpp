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

#include "specdiff/envelope.hpp"

#include <cmath>
#include <cstddef>

#include "fft.hpp"
#include "specdiff/error.hpp"

namespace specdiff {

namespace {

// fft size implied by a one-sided vector of B bins.
int FullSizeFromBins(size_t bins) {
  if (bins < 3) {
    throw InvalidArgumentError("one-sided spectrum needs at least 3 bins");
  }
  return 2 * (static_cast<int>(bins) - 1);
}

}  // namespace

void EnvelopeConfig::Validate(int fft_size) const {
  if (lifter_order < 1 || lifter_order >= fft_size / 2) {
    throw InvalidArgumentError(
        "EnvelopeConfig: lifter_order must lie in [1, fft_size/2)");
  }
  if (!(stabilizer > 0.0)) {
    throw InvalidArgumentError("EnvelopeConfig: stabilizer must be positive");
  }
}

bool FilterSpec::IsIdentity() const {
  for (const std::complex<double>& m : responses.data) {
    if (m.real() != 1.0 || m.imag() != 0.0) return false;
  }
  return !responses.data.empty();
}

std::vector<double> SpectralEnvelope(std::span<const double> power_frame,
                                     int lifter_order) {
  const int n_fft = FullSizeFromBins(power_frame.size());
  const int bins = static_cast<int>(power_frame.size());
  if (lifter_order < 1 || lifter_order >= n_fft / 2) {
    throw InvalidArgumentError(
        "SpectralEnvelope: lifter_order must lie in [1, fft_size/2)");
  }

  std::vector<std::complex<double>> half_log(power_frame.size());
  for (int b = 0; b < bins; ++b) {
    if (!(power_frame[b] > 0.0)) {
      throw InvalidArgumentError("SpectralEnvelope: power must be positive");
    }
    half_log[b] = 0.5 * std::log(power_frame[b]);  // log amplitude
  }

  internal::RealFft fft(n_fft);
  std::vector<double> cepstrum(static_cast<size_t>(n_fft));
  fft.Inverse(half_log, cepstrum.data());

  // Rectangular lifter: keep quefrencies |q| <= lifter_order.
  for (int q = lifter_order + 1; q < n_fft - lifter_order; ++q) {
    cepstrum[q] = 0.0;
  }

  std::vector<std::complex<double>> smooth(static_cast<size_t>(bins));
  fft.Forward(cepstrum, smooth.data());
  std::vector<double> envelope(static_cast<size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    envelope[b] = std::exp(smooth[b].real());
  }
  return envelope;
}

std::vector<std::complex<double>> MinimumPhaseResponse(
    std::span<const double> envelope) {
  const int n_fft = FullSizeFromBins(envelope.size());
  const int bins = static_cast<int>(envelope.size());

  std::vector<std::complex<double>> log_env(envelope.size());
  for (int b = 0; b < bins; ++b) {
    if (!(envelope[b] > 0.0)) {
      throw InvalidArgumentError(
          "MinimumPhaseResponse: envelope must be positive");
    }
    log_env[b] = std::log(envelope[b]);
  }

  internal::RealFft fft(n_fft);
  std::vector<double> cepstrum(static_cast<size_t>(n_fft));
  fft.Inverse(log_env, cepstrum.data());

  // Fold the even cepstrum onto the causal side; quefrencies 0 and N/2 stay.
  std::vector<double> folded(static_cast<size_t>(n_fft), 0.0);
  folded[0] = cepstrum[0];
  for (int q = 1; q < n_fft / 2; ++q) {
    folded[q] = 2.0 * cepstrum[q];
  }
  folded[n_fft / 2] = cepstrum[n_fft / 2];

  std::vector<std::complex<double>> log_response(static_cast<size_t>(bins));
  fft.Forward(folded, log_response.data());
  std::vector<std::complex<double>> response(static_cast<size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    response[b] = std::exp(log_response[b]);
  }
  // The causal fold leaves DC and Nyquist with zero phase; pin them exactly.
  response[0] = std::exp(log_response[0].real());
  response[bins - 1] = std::exp(log_response[bins - 1].real());
  return response;
}

FilterSpec BuildFilterSpec(const LogMelSpectrogram& c, const MelAnalyzer& mel,
                           const EnvelopeConfig& env_cfg) {
  const StftConfig& stft_cfg = mel.config().stft;
  env_cfg.Validate(stft_cfg.fft_size);
  if (c.num_frames < 1 || c.num_mels != mel.config().num_mels) {
    throw InvalidArgumentError("BuildFilterSpec: mel shape mismatch");
  }
  const Eigen::MatrixXd power = mel.ToPower(c);
  const int bins = stft_cfg.num_bins();

  FilterSpec spec;
  spec.responses = ComplexSpectrogram(c.num_frames, bins);
  std::vector<double> frame(static_cast<size_t>(bins));
  double power_sum = 0.0;
  for (int64_t k = 0; k < c.num_frames; ++k) {
    for (int b = 0; b < bins; ++b) {
      frame[b] = power(k, b);
    }
    std::vector<double> envelope =
        SpectralEnvelope(frame, env_cfg.lifter_order);
    for (double& e : envelope) {
      e += env_cfg.stabilizer;
    }
    const std::vector<std::complex<double>> response =
        MinimumPhaseResponse(envelope);
    for (int b = 0; b < bins; ++b) {
      spec.responses.at(k, b) = response[b];
      power_sum += std::norm(response[b]);
    }
  }

  const double mean_power =
      power_sum / static_cast<double>(spec.responses.data.size());
  const double gain = 1.0 / std::sqrt(mean_power);
  for (std::complex<double>& m : spec.responses.data) {
    m *= gain;
  }
  spec.normalization_gain = gain;
  return spec;
}

FilterSpec InverseFilterSpec(const FilterSpec& spec) {
  FilterSpec inverse;
  inverse.responses =
      ComplexSpectrogram(spec.responses.num_frames, spec.responses.num_bins);
  for (size_t i = 0; i < spec.responses.data.size(); ++i) {
    const std::complex<double>& m = spec.responses.data[i];
    if (m.real() == 0.0 && m.imag() == 0.0) {
      throw InvalidArgumentError("InverseFilterSpec: zero filter entry");
    }
    inverse.responses.data[i] = 1.0 / m;
  }
  inverse.normalization_gain = 1.0 / spec.normalization_gain;
  return inverse;
}

}  // namespace specdiff
