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

#include "specdiff/mel.hpp"

#include <cmath>
#include <string>

#include "specdiff/error.hpp"

namespace specdiff {

void MelConfig::Validate() const {
  stft.Validate();
  if (num_mels < 2) {
    throw InvalidArgumentError("MelConfig: num_mels must be >= 2");
  }
  if (!(f_min >= 0.0) || !(f_min < f_max)) {
    throw InvalidArgumentError("MelConfig: need 0 <= f_min < f_max");
  }
  if (f_max > 0.5 * stft.sample_rate) {
    throw InvalidArgumentError("MelConfig: f_max exceeds the Nyquist frequency");
  }
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

std::vector<double> MelCenterFrequencies(const MelConfig& cfg) {
  cfg.Validate();
  const double mel_lo = HzToMel(cfg.f_min);
  const double mel_hi = HzToMel(cfg.f_max);
  std::vector<double> centers(static_cast<size_t>(cfg.num_mels));
  for (int i = 0; i < cfg.num_mels; ++i) {
    const double mel =
        mel_lo + (mel_hi - mel_lo) * (i + 1) / (cfg.num_mels + 1);
    centers[i] = MelToHz(mel);
  }
  return centers;
}

Eigen::MatrixXd MelFilterbank(const MelConfig& cfg) {
  cfg.Validate();
  const int bins = cfg.stft.num_bins();
  const double mel_lo = HzToMel(cfg.f_min);
  const double mel_hi = HzToMel(cfg.f_max);

  // num_mels + 2 corner frequencies; triangle i spans [edge(i-1), edge(i+1)].
  std::vector<double> edges(static_cast<size_t>(cfg.num_mels) + 2);
  for (size_t i = 0; i < edges.size(); ++i) {
    edges[i] = MelToHz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) /
                                    (cfg.num_mels + 1));
  }

  Eigen::MatrixXd fb = Eigen::MatrixXd::Zero(cfg.num_mels, bins);
  const double bin_hz =
      static_cast<double>(cfg.stft.sample_rate) / cfg.stft.fft_size;
  for (int i = 0; i < cfg.num_mels; ++i) {
    const double lower = edges[i];
    const double center = edges[i + 1];
    const double upper = edges[i + 2];
    for (int b = 0; b < bins; ++b) {
      const double f = b * bin_hz;
      double w = 0.0;
      if (f > lower && f < upper) {
        w = (f <= center) ? (f - lower) / (center - lower)
                          : (upper - f) / (upper - center);
      }
      fb(i, b) = w;
    }
    const double peak = fb.row(i).maxCoeff();
    if (!(peak > 0.0)) {
      throw NumericalError("MelFilterbank: filter " + std::to_string(i) +
                           " has no support on the FFT grid");
    }
    fb.row(i) /= peak;
  }
  return fb;
}

Eigen::MatrixXd PinvMel(const Eigen::MatrixXd& filterbank) {
  if (filterbank.rows() < 1 || filterbank.cols() <= filterbank.rows()) {
    throw InvalidArgumentError("PinvMel: expected a wide filterbank matrix");
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(
      filterbank, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double tol = 1e-12 * sv(0) * static_cast<double>(filterbank.cols());
  if (!(sv(sv.size() - 1) > tol)) {
    throw NumericalError("PinvMel: filterbank is numerically rank deficient");
  }
  return svd.matrixV() * sv.cwiseInverse().asDiagonal() *
         svd.matrixU().transpose();
}

LogMelSpectrogram LogMel(const Waveform& x, const MelConfig& cfg,
                         const WindowPair& pair,
                         const Eigen::MatrixXd& filterbank) {
  cfg.Validate();
  if (filterbank.rows() != cfg.num_mels ||
      filterbank.cols() != cfg.stft.num_bins()) {
    throw InvalidArgumentError("LogMel: filterbank shape does not match config");
  }
  const ComplexSpectrogram s = Stft(x, cfg.stft, pair);

  LogMelSpectrogram c;
  c.num_frames = s.num_frames;
  c.num_mels = cfg.num_mels;
  c.coefficients.resize(s.num_frames, cfg.num_mels);
  Eigen::VectorXd power(s.num_bins);
  for (int64_t k = 0; k < s.num_frames; ++k) {
    for (int b = 0; b < s.num_bins; ++b) {
      power(b) = std::norm(s.at(k, b));
    }
    const Eigen::VectorXd mel = filterbank * power;
    for (int f = 0; f < cfg.num_mels; ++f) {
      c.coefficients(k, f) = std::log(std::max(mel(f), kPowerFloor));
    }
  }
  return c;
}

Eigen::MatrixXd MelToPower(const LogMelSpectrogram& c,
                           const Eigen::MatrixXd& pinv) {
  if (c.num_mels != pinv.cols() || c.num_frames < 1) {
    throw InvalidArgumentError("MelToPower: shape mismatch");
  }
  // Frame-by-frame products keep identical frames bit-identical; the blocked
  // matrix-matrix kernels round differently per row.
  Eigen::MatrixXd power(c.num_frames, pinv.rows());
  for (int64_t k = 0; k < c.num_frames; ++k) {
    const Eigen::VectorXd energy = c.coefficients.row(k).array().exp();
    power.row(k) = (pinv * energy).cwiseMax(kPowerFloor);
  }
  return power;
}

MelAnalyzer::MelAnalyzer(const MelConfig& cfg)
    : cfg_(cfg),
      pair_(MakeWindowPair(cfg.stft)),
      filterbank_(MelFilterbank(cfg)),
      pinv_(PinvMel(filterbank_)) {}

LogMelSpectrogram MelAnalyzer::Analyze(const Waveform& x) const {
  return LogMel(x, cfg_, pair_, filterbank_);
}

Eigen::MatrixXd MelAnalyzer::ToPower(const LogMelSpectrogram& c) const {
  return MelToPower(c, pinv_);
}

}  // namespace specdiff
