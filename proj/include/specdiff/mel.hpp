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

#ifndef SPECDIFF_MEL_HPP_
#define SPECDIFF_MEL_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "specdiff/stft.hpp"

namespace specdiff {

// Power floor applied before the log and after the pseudoinverse; keeps
// both directions of the mel <-> power mapping finite and positive.
inline constexpr double kPowerFloor = 1e-10;

struct MelConfig {
  int num_mels = 128;
  double f_min = 20.0;
  double f_max = 12000.0;
  StftConfig stft;

  void Validate() const;
};

// Natural-log mel power, frames x num_mels.
struct LogMelSpectrogram {
  int64_t num_frames = 0;
  int num_mels = 0;
  Eigen::MatrixXd coefficients;  // num_frames x num_mels
};

// HTK mel scale.
double HzToMel(double hz);
double MelToHz(double mel);

// Triangular filters on the HTK mel scale, peak-normalized so each row has
// maximum exactly 1. Shape num_mels x (fft_size/2 + 1).
Eigen::MatrixXd MelFilterbank(const MelConfig& cfg);

// Center frequency (Hz) of each triangle; strictly increasing.
std::vector<double> MelCenterFrequencies(const MelConfig& cfg);

// Moore-Penrose pseudoinverse via SVD; throws NumericalError if the
// filterbank is not full row rank. filterbank * PinvMel(filterbank) == I.
Eigen::MatrixXd PinvMel(const Eigen::MatrixXd& filterbank);

// c = ln(max(filterbank * |Stft(x)|^2, kPowerFloor)) per frame.
LogMelSpectrogram LogMel(const Waveform& x, const MelConfig& cfg,
                         const WindowPair& pair,
                         const Eigen::MatrixXd& filterbank);

// Per-frame linear power spectrum max(pinv * exp(c), kPowerFloor); strictly
// positive, frames x (fft_size/2 + 1).
Eigen::MatrixXd MelToPower(const LogMelSpectrogram& c,
                           const Eigen::MatrixXd& pinv);

// Bundles the filterbank, its pseudoinverse and the analysis windows for a
// fixed configuration. Immutable after construction; cheap to share.
class MelAnalyzer {
 public:
  explicit MelAnalyzer(const MelConfig& cfg);

  const MelConfig& config() const { return cfg_; }
  const WindowPair& window_pair() const { return pair_; }
  const Eigen::MatrixXd& filterbank() const { return filterbank_; }
  const Eigen::MatrixXd& pseudoinverse() const { return pinv_; }

  LogMelSpectrogram Analyze(const Waveform& x) const;
  Eigen::MatrixXd ToPower(const LogMelSpectrogram& c) const;

 private:
  MelConfig cfg_;
  WindowPair pair_;
  Eigen::MatrixXd filterbank_;
  Eigen::MatrixXd pinv_;
};

}  // namespace specdiff

#endif  // SPECDIFF_MEL_HPP_
