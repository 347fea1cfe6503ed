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

#ifndef SPECDIFF_PRIOR_HPP_
#define SPECDIFF_PRIOR_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "specdiff/envelope.hpp"
#include "specdiff/mel.hpp"
#include "specdiff/stft.hpp"

namespace specdiff {

// Floor applied to the interpolated per-sample variance of the diagonal
// prior, mirroring the stabilizer of the envelope filter.
inline constexpr double kDiagonalVarianceFloor = 0.01;

// Diffusion-noise prior in one of three shapes: white (identity covariance),
// per-sample diagonal scaling, or spectral-envelope shaping through the
// time-varying T-F filter. Immutable after construction; sampling takes an
// explicit (seed, sequence) pair, so all draws are reproducible.
class NoisePrior {
 public:
  enum class Kind { kStandard, kDiagonal, kEnvelope };

  static NoisePrior Standard(int64_t num_samples);
  static NoisePrior Diagonal(std::vector<double> sigma);
  static NoisePrior Envelope(FilterSpec filter, StftConfig stft,
                             WindowPair pair);

  Kind kind() const { return kind_; }
  int64_t num_samples() const { return num_samples_; }
  const std::vector<double>& sigma() const;
  const FilterSpec& filter() const;

  // One draw of the prior. Identity filters and unit sigmas pass the
  // underlying white noise through untouched, so degenerate configurations
  // of all three kinds produce identical output for identical seeds.
  Waveform SampleNoise(uint64_t seed, uint64_t sequence = 0) const;

  // Approximate inverse of the covariance square root: identity for the
  // standard prior, per-sample division for the diagonal one, and the
  // reciprocal T-F filter for the envelope prior.
  Waveform Whiten(const Waveform& v) const;

 private:
  NoisePrior() = default;

  Kind kind_ = Kind::kStandard;
  int64_t num_samples_ = 0;
  std::vector<double> sigma_;        // diagonal only
  FilterSpec filter_;                // envelope only
  FilterSpec inverse_filter_;        // envelope only
  StftConfig stft_;                  // envelope only
  WindowPair pair_;                  // envelope only
  bool identity_filter_ = false;
};

// sigma_d from the conditioning mel: frame energies sum_f exp(c_kf),
// max-normalized, linearly interpolated between frame centers (constant
// beyond the first/last center), floored at kDiagonalVarianceFloor in the
// variance domain, then square-rooted. Length num_frames * hop.
std::vector<double> DiagonalSigmaFromMel(const LogMelSpectrogram& c, int hop);

// sum_d |a_d - b_d| (the plain waveform-domain training loss).
double L1Loss(const Waveform& a, const Waveform& b);

// ||whiten(noise - predicted)||_2^2 — the whitened squared-error training
// loss; reduces to the plain squared error under the standard prior.
double WhitenedL2Loss(const NoisePrior& prior, const Waveform& noise,
                      const Waveform& predicted);

// Spec sampling helper with an explicit length check against the prior.
Waveform SampleNoise(const NoisePrior& prior, int64_t num_samples,
                     uint64_t seed, uint64_t sequence = 0);

}  // namespace specdiff

#endif  // SPECDIFF_PRIOR_HPP_
