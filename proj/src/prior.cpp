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

#include "specdiff/prior.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "specdiff/error.hpp"
#include "specdiff/random.hpp"

namespace specdiff {

NoisePrior NoisePrior::Standard(int64_t num_samples) {
  if (num_samples < 1) {
    throw InvalidArgumentError("NoisePrior::Standard: num_samples must be >= 1");
  }
  NoisePrior prior;
  prior.kind_ = Kind::kStandard;
  prior.num_samples_ = num_samples;
  return prior;
}

NoisePrior NoisePrior::Diagonal(std::vector<double> sigma) {
  if (sigma.empty()) {
    throw InvalidArgumentError("NoisePrior::Diagonal: empty sigma");
  }
  for (double s : sigma) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw InvalidArgumentError(
          "NoisePrior::Diagonal: sigma must be positive and finite");
    }
  }
  NoisePrior prior;
  prior.kind_ = Kind::kDiagonal;
  prior.num_samples_ = static_cast<int64_t>(sigma.size());
  prior.sigma_ = std::move(sigma);
  return prior;
}

NoisePrior NoisePrior::Envelope(FilterSpec filter, StftConfig stft,
                                WindowPair pair) {
  stft.Validate();
  if (filter.responses.num_frames < 1 ||
      filter.responses.num_bins != stft.num_bins()) {
    throw InvalidArgumentError(
        "NoisePrior::Envelope: filter shape does not match config");
  }
  NoisePrior prior;
  prior.kind_ = Kind::kEnvelope;
  prior.num_samples_ = filter.responses.num_frames * stft.hop;
  prior.identity_filter_ = filter.IsIdentity();
  prior.inverse_filter_ = InverseFilterSpec(filter);  // also rejects zeros
  prior.filter_ = std::move(filter);
  prior.stft_ = stft;
  prior.pair_ = std::move(pair);
  return prior;
}

const std::vector<double>& NoisePrior::sigma() const {
  if (kind_ != Kind::kDiagonal) {
    throw InvalidArgumentError("NoisePrior::sigma: not a diagonal prior");
  }
  return sigma_;
}

const FilterSpec& NoisePrior::filter() const {
  if (kind_ != Kind::kEnvelope) {
    throw InvalidArgumentError("NoisePrior::filter: not an envelope prior");
  }
  return filter_;
}

Waveform NoisePrior::SampleNoise(uint64_t seed, uint64_t sequence) const {
  Waveform noise = StandardNormalVector(seed, sequence,
                                        static_cast<size_t>(num_samples_));
  switch (kind_) {
    case Kind::kStandard:
      return noise;
    case Kind::kDiagonal:
      for (int64_t d = 0; d < num_samples_; ++d) {
        noise[d] *= sigma_[d];
      }
      return noise;
    case Kind::kEnvelope:
      if (identity_filter_) return noise;
      return ApplyTfFilter(noise, filter_.responses, stft_, pair_);
  }
  throw InvalidArgumentError("NoisePrior: unknown kind");
}

Waveform NoisePrior::Whiten(const Waveform& v) const {
  if (static_cast<int64_t>(v.size()) != num_samples_) {
    throw InvalidArgumentError(
        "NoisePrior::Whiten: length mismatch (got " + std::to_string(v.size()) +
        ", expected " + std::to_string(num_samples_) + ")");
  }
  switch (kind_) {
    case Kind::kStandard:
      return v;
    case Kind::kDiagonal: {
      Waveform out = v;
      for (int64_t d = 0; d < num_samples_; ++d) {
        out[d] /= sigma_[d];
      }
      return out;
    }
    case Kind::kEnvelope:
      if (identity_filter_) return v;
      return ApplyTfFilter(v, inverse_filter_.responses, stft_, pair_);
  }
  throw InvalidArgumentError("NoisePrior: unknown kind");
}

std::vector<double> DiagonalSigmaFromMel(const LogMelSpectrogram& c, int hop) {
  if (c.num_frames < 1 || c.num_mels < 1) {
    throw InvalidArgumentError("DiagonalSigmaFromMel: empty mel input");
  }
  if (hop < 1) {
    throw InvalidArgumentError("DiagonalSigmaFromMel: hop must be >= 1");
  }
  const int64_t frames = c.num_frames;
  Eigen::VectorXd energy = c.coefficients.array().exp().rowwise().sum();
  const double peak = energy.maxCoeff();
  energy /= peak;  // exp sums are strictly positive

  const int64_t num_samples = frames * hop;
  std::vector<double> sigma(static_cast<size_t>(num_samples));
  for (int64_t d = 0; d < num_samples; ++d) {
    // Frame k is centered at sample k*hop; constant beyond the end centers.
    const int64_t k = d / hop;
    double variance;
    if (k + 1 >= frames) {
      variance = energy(frames - 1);
    } else {
      const double frac =
          static_cast<double>(d - k * hop) / static_cast<double>(hop);
      variance = (1.0 - frac) * energy(k) + frac * energy(k + 1);
    }
    sigma[d] = std::sqrt(std::max(variance, kDiagonalVarianceFloor));
  }
  return sigma;
}

double L1Loss(const Waveform& a, const Waveform& b) {
  if (a.size() != b.size()) {
    throw InvalidArgumentError("L1Loss: length mismatch");
  }
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    sum += std::abs(a[i] - b[i]);
  }
  return sum;
}

double WhitenedL2Loss(const NoisePrior& prior, const Waveform& noise,
                      const Waveform& predicted) {
  if (noise.size() != predicted.size()) {
    throw InvalidArgumentError("WhitenedL2Loss: length mismatch");
  }
  Waveform residual(noise.size());
  for (size_t i = 0; i < noise.size(); ++i) {
    residual[i] = noise[i] - predicted[i];
  }
  const Waveform whitened = prior.Whiten(residual);
  double sum = 0.0;
  for (double w : whitened) {
    sum += w * w;
  }
  return sum;
}

Waveform SampleNoise(const NoisePrior& prior, int64_t num_samples,
                     uint64_t seed, uint64_t sequence) {
  if (num_samples != prior.num_samples()) {
    throw InvalidArgumentError(
        "SampleNoise: requested length does not match the prior");
  }
  return prior.SampleNoise(seed, sequence);
}

}  // namespace specdiff
