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

#include "specdiff/dense.hpp"

#include <cmath>
#include <complex>

#include "specdiff/error.hpp"

namespace specdiff {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// exp(-2*pi*i * (n*j mod N) / N); reduced argument keeps the phase accurate.
std::complex<double> Twiddle(int64_t n, int64_t j, int64_t fft_size) {
  const int64_t m = (n * j) % fft_size;
  const double angle = -kTwoPi * static_cast<double>(m) / static_cast<double>(fft_size);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

DenseStftOperators BuildDenseStft(const StftConfig& cfg, const WindowPair& pair,
                                  int64_t num_samples) {
  cfg.Validate();
  if (num_samples <= 0 || num_samples % cfg.hop != 0) {
    throw InvalidArgumentError(
        "BuildDenseStft: num_samples must be a positive multiple of hop");
  }
  const int64_t frames = num_samples / cfg.hop;
  const int64_t n_fft = cfg.fft_size;
  const int half = cfg.window_length / 2;
  const std::vector<double> overlap =
      RealizedWindowOverlap(cfg, pair, num_samples);

  DenseStftOperators ops;
  ops.forward = Eigen::MatrixXcd::Zero(frames * n_fft, num_samples);
  ops.inverse = Eigen::MatrixXcd::Zero(num_samples, frames * n_fft);
  for (int64_t k = 0; k < frames; ++k) {
    const int64_t start = k * cfg.hop - half;
    for (int j = 0; j < cfg.window_length; ++j) {
      const int64_t g = start + j;
      if (g < 0 || g >= num_samples) continue;
      for (int64_t n = 0; n < n_fft; ++n) {
        const std::complex<double> w = Twiddle(n, j, n_fft);
        ops.forward(k * n_fft + n, g) += pair.analysis[j] * w;
        ops.inverse(g, k * n_fft + n) +=
            pair.dual[j] * std::conj(w) /
            (static_cast<double>(n_fft) * overlap[g]);
      }
    }
  }
  return ops;
}

Eigen::VectorXcd ExpandFilterDiagonal(const ComplexSpectrogram& filter,
                                      const StftConfig& cfg) {
  if (filter.num_bins != cfg.num_bins()) {
    throw InvalidArgumentError(
        "ExpandFilterDiagonal: filter bins do not match config");
  }
  const int64_t n_fft = cfg.fft_size;
  const int nyquist = cfg.num_bins() - 1;
  Eigen::VectorXcd diag(filter.num_frames * n_fft);
  for (int64_t k = 0; k < filter.num_frames; ++k) {
    for (int64_t n = 0; n < n_fft; ++n) {
      if (n == 0 || n == nyquist) {
        diag(k * n_fft + n) = filter.at(k, static_cast<int>(n)).real();
      } else if (n < nyquist) {
        diag(k * n_fft + n) = filter.at(k, static_cast<int>(n));
      } else {
        diag(k * n_fft + n) =
            std::conj(filter.at(k, static_cast<int>(n_fft - n)));
      }
    }
  }
  return diag;
}

Eigen::MatrixXd DenseTimeVaryingFilter(const DenseStftOperators& ops,
                                       const Eigen::VectorXcd& diagonal) {
  if (diagonal.size() != ops.forward.rows()) {
    throw InvalidArgumentError(
        "DenseTimeVaryingFilter: diagonal size does not match operators");
  }
  const Eigen::MatrixXcd product =
      ops.inverse * diagonal.asDiagonal() * ops.forward;
  const double imag_residue = product.imag().cwiseAbs().maxCoeff();
  const double real_scale = product.real().cwiseAbs().maxCoeff();
  if (imag_residue > 1e-9 * (1.0 + real_scale)) {
    throw NumericalError(
        "DenseTimeVaryingFilter: diagonal breaks conjugate symmetry");
  }
  return product.real();
}

}  // namespace specdiff
