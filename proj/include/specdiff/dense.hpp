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

#ifndef SPECDIFF_DENSE_HPP_
#define SPECDIFF_DENSE_HPP_

#include <Eigen/Dense>
#include <cstdint>

#include "specdiff/stft.hpp"

namespace specdiff {

// Explicit matrix forms of the framed transforms, used to cross-check the
// FFT path. Rows/columns are indexed (frame k, bin n) -> k*fft_size + n with
// the full two-sided bin range, so both operators are plain complex-linear
// maps and inverse*forward == identity holds exactly. Quadratic memory —
// meant for short signals.
struct DenseStftOperators {
  Eigen::MatrixXcd forward;  // (fft_size * frames) x num_samples
  Eigen::MatrixXcd inverse;  // num_samples x (fft_size * frames)
};

DenseStftOperators BuildDenseStft(const StftConfig& cfg, const WindowPair& pair,
                                  int64_t num_samples);

// Two-sided diagonal of a one-sided per-bin filter: bins above Nyquist are
// conjugate mirrors, DC/Nyquist are projected real.
Eigen::VectorXcd ExpandFilterDiagonal(const ComplexSpectrogram& filter,
                                      const StftConfig& cfg);

// L = inverse * diag(coefficients) * forward as a real matrix. Throws
// NumericalError if the product has a non-negligible imaginary residue
// (i.e. the diagonal was not conjugate-symmetric).
Eigen::MatrixXd DenseTimeVaryingFilter(const DenseStftOperators& ops,
                                       const Eigen::VectorXcd& diagonal);

}  // namespace specdiff

#endif  // SPECDIFF_DENSE_HPP_
