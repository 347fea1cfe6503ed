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

#ifndef SPECDIFF_SRC_FFT_HPP_
#define SPECDIFF_SRC_FFT_HPP_

#include <fftw3.h>

#include <complex>
#include <span>

namespace specdiff::internal {

// Real <-> one-sided complex FFT pair of a fixed even size. Owns FFTW plans
// plus aligned scratch buffers; inputs are copied so callers keep plain
// std containers. FFTW plan creation/destruction is serialized internally;
// transforms on distinct instances may run concurrently.
class RealFft {
 public:
  explicit RealFft(int size);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  int size() const { return size_; }
  int num_bins() const { return size_ / 2 + 1; }

  // DFT of `in`, zero-padded to size() when shorter. Writes num_bins() bins.
  void Forward(std::span<const double> in, std::complex<double>* out);

  // Normalized inverse DFT of a one-sided spectrum (Hermitian symmetry
  // implied). Writes size() real samples.
  void Inverse(std::span<const std::complex<double>> in, double* out);

 private:
  int size_;
  double* real_;
  fftw_complex* complex_;
  fftw_plan forward_;
  fftw_plan inverse_;
};

}  // namespace specdiff::internal

#endif  // SPECDIFF_SRC_FFT_HPP_
