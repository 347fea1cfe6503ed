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

#include "fft.hpp"

#include <algorithm>
#include <cstring>
#include <mutex>

#include "specdiff/error.hpp"

namespace specdiff::internal {

namespace {

// FFTW planner functions are not thread-safe.
std::mutex& PlannerMutex() {
  static std::mutex m;
  return m;
}

}  // namespace

RealFft::RealFft(int size) : size_(size) {
  if (size < 2 || size % 2 != 0) {
    throw InvalidArgumentError("RealFft: size must be even and >= 2");
  }
  real_ = fftw_alloc_real(static_cast<size_t>(size_));
  complex_ = fftw_alloc_complex(static_cast<size_t>(num_bins()));
  std::lock_guard<std::mutex> lock(PlannerMutex());
  forward_ = fftw_plan_dft_r2c_1d(size_, real_, complex_, FFTW_ESTIMATE);
  inverse_ = fftw_plan_dft_c2r_1d(size_, complex_, real_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(inverse_);
  }
  fftw_free(real_);
  fftw_free(complex_);
}

void RealFft::Forward(std::span<const double> in, std::complex<double>* out) {
  if (in.size() > static_cast<size_t>(size_)) {
    throw InvalidArgumentError("RealFft::Forward: input longer than FFT size");
  }
  std::memset(real_, 0, sizeof(double) * static_cast<size_t>(size_));
  std::copy(in.begin(), in.end(), real_);
  fftw_execute(forward_);
  std::memcpy(out, complex_, sizeof(fftw_complex) * static_cast<size_t>(num_bins()));
}

void RealFft::Inverse(std::span<const std::complex<double>> in, double* out) {
  if (in.size() != static_cast<size_t>(num_bins())) {
    throw InvalidArgumentError("RealFft::Inverse: expected one-sided spectrum");
  }
  std::memcpy(complex_, in.data(), sizeof(fftw_complex) * static_cast<size_t>(num_bins()));
  fftw_execute(inverse_);
  const double scale = 1.0 / static_cast<double>(size_);
  for (int i = 0; i < size_; ++i) {
    out[i] = real_[i] * scale;
  }
}

}  // namespace specdiff::internal
