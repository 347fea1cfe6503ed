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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "fft.hpp"
#include "specdiff/envelope.hpp"
#include "specdiff/error.hpp"
#include "specdiff/mel.hpp"
#include "testing_util.hpp"

using namespace specdiff;

namespace {

// Brute-force lifter oracle: cepstral coefficients by direct DFT sums of the
// symmetric half-log power, envelope rebuilt from the 2r+1 retained ones.
std::vector<double> OracleEnvelope(const std::vector<double>& power, int r) {
  const int bins = static_cast<int>(power.size());
  const int n_fft = 2 * (bins - 1);
  std::vector<double> a_full(static_cast<size_t>(n_fft));
  for (int n = 0; n < n_fft; ++n) {
    const int folded = n <= n_fft / 2 ? n : n_fft - n;
    a_full[n] = 0.5 * std::log(power[folded]);
  }
  std::vector<double> q(static_cast<size_t>(r) + 1, 0.0);
  for (int i = 0; i <= r; ++i) {
    double sum = 0.0;
    for (int n = 0; n < n_fft; ++n) {
      sum += a_full[n] * std::cos(testutil::kTwoPi * i * n / n_fft);
    }
    q[i] = sum / n_fft;
  }
  std::vector<double> env(static_cast<size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    double log_e = q[0];
    for (int i = 1; i <= r; ++i) {
      log_e += 2.0 * q[i] * std::cos(testutil::kTwoPi * i * b / n_fft);
    }
    env[b] = std::exp(log_e);
  }
  return env;
}

// Fraction of complex-cepstrum energy on the anti-causal side, computed from
// the response itself via its log magnitude and principal phase.
double AntiCausalFraction(const std::vector<std::complex<double>>& response) {
  const int bins = static_cast<int>(response.size());
  const int n_fft = 2 * (bins - 1);
  std::vector<std::complex<double>> log_spec(response.size());
  for (int b = 0; b < bins; ++b) {
    log_spec[b] = {std::log(std::abs(response[b])), std::arg(response[b])};
  }
  internal::RealFft fft(n_fft);
  std::vector<double> cepstrum(static_cast<size_t>(n_fft));
  fft.Inverse(log_spec, cepstrum.data());
  double total = 0.0;
  double anti_causal = 0.0;
  for (int j = 0; j < n_fft; ++j) {
    const double e = cepstrum[j] * cepstrum[j];
    total += e;
    if (j > n_fft / 2) anti_causal += e;
  }
  return anti_causal / total;
}

}  // namespace

TEST_CASE("constant power has a constant amplitude envelope") {
  const std::vector<double> power(129, 6.25);  // c^2 with c = 2.5
  const std::vector<double> env = SpectralEnvelope(power, 8);
  for (double e : env) {
    CHECK(e == doctest::Approx(2.5).epsilon(1e-12));
  }
}

TEST_CASE("single-quefrency log spectrum passes through the lifter") {
  const int bins = 129;
  const int n_fft = 256;
  std::vector<double> power(static_cast<size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    power[b] = std::exp(2.0 * std::cos(testutil::kTwoPi * b / n_fft));
  }
  const std::vector<double> env = SpectralEnvelope(power, 1);
  for (int b = 0; b < bins; ++b) {
    CHECK(std::abs(env[b] - std::sqrt(power[b])) < 1e-6);
  }
}

TEST_CASE("lifter of order 24 matches the brute-force oracle") {
  const int bins = 129;
  std::vector<double> power(static_cast<size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    power[b] = std::exp(2.0 * testutil::UniformAt(12, 0, b) - 1.0);
  }
  const std::vector<double> fast = SpectralEnvelope(power, 24);
  const std::vector<double> oracle = OracleEnvelope(power, 24);
  for (int b = 0; b < bins; ++b) {
    CHECK(fast[b] == doctest::Approx(oracle[b]).epsilon(1e-10));
  }
}

TEST_CASE("envelope rejects non-positive power") {
  std::vector<double> power(129, 1.0);
  power[4] = 0.0;
  CHECK_THROWS_AS(SpectralEnvelope(power, 8), InvalidArgumentError);
  power[4] = -1.0;
  CHECK_THROWS_AS(SpectralEnvelope(power, 8), InvalidArgumentError);
  CHECK_THROWS_AS(SpectralEnvelope(std::vector<double>(129, 1.0), 0),
                  InvalidArgumentError);
  CHECK_THROWS_AS(SpectralEnvelope(std::vector<double>(129, 1.0), 128),
                  InvalidArgumentError);
}

TEST_CASE("minimum phase response of a constant envelope has zero phase") {
  const std::vector<double> env(1025, 3.25);
  const auto response = MinimumPhaseResponse(env);
  for (const auto& h : response) {
    CHECK(h.real() == doctest::Approx(3.25).epsilon(1e-12));
    CHECK(std::abs(h.imag()) < 1e-12);
  }
}

TEST_CASE("minimum phase response preserves the magnitude") {
  for (uint64_t seed = 0; seed < 8; ++seed) {
    const std::vector<double> env =
        testutil::SmoothEnvelope(1025, seed, 1.0, 12);
    const auto response = MinimumPhaseResponse(env);
    CHECK(response[0].imag() == 0.0);
    CHECK(response[1024].imag() == 0.0);
    for (size_t b = 0; b < env.size(); ++b) {
      CHECK(std::abs(std::abs(response[b]) - env[b]) < 1e-6 * env[b]);
    }
  }
}

TEST_CASE("minimum phase response is causal") {
  for (uint64_t seed = 20; seed < 28; ++seed) {
    const std::vector<double> env =
        testutil::SmoothEnvelope(1025, seed, 1.0, 12);
    const auto response = MinimumPhaseResponse(env);
    CHECK(AntiCausalFraction(response) < 1e-8);
  }
}

TEST_CASE("minimum phase rejects non-positive envelopes") {
  std::vector<double> env(129, 1.0);
  env[7] = 0.0;
  CHECK_THROWS_AS(MinimumPhaseResponse(env), InvalidArgumentError);
}

TEST_CASE("frame-constant mel input gives identical filter frames") {
  const MelAnalyzer analyzer{MelConfig{}};
  LogMelSpectrogram c;
  c.num_frames = 4;
  c.num_mels = 128;
  c.coefficients = Eigen::MatrixXd::Zero(4, 128);
  for (int f = 0; f < 128; ++f) {
    c.coefficients.col(f).setConstant(StandardNormal(1, 0, f) - 4.0);
  }
  const FilterSpec spec = BuildFilterSpec(c, analyzer, EnvelopeConfig{});
  for (int64_t k = 1; k < 4; ++k) {
    for (int b = 0; b < spec.responses.num_bins; ++b) {
      CHECK(spec.responses.at(k, b) == spec.responses.at(0, b));
    }
  }
}

TEST_CASE("silence yields a near-flat stabilizer-dominated filter") {
  const MelAnalyzer analyzer{MelConfig{}};
  LogMelSpectrogram c;
  c.num_frames = 3;
  c.num_mels = 128;
  c.coefficients = Eigen::MatrixXd::Constant(3, 128, std::log(1e-10));
  const FilterSpec spec = BuildFilterSpec(c, analyzer, EnvelopeConfig{});
  double lo = 1e300, hi = 0.0;
  for (const auto& m : spec.responses.data) {
    lo = std::min(lo, std::abs(m));
    hi = std::max(hi, std::abs(m));
  }
  CHECK(hi / lo < 1.05);
  CHECK(lo > 0.0);
}

TEST_CASE("built filters are unit mean power with positive magnitude floor") {
  const MelAnalyzer analyzer{MelConfig{}};
  const testutil::KnownEnvelope env =
      testutil::RandomKnownEnvelope(42, 24, 2.0, -2.0);
  const Waveform x = testutil::NoiseExcitedSignal(9600, env, 42);
  const LogMelSpectrogram c = analyzer.Analyze(x);
  const FilterSpec spec = BuildFilterSpec(c, analyzer, EnvelopeConfig{});

  double power_sum = 0.0;
  double min_mag = 1e300;
  for (const auto& m : spec.responses.data) {
    power_sum += std::norm(m);
    min_mag = std::min(min_mag, std::abs(m));
  }
  const double mean_power =
      power_sum / static_cast<double>(spec.responses.data.size());
  CHECK(std::abs(mean_power - 1.0) < 1e-6);
  // The stabilizer bounds every magnitude away from zero, scaled by the
  // normalization gain.
  CHECK(min_mag >= 0.01 * spec.normalization_gain);
  const int nyquist = spec.responses.num_bins - 1;
  for (int64_t k = 0; k < spec.responses.num_frames; ++k) {
    CHECK(spec.responses.at(k, 0).imag() == 0.0);
    CHECK(spec.responses.at(k, nyquist).imag() == 0.0);
  }
}

TEST_CASE("filter magnitudes track a known envelope on voiced input") {
  const MelAnalyzer analyzer{MelConfig{}};
  const testutil::KnownEnvelope env =
      testutil::RandomKnownEnvelope(8, 24, 3.0, 0.0);
  Waveform x = testutil::VoicedSignal(9600, env, 160, 8);
  // Quiet scale: keeps the pseudoinverse clamp at the 1e-10 power floor
  // shallow in the log domain, where the lifter would smear it broadband.
  for (double& v : x) v *= 3e-4;
  const LogMelSpectrogram c = analyzer.Analyze(x);
  const FilterSpec spec = BuildFilterSpec(c, analyzer, EnvelopeConfig{});

  const std::vector<double> true_log =
      env.LogAmplitudeGrid(spec.responses.num_bins);
  // Skip bins below f_min where the mel inverse carries no information.
  const int first_bin = 2;
  std::vector<double> truth(true_log.begin() + first_bin, true_log.end());
  for (int64_t k = 4; k < spec.responses.num_frames - 4; ++k) {
    std::vector<double> estimate;
    estimate.reserve(truth.size());
    for (int b = first_bin; b < spec.responses.num_bins; ++b) {
      estimate.push_back(std::log(std::abs(spec.responses.at(k, b))));
    }
    CHECK(testutil::PearsonCorrelation(estimate, truth) > 0.9);
  }
}

TEST_CASE("inverse filter spec is an involution with reciprocal magnitudes") {
  const StftConfig cfg = testutil::TinyConfig();
  FilterSpec spec;
  spec.responses = testutil::RandomFilter(8, cfg.num_bins(), 77);
  spec.normalization_gain = 1.7;

  const FilterSpec inverse = InverseFilterSpec(spec);
  CHECK(inverse.normalization_gain == doctest::Approx(1.0 / 1.7));
  for (size_t i = 0; i < spec.responses.data.size(); ++i) {
    const double product =
        std::abs(spec.responses.data[i]) * std::abs(inverse.responses.data[i]);
    CHECK(product == doctest::Approx(1.0).epsilon(1e-12));
  }

  const FilterSpec back = InverseFilterSpec(inverse);
  for (size_t i = 0; i < spec.responses.data.size(); ++i) {
    CHECK(std::abs(back.responses.data[i] - spec.responses.data[i]) < 1e-12);
  }
}

TEST_CASE("all-ones filter is the identity and inverts to itself") {
  FilterSpec ones;
  ones.responses = ComplexSpectrogram(4, 5);
  for (auto& v : ones.responses.data) v = 1.0;
  CHECK(ones.IsIdentity());
  const FilterSpec inverse = InverseFilterSpec(ones);
  CHECK(inverse.IsIdentity());

  FilterSpec zero = ones;
  zero.responses.at(1, 1) = 0.0;
  CHECK(!zero.IsIdentity());
  CHECK_THROWS_AS(InverseFilterSpec(zero), InvalidArgumentError);
}
