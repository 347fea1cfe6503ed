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

#include "specdiff/error.hpp"
#include "specdiff/mel.hpp"
#include "testing_util.hpp"

using namespace specdiff;

namespace {

const MelConfig& DefaultMel() {
  static const MelConfig cfg;
  return cfg;
}

const MelAnalyzer& DefaultAnalyzer() {
  static const MelAnalyzer analyzer(DefaultMel());
  return analyzer;
}

}  // namespace

TEST_CASE("filterbank rows are peak normalized with increasing centers") {
  const Eigen::MatrixXd fb = DefaultAnalyzer().filterbank();
  CHECK(fb.rows() == 128);
  CHECK(fb.cols() == 1025);
  for (int i = 0; i < fb.rows(); ++i) {
    CHECK(fb.row(i).maxCoeff() == 1.0);
    CHECK(fb.row(i).minCoeff() >= 0.0);
    CHECK(fb.row(i).sum() > 0.0);
  }
  const std::vector<double> centers = MelCenterFrequencies(DefaultMel());
  for (size_t i = 1; i < centers.size(); ++i) {
    CHECK(centers[i] > centers[i - 1]);
  }
  CHECK(centers.front() > DefaultMel().f_min);
  CHECK(centers.back() < DefaultMel().f_max);
}

TEST_CASE("filterbank has full row rank") {
  const Eigen::MatrixXd fb = DefaultAnalyzer().filterbank();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(fb);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double tol = 1e-12 * sv(0) * static_cast<double>(fb.cols());
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol) ++rank;
  }
  CHECK(rank == 128);
}

TEST_CASE("filterbank rejects f_max beyond Nyquist") {
  MelConfig cfg;
  cfg.f_max = 12001.0;
  CHECK_THROWS_AS(MelFilterbank(cfg), InvalidArgumentError);
}

TEST_CASE("log mel of silence is the log floor") {
  const LogMelSpectrogram c = DefaultAnalyzer().Analyze(Waveform(1200, 0.0));
  CHECK(c.num_frames == 4);
  CHECK(c.num_mels == 128);
  const double floor_value = std::log(1e-10);
  for (int64_t k = 0; k < c.num_frames; ++k) {
    for (int f = 0; f < c.num_mels; ++f) {
      CHECK(c.coefficients(k, f) == floor_value);
    }
  }
}

TEST_CASE("sinusoid at a filter center peaks in that filter") {
  const MelAnalyzer& analyzer = DefaultAnalyzer();
  const std::vector<double> centers = MelCenterFrequencies(DefaultMel());
  // Pick the filter whose center is nearest 1 kHz and synthesize exactly
  // its center frequency.
  int target = 0;
  for (size_t i = 0; i < centers.size(); ++i) {
    if (std::abs(centers[i] - 1000.0) < std::abs(centers[target] - 1000.0)) {
      target = static_cast<int>(i);
    }
  }
  const double freq = centers[target];
  Waveform x(24000);
  for (size_t n = 0; n < x.size(); ++n) {
    x[n] = std::sin(testutil::kTwoPi * freq * static_cast<double>(n) / 24000.0);
  }
  const LogMelSpectrogram c = analyzer.Analyze(x);
  for (int64_t k = 4; k + 4 < c.num_frames; ++k) {
    int argmax = 0;
    for (int f = 1; f < c.num_mels; ++f) {
      if (c.coefficients(k, f) > c.coefficients(k, argmax)) argmax = f;
    }
    CHECK(argmax == target);
  }
}

TEST_CASE("doubling the signal adds ln 4 to above-floor log mel") {
  const MelAnalyzer& analyzer = DefaultAnalyzer();
  Waveform x = testutil::GaussianWaveform(4800, 55);
  for (double& v : x) v *= 0.1;
  Waveform x2 = x;
  for (double& v : x2) v *= 2.0;
  const LogMelSpectrogram c1 = analyzer.Analyze(x);
  const LogMelSpectrogram c2 = analyzer.Analyze(x2);
  const double floor_value = std::log(1e-10);
  for (int64_t k = 0; k < c1.num_frames; ++k) {
    for (int f = 0; f < c1.num_mels; ++f) {
      if (c1.coefficients(k, f) > floor_value + 2.0) {
        CHECK(c2.coefficients(k, f) - c1.coefficients(k, f) ==
              doctest::Approx(std::log(4.0)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("pseudoinverse is a right inverse of the filterbank") {
  const Eigen::MatrixXd& fb = DefaultAnalyzer().filterbank();
  const Eigen::MatrixXd& pinv = DefaultAnalyzer().pseudoinverse();
  const Eigen::MatrixXd identity = fb * pinv;
  CHECK((identity - Eigen::MatrixXd::Identity(128, 128)).cwiseAbs().maxCoeff() <
        1e-6);
}

TEST_CASE("pseudoinverse projects row-space vectors onto themselves") {
  const Eigen::MatrixXd& fb = DefaultAnalyzer().filterbank();
  const Eigen::MatrixXd& pinv = DefaultAnalyzer().pseudoinverse();
  Eigen::VectorXd z(128);
  for (int i = 0; i < 128; ++i) {
    z(i) = StandardNormal(77, 0, static_cast<uint64_t>(i));
  }
  const Eigen::VectorXd v = fb.transpose() * z;  // in the row space
  const Eigen::VectorXd back = pinv * (fb * v);
  CHECK((back - v).cwiseAbs().maxCoeff() < 1e-8 * v.cwiseAbs().maxCoeff());
}

TEST_CASE("pseudoinverse of orthonormal rows is the transpose") {
  // Orthonormal rows via QR of a random wide matrix.
  Eigen::MatrixXd random(12, 5);
  for (int i = 0; i < random.rows(); ++i) {
    for (int j = 0; j < random.cols(); ++j) {
      random(i, j) =
          StandardNormal(78, 0, static_cast<uint64_t>(i * 5 + j));
    }
  }
  const Eigen::MatrixXd q =
      Eigen::HouseholderQR<Eigen::MatrixXd>(random).householderQ() *
      Eigen::MatrixXd::Identity(12, 5);
  const Eigen::MatrixXd rows = q.transpose();  // 5 x 12, orthonormal rows
  const Eigen::MatrixXd pinv = PinvMel(rows);
  CHECK((pinv - rows.transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("rank-deficient filterbank is rejected") {
  Eigen::MatrixXd fb = DefaultAnalyzer().filterbank();
  fb.row(5) = fb.row(6);
  CHECK_THROWS_AS(PinvMel(fb), NumericalError);
}

TEST_CASE("mel power roundtrip in the row space") {
  // An impulse train with period == window_length puts exactly one impulse
  // in every analysis window, so each frame spectrum is flat and the
  // pseudoinverse stays positive in band: the exp/ln roundtrip is then
  // limited only by SVD accuracy. A smooth envelope keeps it non-trivial.
  const MelAnalyzer& analyzer = DefaultAnalyzer();
  const testutil::KnownEnvelope env =
      testutil::RandomKnownEnvelope(31, 12, 1.0, -1.0);
  Waveform excitation(4800, 0.0);
  for (size_t n = 0; n < excitation.size(); n += 1200) excitation[n] = 0.5;
  const Waveform x = testutil::FilterWithEnvelope(excitation, env);

  const LogMelSpectrogram c = analyzer.Analyze(x);
  const Eigen::MatrixXd power = analyzer.ToPower(c);
  CHECK(power.minCoeff() >= 1e-10);

  // Mel energies of the reconstructed power match exp(c) above the floor.
  const Eigen::MatrixXd mel_again =
      power * analyzer.filterbank().transpose();
  const Eigen::MatrixXd expected = c.coefficients.array().exp().matrix();
  const double floor_log = std::log(1e-9);  // a decade above the clamp
  int checked = 0;
  for (int64_t k = 0; k < c.num_frames; ++k) {
    // Frames between clicks hold only the decaying filter tail; skip them.
    if (expected.row(k).maxCoeff() < 1e-6) continue;
    for (int f = 0; f < c.num_mels; ++f) {
      if (c.coefficients(k, f) > floor_log) {
        CHECK(std::abs(mel_again(k, f) - expected(k, f)) <
              1e-4 * expected(k, f));
        ++checked;
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("constant log mel yields identical frames") {
  LogMelSpectrogram c;
  c.num_frames = 3;
  c.num_mels = 128;
  c.coefficients = Eigen::MatrixXd::Zero(3, 128);  // ln 1
  const Eigen::MatrixXd power = MelToPower(c, DefaultAnalyzer().pseudoinverse());
  for (int64_t k = 1; k < 3; ++k) {
    CHECK((power.row(k) - power.row(0)).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK(power.minCoeff() >= 1e-10);
}

TEST_CASE("floor-valued log mel maps to clamped near-zero power") {
  LogMelSpectrogram c;
  c.num_frames = 2;
  c.num_mels = 128;
  c.coefficients = Eigen::MatrixXd::Constant(2, 128, std::log(1e-10));
  const Eigen::MatrixXd power = MelToPower(c, DefaultAnalyzer().pseudoinverse());
  CHECK(power.minCoeff() == 1e-10);
  CHECK(power.maxCoeff() < 1e-8);
}

TEST_CASE("mel analysis is deterministic") {
  const MelAnalyzer& analyzer = DefaultAnalyzer();
  const Waveform x = testutil::GaussianWaveform(2400, 57);
  const LogMelSpectrogram a = analyzer.Analyze(x);
  const LogMelSpectrogram b = analyzer.Analyze(x);
  CHECK(a.coefficients == b.coefficients);
}
