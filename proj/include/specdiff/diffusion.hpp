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

#ifndef SPECDIFF_DIFFUSION_HPP_
#define SPECDIFF_DIFFUSION_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specdiff/mel.hpp"
#include "specdiff/prior.hpp"
#include "specdiff/stft.hpp"

namespace specdiff {

// Forward-process schedule {beta_t} with the derived quantities
// alpha_t = 1 - beta_t, alpha_bar_t = prod_{s<=t} alpha_s and the posterior
// variance gamma_t = (1 - alpha_bar_{t-1}) / (1 - alpha_bar_t) * beta_t.
// Steps are 1-based; alpha_bar(0) == 1 and gamma(1) == 0.
class NoiseSchedule {
 public:
  explicit NoiseSchedule(std::vector<double> betas);

  // Evenly spaced betas, both endpoints included; T == 1 yields {start}.
  static NoiseSchedule Linspace(double start, double end, int num_steps);

  // One of WG-3, WG-6, PG-6, WG-50.
  static NoiseSchedule Named(const std::string& name);

  int num_steps() const { return static_cast<int>(betas_.size()); }
  double beta(int t) const { return betas_[CheckStep(t) - 1]; }
  double alpha(int t) const { return alphas_[CheckStep(t) - 1]; }
  double alpha_bar(int t) const;  // accepts t == 0
  double gamma(int t) const { return gammas_[CheckStep(t) - 1]; }
  const std::vector<double>& betas() const { return betas_; }

 private:
  int CheckStep(int t) const;

  std::vector<double> betas_;
  std::vector<double> alphas_;
  std::vector<double> alpha_bars_;
  std::vector<double> gammas_;
};

// Name and verbatim display string of each built-in inference schedule.
struct NamedScheduleInfo {
  const char* name;
  const char* display;
};
std::span<const NamedScheduleInfo> NamedSchedules();

// epsilon-predictor contract: maps (x_t, conditioning mel, beta_t) to a
// noise estimate of the same length. Implementations must be pure per call.
class EpsilonPredictor {
 public:
  virtual ~EpsilonPredictor() = default;
  virtual Waveform Predict(const Waveform& x_t, const LogMelSpectrogram& c,
                           double beta_t) const = 0;
};

// Always predicts zero noise.
class ZeroPredictor : public EpsilonPredictor {
 public:
  Waveform Predict(const Waveform& x_t, const LogMelSpectrogram& c,
                   double beta_t) const override;
};

// Test double that inverts the closed-form forward process around a known
// clean signal: given x_t it returns the exact noise consistent with it.
// The step is recovered from beta_t, so betas must be unique in the schedule.
class OraclePredictor : public EpsilonPredictor {
 public:
  OraclePredictor(Waveform clean, NoiseSchedule schedule);
  Waveform Predict(const Waveform& x_t, const LogMelSpectrogram& c,
                   double beta_t) const override;

 private:
  Waveform clean_;
  NoiseSchedule schedule_;
  std::map<double, int> step_by_beta_;
};

// x_t = sqrt(alpha_bar_t) x0 + sqrt(1 - alpha_bar_t) noise.
Waveform ForwardDiffuse(const Waveform& x0, int t, const Waveform& noise,
                        const NoiseSchedule& schedule);

// mu_t = (x_t - beta_t / sqrt(1 - alpha_bar_t) * predicted) / sqrt(alpha_t).
Waveform PosteriorMean(const Waveform& x_t, const Waveform& predicted_noise,
                       int t, const NoiseSchedule& schedule);

// Scale on the injected posterior noise. The posterior variance is gamma_t,
// so the standard deviation sqrt(gamma_t) is the default; kLiteralGamma
// multiplies by gamma_t itself instead.
enum class NoiseInjectionScale { kSqrtGamma, kLiteralGamma };

struct SampleOptions {
  bool inject_noise = true;
  NoiseInjectionScale scale = NoiseInjectionScale::kSqrtGamma;
};

// Ancestral sampler: start from one prior draw, then walk t = T..1 taking
// the posterior mean and, for t > 1, adding scaled prior noise. All noise
// comes from (seed, sequence) streams: sequence 0 for the start, sequence t
// for the injection at step t. Deterministic given the seed.
Waveform Sample(const LogMelSpectrogram& c, const NoisePrior& prior,
                const NoiseSchedule& schedule,
                const EpsilonPredictor& predictor, uint64_t seed,
                const SampleOptions& options = {});

// One training step's loss: draw noise from the prior (sequence 0), diffuse
// x0 to step t, run the predictor, return the whitened squared error. When
// t is not supplied it is drawn uniformly from {1..T} under the same seed.
double TrainingStepLoss(const Waveform& x0, const LogMelSpectrogram& c,
                        const NoisePrior& prior, const NoiseSchedule& schedule,
                        std::optional<int> t, const EpsilonPredictor& predictor,
                        uint64_t seed);

}  // namespace specdiff

#endif  // SPECDIFF_DIFFUSION_HPP_
