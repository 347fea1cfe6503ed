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

#include "specdiff/diffusion.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "specdiff/error.hpp"
#include "specdiff/random.hpp"

namespace specdiff {

namespace {

// Stream index for the uniform step draw in TrainingStepLoss; keeps it
// disjoint from the noise-draw sequences (0 and 1..T).
constexpr uint64_t kStepDrawSequence = ~uint64_t{0};

const std::array<NamedScheduleInfo, 4> kNamedSchedules = {{
    {"WG-3", "WG-3 3e-4 6e-2 9e-1"},
    {"WG-6", "WG-6 7e-6 1.4e-4 2.1e-3 2.8e-2 3.5e-1 7e-1"},
    {"PG-6", "PG-6 1e-4 1e-3 1e-2 5e-2 2e-1 5e-1"},
    {"WG-50", "WG-50 linspace(1e-4, 0.05, 50)"},
}};

void CheckSameLength(const Waveform& a, const Waveform& b, const char* where) {
  if (a.size() != b.size()) {
    throw InvalidArgumentError(std::string(where) + ": length mismatch");
  }
}

}  // namespace

NoiseSchedule::NoiseSchedule(std::vector<double> betas)
    : betas_(std::move(betas)) {
  if (betas_.empty()) {
    throw InvalidArgumentError("NoiseSchedule: need at least one step");
  }
  alphas_.resize(betas_.size());
  alpha_bars_.resize(betas_.size());
  gammas_.resize(betas_.size());
  double running = 1.0;
  double previous_bar = 1.0;
  for (size_t i = 0; i < betas_.size(); ++i) {
    const double beta = betas_[i];
    if (!(beta > 0.0) || !(beta < 1.0)) {
      throw InvalidArgumentError("NoiseSchedule: betas must lie in (0, 1)");
    }
    alphas_[i] = 1.0 - beta;
    running *= alphas_[i];
    alpha_bars_[i] = running;
    gammas_[i] = (1.0 - previous_bar) / (1.0 - running) * beta;
    previous_bar = running;
  }
}

NoiseSchedule NoiseSchedule::Linspace(double start, double end, int num_steps) {
  if (num_steps < 1) {
    throw InvalidArgumentError("NoiseSchedule::Linspace: num_steps must be >= 1");
  }
  if (!(start > 0.0) || !(start <= end) || !(end < 1.0)) {
    throw InvalidArgumentError(
        "NoiseSchedule::Linspace: need 0 < start <= end < 1");
  }
  std::vector<double> betas(static_cast<size_t>(num_steps));
  if (num_steps == 1) {
    betas[0] = start;
  } else {
    const double step = (end - start) / (num_steps - 1);
    for (int i = 0; i < num_steps; ++i) {
      betas[i] = start + step * i;
    }
    betas[num_steps - 1] = end;  // land exactly on the endpoint
  }
  return NoiseSchedule(std::move(betas));
}

NoiseSchedule NoiseSchedule::Named(const std::string& name) {
  if (name == "WG-3") {
    return NoiseSchedule({3e-4, 6e-2, 9e-1});
  }
  if (name == "WG-6") {
    return NoiseSchedule({7e-6, 1.4e-4, 2.1e-3, 2.8e-2, 3.5e-1, 7e-1});
  }
  if (name == "PG-6") {
    return NoiseSchedule({1e-4, 1e-3, 1e-2, 5e-2, 2e-1, 5e-1});
  }
  if (name == "WG-50") {
    return Linspace(1e-4, 0.05, 50);
  }
  throw InvalidArgumentError("unknown schedule name: " + name);
}

int NoiseSchedule::CheckStep(int t) const {
  if (t < 1 || t > num_steps()) {
    throw InvalidArgumentError("NoiseSchedule: step " + std::to_string(t) +
                               " outside [1, " + std::to_string(num_steps()) +
                               "]");
  }
  return t;
}

double NoiseSchedule::alpha_bar(int t) const {
  if (t == 0) return 1.0;
  return alpha_bars_[CheckStep(t) - 1];
}

std::span<const NamedScheduleInfo> NamedSchedules() {
  return {kNamedSchedules.data(), kNamedSchedules.size()};
}

Waveform ZeroPredictor::Predict(const Waveform& x_t,
                                const LogMelSpectrogram& /*c*/,
                                double /*beta_t*/) const {
  return Waveform(x_t.size(), 0.0);
}

OraclePredictor::OraclePredictor(Waveform clean, NoiseSchedule schedule)
    : clean_(std::move(clean)), schedule_(std::move(schedule)) {
  for (int t = 1; t <= schedule_.num_steps(); ++t) {
    const auto [it, inserted] = step_by_beta_.emplace(schedule_.beta(t), t);
    if (!inserted) {
      throw InvalidArgumentError(
          "OraclePredictor: betas must be unique within the schedule");
    }
  }
}

Waveform OraclePredictor::Predict(const Waveform& x_t,
                                  const LogMelSpectrogram& /*c*/,
                                  double beta_t) const {
  const auto it = step_by_beta_.find(beta_t);
  if (it == step_by_beta_.end()) {
    throw InvalidArgumentError("OraclePredictor: beta_t not in the schedule");
  }
  CheckSameLength(x_t, clean_, "OraclePredictor::Predict");
  const int t = it->second;
  const double scale = std::sqrt(schedule_.alpha_bar(t));
  const double spread = std::sqrt(1.0 - schedule_.alpha_bar(t));
  Waveform noise(x_t.size());
  for (size_t d = 0; d < x_t.size(); ++d) {
    noise[d] = (x_t[d] - scale * clean_[d]) / spread;
  }
  return noise;
}

Waveform ForwardDiffuse(const Waveform& x0, int t, const Waveform& noise,
                        const NoiseSchedule& schedule) {
  CheckSameLength(x0, noise, "ForwardDiffuse");
  schedule.beta(t);  // validates 1 <= t <= T
  const double scale = std::sqrt(schedule.alpha_bar(t));
  const double spread = std::sqrt(1.0 - schedule.alpha_bar(t));
  Waveform x_t(x0.size());
  for (size_t d = 0; d < x0.size(); ++d) {
    x_t[d] = scale * x0[d] + spread * noise[d];
  }
  return x_t;
}

Waveform PosteriorMean(const Waveform& x_t, const Waveform& predicted_noise,
                       int t, const NoiseSchedule& schedule) {
  CheckSameLength(x_t, predicted_noise, "PosteriorMean");
  const double noise_coeff =
      schedule.beta(t) / std::sqrt(1.0 - schedule.alpha_bar(t));
  const double inv_sqrt_alpha = 1.0 / std::sqrt(schedule.alpha(t));
  Waveform mean(x_t.size());
  for (size_t d = 0; d < x_t.size(); ++d) {
    mean[d] = inv_sqrt_alpha * (x_t[d] - noise_coeff * predicted_noise[d]);
  }
  return mean;
}

Waveform Sample(const LogMelSpectrogram& c, const NoisePrior& prior,
                const NoiseSchedule& schedule,
                const EpsilonPredictor& predictor, uint64_t seed,
                const SampleOptions& options) {
  Waveform x = prior.SampleNoise(seed, 0);
  for (int t = schedule.num_steps(); t >= 1; --t) {
    const Waveform predicted = predictor.Predict(x, c, schedule.beta(t));
    CheckSameLength(x, predicted, "Sample: predictor output");
    x = PosteriorMean(x, predicted, t, schedule);
    if (t > 1 && options.inject_noise) {
      const double scale = options.scale == NoiseInjectionScale::kSqrtGamma
                               ? std::sqrt(schedule.gamma(t))
                               : schedule.gamma(t);
      const Waveform noise =
          prior.SampleNoise(seed, static_cast<uint64_t>(t));
      for (size_t d = 0; d < x.size(); ++d) {
        x[d] += scale * noise[d];
      }
    }
  }
  return x;
}

double TrainingStepLoss(const Waveform& x0, const LogMelSpectrogram& c,
                        const NoisePrior& prior, const NoiseSchedule& schedule,
                        std::optional<int> t, const EpsilonPredictor& predictor,
                        uint64_t seed) {
  if (static_cast<int64_t>(x0.size()) != prior.num_samples()) {
    throw InvalidArgumentError("TrainingStepLoss: x0 does not match the prior");
  }
  const int step =
      t ? *t : UniformStep(seed, kStepDrawSequence, schedule.num_steps());
  const Waveform noise = prior.SampleNoise(seed, 0);
  const Waveform x_t = ForwardDiffuse(x0, step, noise, schedule);
  const Waveform predicted = predictor.Predict(x_t, c, schedule.beta(step));
  CheckSameLength(noise, predicted, "TrainingStepLoss: predictor output");
  return WhitenedL2Loss(prior, noise, predicted);
}

}  // namespace specdiff
