// Copyright 2026 The spatialav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// DDPM forward/reverse process over plain latent vectors.
//
// Steps are 1-based: t = 1..T. alpha_bar(0) is defined as 1, which makes
// the posterior variance at t = 1 zero and the last reverse step
// deterministic.
//
//   forward step     z_t = sqrt(a_t) z_{t-1} + sqrt(1 - a_t) eps
//   forward marginal z_t = sqrt(ab_t) z_0 + sqrt(1 - ab_t) eps
//   reverse mean     mu  = (z_t - (1 - a_t) / sqrt(1 - ab_t) eps_hat) / sqrt(a_t)
//   reverse variance s2  = (1 - ab_{t-1}) / (1 - ab_t) (1 - a_t)
//   v target         v   = sqrt(ab_t) eps - sqrt(1 - ab_t) z_0
//
// The noise predictor is a callback; a trained network plugs in there. The
// sampler never looks inside the conditioning it forwards.

#ifndef SPATIALAV_DIFFUSION_H_
#define SPATIALAV_DIFFUSION_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace spatialav::diffusion {

using Vec = std::vector<double>;
using Rng = std::mt19937_64;

class NoiseSchedule {
 public:
  // Throws ArgumentError unless every alpha is in (0, 1] and T >= 1.
  explicit NoiseSchedule(std::vector<double> alphas);

  int steps() const { return static_cast<int>(alphas_.size()); }
  // 1 <= t <= T.
  double alpha(int t) const;
  // 0 <= t <= T; alpha_bar(0) == 1.
  double alpha_bar(int t) const;

  std::span<const double> alphas() const { return alphas_; }
  std::span<const double> alpha_bars() const { return alpha_bars_; }

 private:
  std::vector<double> alphas_;
  std::vector<double> alpha_bars_;  // alpha_bars_[t-1] = prod_{i<=t} alpha_i
};

enum class ScheduleKind { kLinearBeta, kCosine };

struct ScheduleParams {
  // Linear beta endpoints.
  double beta_start = 1e-4;
  double beta_end = 0.02;
  // Cosine offset and per-step beta cap.
  double cosine_s = 0.008;
  double max_beta = 0.999;
};

NoiseSchedule MakeSchedule(ScheduleKind kind, int steps,
                           const ScheduleParams& params = {});

struct LatentState {
  Vec z;
  int t = 0;
};

struct NamedEmbedding {
  std::string name;
  Vec values;
};

// Spatial/semantic embeddings plus the per-channel envelope control.
class ConditioningBundle {
 public:
  ConditioningBundle() = default;
  // Throws ArgumentError on duplicate names or non-finite values.
  ConditioningBundle(std::vector<NamedEmbedding> embeddings,
                     std::vector<std::vector<float>> envelope);

  const std::vector<NamedEmbedding>& embeddings() const { return embeddings_; }
  const std::vector<std::vector<float>>& envelope() const { return envelope_; }
  const NamedEmbedding* Find(const std::string& name) const;

 private:
  std::vector<NamedEmbedding> embeddings_;
  std::vector<std::vector<float>> envelope_;
};

// eps_hat = predictor(z_t, t, cond). cond == nullptr requests the
// unconditional prediction used by classifier-free guidance.
using NoisePredictor = std::function<Vec(std::span<const double> z_t, int t,
                                         const ConditioningBundle* cond)>;

// v-parameterized model: v_hat = model(z_t, t, cond).
using VelocityPredictor = NoisePredictor;

Vec StandardNormal(std::size_t dim, Rng& rng);

// z_{t} from z_{t-1} = prev.z with t = prev.t + 1.
LatentState ForwardStep(const LatentState& prev, const NoiseSchedule& schedule,
                        Rng& rng);

struct ForwardSample {
  Vec z_t;
  Vec eps;
};
ForwardSample ForwardSampleAt(std::span<const double> z0, int t,
                              const NoiseSchedule& schedule, Rng& rng);
// Deterministic form with caller-supplied noise.
Vec ForwardMarginal(std::span<const double> z0, std::span<const double> eps,
                    int t, const NoiseSchedule& schedule);

Vec PosteriorMean(std::span<const double> z_t, int t,
                  std::span<const double> eps_hat,
                  const NoiseSchedule& schedule);
double PosteriorVariance(int t, const NoiseSchedule& schedule);

Vec VTarget(std::span<const double> z0, std::span<const double> eps, int t,
            const NoiseSchedule& schedule);
Vec VToEps(std::span<const double> v, std::span<const double> z_t, int t,
           const NoiseSchedule& schedule);
// Same maps at an explicit alpha_bar in [0, 1], including the endpoints no
// schedule reaches.
Vec VTarget(std::span<const double> z0, std::span<const double> eps,
            double alpha_bar);
Vec VToEps(std::span<const double> v, std::span<const double> z_t,
           double alpha_bar);

// Training objective of a v-prediction model: mean squared error between
// the predicted and target velocity.
double VLoss(std::span<const double> v_hat, std::span<const double> v);

// Adapts a v-prediction model to the eps form the sampler consumes.
NoisePredictor EpsFromVelocity(VelocityPredictor model,
                               const NoiseSchedule& schedule);

struct SamplerOptions {
  double guidance_scale = 1.0;
  // Drop the sigma_t noise term (deterministic chain).
  bool zero_variance = false;
  // Starting latent; drawn from N(0, I) when absent.
  std::optional<Vec> z_start;
};

// Ancestral sampling from t = T down to 0. With guidance_scale s != 1,
// eps_hat = eps_uncond + s (eps_cond - eps_uncond); with s == 1 only the
// conditional prediction is evaluated. Throws ContractError when the
// predictor returns the wrong shape.
Vec ReverseSample(const NoisePredictor& predictor,
                  const ConditioningBundle& cond, const NoiseSchedule& schedule,
                  Rng& rng, std::size_t dim, const SamplerOptions& opts = {});

struct RoundTripResult {
  Vec z0;
  Vec reconstructed;
  double max_abs_error = 0;
};

// Runs the forward chain from a random z_0, records every step's noise, then
// reverses it with zero variance using a predictor that replays the recorded
// noise in eps form. Exact arithmetic returns z_0.
RoundTripResult OracleRoundTrip(const NoiseSchedule& schedule, std::size_t dim,
                                Rng& rng);

}  // namespace spatialav::diffusion

#endif  // SPATIALAV_DIFFUSION_H_
