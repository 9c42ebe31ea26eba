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

#include "spatialav/diffusion.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "spatialav/errors.h"

namespace spatialav::diffusion {
namespace {

void RequireSameSize(std::span<const double> a, std::span<const double> b,
                     const char* what) {
  if (a.size() != b.size()) {
    throw ArgumentError(std::string(what) + ": shape mismatch (" +
                        std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()) + ")");
  }
}

void RequireStep(int t, const NoiseSchedule& schedule, const char* what) {
  if (t < 1 || t > schedule.steps()) {
    throw ArgumentError(std::string(what) + ": step " + std::to_string(t) +
                        " outside [1, " + std::to_string(schedule.steps()) +
                        "]");
  }
}

void RequireAlphaBar(double alpha_bar, const char* what) {
  if (!(alpha_bar >= 0.0 && alpha_bar <= 1.0)) {
    throw ArgumentError(std::string(what) + ": alpha_bar outside [0, 1]");
  }
}

}  // namespace

NoiseSchedule::NoiseSchedule(std::vector<double> alphas)
    : alphas_(std::move(alphas)) {
  if (alphas_.empty()) throw ArgumentError("NoiseSchedule: T must be >= 1");
  alpha_bars_.reserve(alphas_.size());
  double running = 1.0;
  for (double a : alphas_) {
    if (!(a > 0.0 && a <= 1.0)) {
      throw ArgumentError("NoiseSchedule: alpha outside (0, 1]");
    }
    running *= a;
    alpha_bars_.push_back(running);
  }
}

double NoiseSchedule::alpha(int t) const {
  RequireStep(t, *this, "NoiseSchedule::alpha");
  return alphas_[t - 1];
}

double NoiseSchedule::alpha_bar(int t) const {
  if (t == 0) return 1.0;
  RequireStep(t, *this, "NoiseSchedule::alpha_bar");
  return alpha_bars_[t - 1];
}

NoiseSchedule MakeSchedule(ScheduleKind kind, int steps,
                           const ScheduleParams& params) {
  if (steps < 1) throw ArgumentError("MakeSchedule: T must be >= 1");
  std::vector<double> alphas(steps);
  switch (kind) {
    case ScheduleKind::kLinearBeta: {
      const double b0 = params.beta_start;
      const double b1 = params.beta_end;
      if (!(b0 > 0 && b0 < 1 && b1 > 0 && b1 < 1)) {
        throw ArgumentError("MakeSchedule: beta endpoints must lie in (0, 1)");
      }
      for (int i = 0; i < steps; ++i) {
        const double frac = steps == 1 ? 0.0 : double(i) / (steps - 1);
        alphas[i] = 1.0 - (b0 + frac * (b1 - b0));
      }
      break;
    }
    case ScheduleKind::kCosine: {
      const double s = params.cosine_s;
      if (!(s >= 0) || !(params.max_beta > 0 && params.max_beta < 1)) {
        throw ArgumentError("MakeSchedule: cosine offset must be >= 0 and "
                            "max_beta in (0, 1)");
      }
      auto f = [&](int t) {
        const double c =
            std::cos((double(t) / steps + s) / (1 + s) * std::numbers::pi / 2);
        return c * c;
      };
      const double f0 = f(0);
      for (int t = 1; t <= steps; ++t) {
        const double beta =
            std::min(1.0 - (f(t) / f0) / (f(t - 1) / f0), params.max_beta);
        if (!(beta > 0 && beta < 1)) {
          throw ArgumentError("MakeSchedule: cosine beta left (0, 1)");
        }
        alphas[t - 1] = 1.0 - beta;
      }
      break;
    }
  }
  return NoiseSchedule(std::move(alphas));
}

ConditioningBundle::ConditioningBundle(
    std::vector<NamedEmbedding> embeddings,
    std::vector<std::vector<float>> envelope)
    : embeddings_(std::move(embeddings)), envelope_(std::move(envelope)) {
  std::set<std::string> names;
  for (const NamedEmbedding& e : embeddings_) {
    if (!names.insert(e.name).second) {
      throw ArgumentError("ConditioningBundle: duplicate name '" + e.name +
                          "'");
    }
    if (!std::all_of(e.values.begin(), e.values.end(),
                     [](double v) { return std::isfinite(v); })) {
      throw ArgumentError("ConditioningBundle: non-finite value in '" +
                          e.name + "'");
    }
  }
  for (const auto& ch : envelope_) {
    if (!std::all_of(ch.begin(), ch.end(),
                     [](float v) { return std::isfinite(v); })) {
      throw ArgumentError("ConditioningBundle: non-finite envelope value");
    }
  }
}

const NamedEmbedding* ConditioningBundle::Find(const std::string& name) const {
  for (const NamedEmbedding& e : embeddings_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

Vec StandardNormal(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec out(dim);
  for (double& v : out) v = normal(rng);
  return out;
}

LatentState ForwardStep(const LatentState& prev, const NoiseSchedule& schedule,
                        Rng& rng) {
  const int t = prev.t + 1;
  RequireStep(t, schedule, "ForwardStep");
  const double a = schedule.alpha(t);
  const double keep = std::sqrt(a);
  const double noise = std::sqrt(1.0 - a);
  const Vec eps = StandardNormal(prev.z.size(), rng);
  LatentState next{Vec(prev.z.size()), t};
  for (std::size_t i = 0; i < prev.z.size(); ++i) {
    next.z[i] = keep * prev.z[i] + noise * eps[i];
  }
  return next;
}

Vec ForwardMarginal(std::span<const double> z0, std::span<const double> eps,
                    int t, const NoiseSchedule& schedule) {
  RequireStep(t, schedule, "ForwardMarginal");
  RequireSameSize(z0, eps, "ForwardMarginal");
  const double ab = schedule.alpha_bar(t);
  const double keep = std::sqrt(ab);
  const double noise = std::sqrt(1.0 - ab);
  Vec z(z0.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    z[i] = keep * z0[i] + noise * eps[i];
  }
  return z;
}

ForwardSample ForwardSampleAt(std::span<const double> z0, int t,
                              const NoiseSchedule& schedule, Rng& rng) {
  RequireStep(t, schedule, "ForwardSampleAt");
  ForwardSample out;
  out.eps = StandardNormal(z0.size(), rng);
  out.z_t = ForwardMarginal(z0, out.eps, t, schedule);
  return out;
}

Vec PosteriorMean(std::span<const double> z_t, int t,
                  std::span<const double> eps_hat,
                  const NoiseSchedule& schedule) {
  RequireStep(t, schedule, "PosteriorMean");
  RequireSameSize(z_t, eps_hat, "PosteriorMean");
  const double a = schedule.alpha(t);
  const double ab = schedule.alpha_bar(t);
  // With a == 1 the noise coefficient is 0 regardless of ab.
  const double coef = a == 1.0 ? 0.0 : (1.0 - a) / std::sqrt(1.0 - ab);
  const double inv_sqrt_a = 1.0 / std::sqrt(a);
  Vec mu(z_t.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    mu[i] = inv_sqrt_a * (z_t[i] - coef * eps_hat[i]);
  }
  return mu;
}

double PosteriorVariance(int t, const NoiseSchedule& schedule) {
  RequireStep(t, schedule, "PosteriorVariance");
  const double a = schedule.alpha(t);
  if (a == 1.0) return 0.0;
  return (1.0 - schedule.alpha_bar(t - 1)) / (1.0 - schedule.alpha_bar(t)) *
         (1.0 - a);
}

Vec VTarget(std::span<const double> z0, std::span<const double> eps,
            double alpha_bar) {
  RequireAlphaBar(alpha_bar, "VTarget");
  RequireSameSize(z0, eps, "VTarget");
  const double ce = std::sqrt(alpha_bar);
  const double cz = std::sqrt(1.0 - alpha_bar);
  Vec v(z0.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = ce * eps[i] - cz * z0[i];
  return v;
}

Vec VTarget(std::span<const double> z0, std::span<const double> eps, int t,
            const NoiseSchedule& schedule) {
  RequireStep(t, schedule, "VTarget");
  return VTarget(z0, eps, schedule.alpha_bar(t));
}

Vec VToEps(std::span<const double> v, std::span<const double> z_t,
           double alpha_bar) {
  RequireAlphaBar(alpha_bar, "VToEps");
  RequireSameSize(v, z_t, "VToEps");
  const double cv = std::sqrt(alpha_bar);
  const double cz = std::sqrt(1.0 - alpha_bar);
  Vec eps(v.size());
  for (std::size_t i = 0; i < eps.size(); ++i) eps[i] = cv * v[i] + cz * z_t[i];
  return eps;
}

Vec VToEps(std::span<const double> v, std::span<const double> z_t, int t,
           const NoiseSchedule& schedule) {
  RequireStep(t, schedule, "VToEps");
  return VToEps(v, z_t, schedule.alpha_bar(t));
}

double VLoss(std::span<const double> v_hat, std::span<const double> v) {
  RequireSameSize(v_hat, v, "VLoss");
  if (v.empty()) throw ArgumentError("VLoss: empty vectors");
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = v_hat[i] - v[i];
    acc += d * d;
  }
  return acc / static_cast<double>(v.size());
}

NoisePredictor EpsFromVelocity(VelocityPredictor model,
                               const NoiseSchedule& schedule) {
  return [model = std::move(model), schedule](
             std::span<const double> z_t, int t,
             const ConditioningBundle* cond) -> Vec {
    const Vec v = model(z_t, t, cond);
    if (v.size() != z_t.size()) {
      throw ContractError("velocity predictor returned wrong shape");
    }
    return VToEps(v, z_t, t, schedule);
  };
}

Vec ReverseSample(const NoisePredictor& predictor,
                  const ConditioningBundle& cond, const NoiseSchedule& schedule,
                  Rng& rng, std::size_t dim, const SamplerOptions& opts) {
  if (!std::isfinite(opts.guidance_scale)) {
    throw ArgumentError("ReverseSample: guidance_scale must be finite");
  }
  Vec z;
  if (opts.z_start) {
    if (opts.z_start->size() != dim) {
      throw ArgumentError("ReverseSample: z_start has wrong dimension");
    }
    z = *opts.z_start;
  } else {
    z = StandardNormal(dim, rng);
  }

  auto call = [&](int t, const ConditioningBundle* c) {
    Vec out = predictor(z, t, c);
    if (out.size() != dim) {
      throw ContractError("noise predictor returned " +
                          std::to_string(out.size()) + " values, expected " +
                          std::to_string(dim));
    }
    return out;
  };

  const bool guided = opts.guidance_scale != 1.0;
  for (int t = schedule.steps(); t >= 1; --t) {
    Vec eps_hat = call(t, &cond);
    if (guided) {
      const Vec uncond = call(t, nullptr);
      for (std::size_t i = 0; i < dim; ++i) {
        eps_hat[i] = uncond[i] + opts.guidance_scale * (eps_hat[i] - uncond[i]);
      }
    }
    Vec mu = PosteriorMean(z, t, eps_hat, schedule);
    const double var = PosteriorVariance(t, schedule);
    if (!opts.zero_variance && var > 0.0) {
      const double sigma = std::sqrt(var);
      const Vec noise = StandardNormal(dim, rng);
      for (std::size_t i = 0; i < dim; ++i) mu[i] += sigma * noise[i];
    }
    z = std::move(mu);
  }
  return z;
}

RoundTripResult OracleRoundTrip(const NoiseSchedule& schedule, std::size_t dim,
                                Rng& rng) {
  const int steps = schedule.steps();
  RoundTripResult result;
  result.z0 = StandardNormal(dim, rng);

  // replay[t-1] is the eps_hat that makes PosteriorMean(z_t) == z_{t-1}.
  std::vector<Vec> replay(steps);
  LatentState state{result.z0, 0};
  for (int t = 1; t <= steps; ++t) {
    LatentState next = ForwardStep(state, schedule, rng);
    const double a = schedule.alpha(t);
    Vec& e = replay[t - 1];
    e.assign(dim, 0.0);
    if (a < 1.0) {
      // Recover the step noise, then rescale into the reverse-mean form.
      const double scale = std::sqrt(1.0 - schedule.alpha_bar(t)) / (1.0 - a);
      for (std::size_t i = 0; i < dim; ++i) {
        e[i] = (next.z[i] - std::sqrt(a) * state.z[i]) * scale;
      }
    }
    state = std::move(next);
  }

  NoisePredictor oracle = [&replay](std::span<const double>, int t,
                                    const ConditioningBundle*) {
    return replay[t - 1];
  };
  SamplerOptions opts;
  opts.zero_variance = true;
  opts.z_start = state.z;
  result.reconstructed =
      ReverseSample(oracle, ConditioningBundle(), schedule, rng, dim, opts);
  for (std::size_t i = 0; i < dim; ++i) {
    result.max_abs_error =
        std::max(result.max_abs_error,
                 std::abs(result.reconstructed[i] - result.z0[i]));
  }
  return result;
}

}  // namespace spatialav::diffusion
