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

#include "spatialav/spatial_render.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spatialav/errors.h"

namespace spatialav {
namespace {

struct Knot {
  double t;
  double value;
};

// Piecewise-linear interpolation through knots (sorted by t), held flat
// outside the knot range.
std::vector<double> InterpolateKnots(std::span<const Knot> knots,
                                     int sample_rate, std::size_t n_samples) {
  std::vector<double> out(n_samples);
  std::size_t k = 0;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const double t = static_cast<double>(s) / sample_rate;
    while (k + 1 < knots.size() && knots[k + 1].t <= t) ++k;
    if (t <= knots.front().t) {
      out[s] = knots.front().value;
    } else if (k + 1 >= knots.size()) {
      out[s] = knots.back().value;
    } else {
      const Knot& a = knots[k];
      const Knot& b = knots[k + 1];
      const double frac = (t - a.t) / (b.t - a.t);
      out[s] = a.value + frac * (b.value - a.value);
    }
  }
  return out;
}

double MeanCenter(const TrackFrame& f, double frame_width) {
  double acc = 0.0;
  for (const BBox& b : f.boxes) acc += BBoxCenterXNormalized(b, frame_width);
  return acc / static_cast<double>(f.boxes.size());
}

}  // namespace

PanGains ConstantPowerGains(double p) {
  p = std::clamp(p, -1.0, 1.0);
  constexpr double kQuarterPi = std::numbers::pi / 4.0;
  return {std::sin((1.0 - p) * kQuarterPi), std::sin((1.0 + p) * kQuarterPi)};
}

std::vector<double> PanCurve(const BBoxTrack& track, int sample_rate,
                             std::size_t n_samples, double smoothing) {
  if (track.frames.empty()) throw ArgumentError("PanCurve: empty track");
  if (sample_rate <= 0) throw ArgumentError("PanCurve: bad sample rate");
  if (!(smoothing >= 0) || !std::isfinite(smoothing)) {
    throw ArgumentError("PanCurve: smoothing must be >= 0");
  }
  std::vector<Knot> knots;
  knots.reserve(track.frames.size());
  for (const TrackFrame& f : track.frames) {
    knots.push_back({f.t, MeanCenter(f, track.frame_width)});
  }
  std::vector<double> pan = InterpolateKnots(knots, sample_rate, n_samples);

  if (smoothing > 0 && !pan.empty()) {
    const double a = 1.0 - std::exp(-1.0 / (smoothing * sample_rate));
    double state = pan.front();
    for (double& v : pan) {
      state += a * (v - state);
      v = state;
    }
  }
  return pan;
}

std::vector<double> DepthGainCurve(const BBoxTrack& track, int sample_rate,
                                   std::size_t n_samples, double exponent) {
  if (!std::isfinite(exponent) || exponent < 0) {
    throw ArgumentError("DepthGainCurve: exponent must be finite and >= 0");
  }
  std::vector<double> depths;
  for (const TrackFrame& f : track.frames) {
    if (f.depth) depths.push_back(*f.depth);
  }
  if (exponent == 0 || depths.empty()) {
    return std::vector<double>(n_samples, 1.0);
  }
  std::vector<double> sorted = depths;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  const double median =
      m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);

  std::vector<Knot> knots;
  for (const TrackFrame& f : track.frames) {
    if (f.depth) knots.push_back({f.t, std::pow(*f.depth / median, -exponent)});
  }
  return InterpolateKnots(knots, sample_rate, n_samples);
}

StereoBuffer RenderWithPan(std::span<const float> source,
                           std::span<const double> pan,
                           std::span<const double> gain, int sample_rate) {
  if (source.empty()) throw ArgumentError("RenderWithPan: empty source");
  if (pan.size() != source.size() ||
      (!gain.empty() && gain.size() != source.size())) {
    throw ArgumentError("RenderWithPan: curve length mismatch");
  }
  std::vector<float> left(source.size()), right(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) {
    const PanGains g = ConstantPowerGains(pan[i]);
    const double s = source[i] * (gain.empty() ? 1.0 : gain[i]);
    left[i] = static_cast<float>(std::clamp(s * g.left, -1.0, 1.0));
    right[i] = static_cast<float>(std::clamp(s * g.right, -1.0, 1.0));
  }
  return StereoBuffer(std::move(left), std::move(right), sample_rate);
}

StereoBuffer RenderStereo(std::span<const float> source,
                          const BBoxTrack& track, const RenderConfig& cfg,
                          int sample_rate) {
  if (source.empty()) throw ArgumentError("RenderStereo: empty source");
  const auto pan = PanCurve(track, sample_rate, source.size(), cfg.smoothing);
  const auto gain =
      DepthGainCurve(track, sample_rate, source.size(), cfg.depth_exponent);
  return RenderWithPan(source, pan, gain, sample_rate);
}

}  // namespace spatialav
