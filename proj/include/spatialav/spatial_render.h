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

// Reference stereo spatializer. A mono source is panned along the horizontal
// position of a bounding-box track with a constant-power law. Direction is
// encoded purely in level (no interaural delay), which is what the ILD
// direction estimator in spatial_align reads back.

#ifndef SPATIALAV_SPATIAL_RENDER_H_
#define SPATIALAV_SPATIAL_RENDER_H_

#include <span>
#include <vector>

#include "spatialav/audio_io.h"
#include "spatialav/track_io.h"

namespace spatialav {

struct RenderConfig {
  // Gain follows (depth / median_depth)^-depth_exponent; 0 disables it.
  double depth_exponent = 0.0;
  // Time constant of the one-pole pan smoother, seconds.
  double smoothing = 0.020;
};

struct PanGains {
  double left;
  double right;
};

// p in [-1, 1] (clamped): -1 hard left, +1 hard right.
// left = cos((p+1)pi/4), right = sin((p+1)pi/4). Evaluated as
// sin((1-p)pi/4) / sin((1+p)pi/4) so that gains(-p) is exactly the swap of
// gains(p) and the hard-pan zeros are exact.
PanGains ConstantPowerGains(double p);

// Per-sample pan position: the mean box center of each track frame,
// linearly interpolated in time, held before the first and after the last
// frame, then smoothed with a one-pole low-pass of time constant
// `smoothing` seconds (0 = none). The smoother starts at the first value.
std::vector<double> PanCurve(const BBoxTrack& track, int sample_rate,
                             std::size_t n_samples, double smoothing);

// Per-sample depth gain; all ones when the track has no depth data or
// exponent is 0.
std::vector<double> DepthGainCurve(const BBoxTrack& track, int sample_rate,
                                   std::size_t n_samples, double exponent);

// Pan `source` with a precomputed pan curve and optional per-sample gain
// (empty = unity). Output is clipped to [-1, 1].
StereoBuffer RenderWithPan(std::span<const float> source,
                           std::span<const double> pan,
                           std::span<const double> gain, int sample_rate);

StereoBuffer RenderStereo(std::span<const float> source,
                          const BBoxTrack& track, const RenderConfig& cfg,
                          int sample_rate = kDefaultSampleRate);

}  // namespace spatialav

#endif  // SPATIALAV_SPATIAL_RENDER_H_
