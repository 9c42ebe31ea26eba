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

#include "spatialav/spatial_align.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spatialav/errors.h"

namespace spatialav {
namespace {

double Rms(std::span<const float> x, std::size_t begin, std::size_t end) {
  double acc = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    acc += static_cast<double>(x[i]) * x[i];
  }
  return std::sqrt(acc / static_cast<double>(end - begin));
}

// Nearest integer to x with .5 going down.
std::int64_t RoundHalfDown(double x) {
  return static_cast<std::int64_t>(std::ceil(x - 0.5));
}

}  // namespace

double DirectionTrack::WindowCenter(std::size_t i) const {
  return (static_cast<double>(i) + 0.5) * window_len;
}

DirectionTrack DetectEvents(const StereoBuffer& buf, double window_len,
                            double threshold_db) {
  if (!(window_len > 0) || !std::isfinite(window_len)) {
    throw ArgumentError("DetectEvents: window_len must be positive");
  }
  DirectionTrack out;
  out.window_len = window_len;
  out.window_samples = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(window_len * buf.sample_rate())));
  const std::size_t n = buf.frames();
  const std::size_t count = (n + out.window_samples - 1) / out.window_samples;
  const double threshold = std::pow(10.0, threshold_db / 20.0);
  const std::vector<float> mono = ToMono(buf);

  out.windows.resize(count);
  for (std::size_t w = 0; w < count; ++w) {
    const std::size_t begin = w * out.window_samples;
    const std::size_t end = std::min(n, begin + out.window_samples);
    DirectionWindow& win = out.windows[w];
    win.energy = Rms(mono, begin, end);
    win.active = win.energy > threshold;
  }
  return out;
}

DirectionTrack EstimateDirection(const StereoBuffer& buf,
                                 DirectionTrack track) {
  if (track.window_samples == 0) {
    throw ArgumentError("EstimateDirection: track has no window size");
  }
  const std::size_t n = buf.frames();
  for (std::size_t w = 0; w < track.windows.size(); ++w) {
    DirectionWindow& win = track.windows[w];
    win.direction.reset();
    if (!win.active) continue;
    const std::size_t begin = w * track.window_samples;
    const std::size_t end = std::min(n, begin + track.window_samples);
    if (begin >= end) {
      win.active = false;
      continue;
    }
    const double e_left = Rms(buf.left(), begin, end);
    const double e_right = Rms(buf.right(), begin, end);
    const double total = e_right + e_left;
    if (!(total > 0)) {
      win.active = false;
      continue;
    }
    win.direction = std::clamp((e_right - e_left) / total, -1.0, 1.0);
  }
  return track;
}

DirectionTrack Localize(const StereoBuffer& buf, double window_len,
                        double threshold_db) {
  return EstimateDirection(buf, DetectEvents(buf, window_len, threshold_db));
}

std::int64_t NearestEvalFrame(double t, double eval_fps) {
  return RoundHalfDown(t * eval_fps);
}

std::vector<BBox> BoxesAtEvalFrame(const BBoxTrack& track, std::int64_t k,
                                   double eval_fps) {
  if (k < 0) return {};
  const std::int64_t source =
      RoundHalfDown(static_cast<double>(k) / eval_fps * track.fps);
  if (source < 0) return {};
  const TrackFrame* f = track.Find(static_cast<std::size_t>(source));
  if (f == nullptr) return {};
  return f->boxes;
}

AlignmentReport SpatialAvAlign(const DirectionTrack& dir,
                               const BBoxTrack& track,
                               const AlignOptions& opts) {
  if (!(opts.eval_fps > 0) || !std::isfinite(opts.eval_fps)) {
    throw ArgumentError("SpatialAvAlign: eval_fps must be positive");
  }
  if (!std::isfinite(opts.tolerance) || opts.tolerance < 0) {
    throw ArgumentError("SpatialAvAlign: tolerance must be >= 0");
  }
  AlignmentReport report;
  if (track.frames.empty()) return report;

  for (std::size_t w = 0; w < dir.windows.size(); ++w) {
    const DirectionWindow& win = dir.windows[w];
    if (!win.active) continue;
    if (!win.direction) {
      throw ArgumentError(
          "SpatialAvAlign: active window without direction; run "
          "EstimateDirection first");
    }
    const double d = *win.direction;
    const std::int64_t nearest = NearestEvalFrame(dir.WindowCenter(w),
                                                  opts.eval_fps);
    bool matched = false;
    for (std::int64_t k = nearest - 1; k <= nearest + 1 && !matched; ++k) {
      for (const BBox& b : BoxesAtEvalFrame(track, k, opts.eval_fps)) {
        const double lo = NormalizeX(b.x_i, track.frame_width) - opts.tolerance;
        const double hi = NormalizeX(b.x_f, track.frame_width) + opts.tolerance;
        if (d >= lo && d <= hi) {
          matched = true;
          break;
        }
      }
    }
    matched ? ++report.tp : ++report.fn;
    report.per_event.push_back({w, d, matched});
  }
  return report;
}

BBoxTrack ShuffledTrack(const BBoxTrack& track, std::mt19937_64& rng) {
  BBoxTrack out = track;
  std::vector<std::size_t> order(track.frames.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.frames[i].boxes = track.frames[order[i]].boxes;
    out.frames[i].depth = track.frames[order[i]].depth;
  }
  return out;
}

}  // namespace spatialav
