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

// Spatial audio-visual alignment score.
//
// The audio is cut into fixed windows (100 ms by default). A window holds a
// sound event when its mono RMS exceeds a threshold relative to full scale;
// the event direction is the interaural level difference
//   (E_R - E_L) / (E_R + E_L)
// of the per-channel RMS values. Each event is compared against the boxes
// of the nearest evaluation video frame (4 fps by default) and its two
// neighbours. An event whose direction falls inside any box's normalized
// x-span, widened by a tolerance on each side, is a true positive; anything
// else is a false negative. Score = TP / (TP + FN).
//
// This is an energy/ILD variant of the metric, not a neural localizer; it is
// deterministic and exact for level-panned sources.

#ifndef SPATIALAV_SPATIAL_ALIGN_H_
#define SPATIALAV_SPATIAL_ALIGN_H_

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "spatialav/audio_io.h"
#include "spatialav/track_io.h"

namespace spatialav {

struct DirectionWindow {
  bool active = false;
  std::optional<double> direction;  // present iff active after estimation
  double energy = 0;                // mono RMS over the window

  bool operator==(const DirectionWindow&) const = default;
};

struct DirectionTrack {
  double window_len = 0.1;  // seconds
  std::size_t window_samples = 0;
  std::vector<DirectionWindow> windows;

  // Center time of window i in seconds.
  double WindowCenter(std::size_t i) const;
};

struct AlignOptions {
  double eval_fps = 4.0;
  double tolerance = 0.15;  // added to each side of the normalized x-span
};

// Window count is ceil(frames / window_samples); a trailing partial window
// is measured over the samples it has.
DirectionTrack DetectEvents(const StereoBuffer& buf, double window_len = 0.1,
                            double threshold_db = -40.0);

// Fills direction for active windows. An active window whose channels carry
// no energy is demoted to inactive.
DirectionTrack EstimateDirection(const StereoBuffer& buf,
                                 DirectionTrack track);

// DetectEvents followed by EstimateDirection.
DirectionTrack Localize(const StereoBuffer& buf, double window_len = 0.1,
                        double threshold_db = -40.0);

// Index of the evaluation frame nearest to time t; ties go to the earlier
// frame.
std::int64_t NearestEvalFrame(double t, double eval_fps);

// Track boxes visible at evaluation frame k: the boxes of the source frame
// nearest to k / eval_fps (ties earlier), or none if that frame is a gap.
std::vector<BBox> BoxesAtEvalFrame(const BBoxTrack& track, std::int64_t k,
                                   double eval_fps);

// A track with no frames yields a report with no events.
AlignmentReport SpatialAvAlign(const DirectionTrack& dir,
                               const BBoxTrack& track,
                               const AlignOptions& opts = {});

// The track's box lists randomly permuted across its frame indices. Scoring
// audio against it estimates how much of a score survives without any real
// audio-visual correspondence.
BBoxTrack ShuffledTrack(const BBoxTrack& track, std::mt19937_64& rng);

}  // namespace spatialav

#endif  // SPATIALAV_SPATIAL_ALIGN_H_
