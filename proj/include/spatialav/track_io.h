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

// Bounding-box tracks and alignment reports.
//
// Track files are JSONL. Line 1 is a header, every following line one box:
//
//   {"frame_width":1280,"frame_height":720,"fps":30}
//   {"frame":0,"box":[600,200,680,520]}
//   {"frame":1,"box":[604,200,684,520],"depth":3.2}
//
// Boxes are [x_i, y_i, x_f, y_f] in pixels. Frame numbers never decrease;
// consecutive lines with the same frame number are concurrent boxes in that
// frame. Missing frame numbers are gaps (no detection). "depth" is an
// optional positive scalar per frame and must agree across a frame's lines.
// An optional "t" field, if present, must equal frame / fps within 1e-6.

#ifndef SPATIALAV_TRACK_IO_H_
#define SPATIALAV_TRACK_IO_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spatialav {

struct BBox {
  double x_i = 0;
  double y_i = 0;
  double x_f = 0;
  double y_f = 0;

  bool operator==(const BBox&) const = default;
};

struct TrackFrame {
  std::size_t frame_index = 0;
  double t = 0;  // frame_index / fps
  std::vector<BBox> boxes;
  std::optional<double> depth;

  bool operator==(const TrackFrame&) const = default;
};

struct BBoxTrack {
  double frame_width = 1280;
  double frame_height = 720;
  double fps = 30;
  // Strictly increasing frame_index, each with at least one box.
  std::vector<TrackFrame> frames;

  // Pointer into frames, or nullptr for a gap.
  const TrackFrame* Find(std::size_t frame_index) const;
  // Number of missing frame indices between the first and last frame.
  std::size_t GapCount() const;
  bool HasDepth() const;

  bool operator==(const BBoxTrack&) const = default;
};

// Throws ValidationError (with line number) or DataError on violations.
void ValidateTrack(const BBoxTrack& track);

BBoxTrack ParseTrack(std::string_view jsonl);
std::string SerializeTrack(const BBoxTrack& track);
BBoxTrack LoadTrack(const std::filesystem::path& path);
void SaveTrack(const BBoxTrack& track, const std::filesystem::path& path);

// Horizontal box center mapped affinely so x=0 -> -1 and x=width -> +1.
double BBoxCenterXNormalized(const BBox& box, double frame_width);
// Pixel column mapped onto the same [-1, 1] axis.
double NormalizeX(double x, double frame_width);

struct AlignmentEvent {
  std::size_t window_index = 0;
  double direction = 0;
  bool matched = false;

  bool operator==(const AlignmentEvent&) const = default;
};

struct AlignmentReport {
  std::size_t tp = 0;
  std::size_t fn = 0;
  std::vector<AlignmentEvent> per_event;

  // tp / (tp + fn); empty when there are no events.
  std::optional<double> score() const;
  bool no_events() const { return tp + fn == 0; }

  // Sums counts; per-event detail is concatenated in order.
  AlignmentReport& operator+=(const AlignmentReport& other);

  bool operator==(const AlignmentReport&) const = default;
};

// Keys in fixed order: score, tp, fn, no_events, per_event. A report with
// no events has "score": null and "no_events": true.
std::string SerializeReport(const AlignmentReport& report, int indent = 2);
AlignmentReport ParseReport(std::string_view json);
void WriteReport(const AlignmentReport& report,
                 const std::filesystem::path& path);
AlignmentReport ReadReport(const std::filesystem::path& path);

}  // namespace spatialav

#endif  // SPATIALAV_TRACK_IO_H_
