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

#include "spatialav/track_io.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "spatialav/errors.h"

namespace spatialav {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kTimeTolerance = 1e-6;

double RequirePositive(const json& obj, const char* key, std::size_t line) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    throw ValidationError(line, std::string("header field '") + key +
                                    "' missing or not a number");
  }
  const double v = obj[key].get<double>();
  if (!std::isfinite(v) || v <= 0) {
    throw ValidationError(line, std::string("header field '") + key +
                                    "' must be positive");
  }
  return v;
}

void CheckBox(const BBox& b, double width, double height, std::size_t line) {
  for (double v : {b.x_i, b.y_i, b.x_f, b.y_f}) {
    if (!std::isfinite(v)) throw ValidationError(line, "non-finite box value");
  }
  if (b.x_i < 0 || b.x_f > width || b.x_i > b.x_f) {
    throw ValidationError(line, "box x-range violates 0 <= x_i <= x_f <= "
                                "frame_width");
  }
  if (b.y_i < 0 || b.y_f > height || b.y_i > b.y_f) {
    throw ValidationError(line, "box y-range violates 0 <= y_i <= y_f <= "
                                "frame_height");
  }
}

void CheckDepth(double depth, std::size_t line) {
  if (!std::isfinite(depth) || depth <= 0) {
    throw ValidationError(line, "depth must be a positive number");
  }
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

const TrackFrame* BBoxTrack::Find(std::size_t frame_index) const {
  auto it = std::lower_bound(
      frames.begin(), frames.end(), frame_index,
      [](const TrackFrame& f, std::size_t k) { return f.frame_index < k; });
  if (it == frames.end() || it->frame_index != frame_index) return nullptr;
  return &*it;
}

std::size_t BBoxTrack::GapCount() const {
  if (frames.empty()) return 0;
  return frames.back().frame_index - frames.front().frame_index + 1 -
         frames.size();
}

bool BBoxTrack::HasDepth() const {
  return std::any_of(frames.begin(), frames.end(),
                     [](const TrackFrame& f) { return f.depth.has_value(); });
}

void ValidateTrack(const BBoxTrack& track) {
  for (double v : {track.frame_width, track.frame_height, track.fps}) {
    if (!std::isfinite(v) || v <= 0) {
      throw ValidationError(1, "frame_width, frame_height and fps must be "
                               "positive");
    }
  }
  std::size_t line = 1;
  for (std::size_t i = 0; i < track.frames.size(); ++i) {
    const TrackFrame& f = track.frames[i];
    const std::size_t first_line = line + 1;
    if (f.boxes.empty()) throw ValidationError(first_line, "frame has no box");
    if (i > 0 && f.frame_index <= track.frames[i - 1].frame_index) {
      throw ValidationError(first_line, "frame indices must increase");
    }
    if (std::abs(f.t - f.frame_index / track.fps) > kTimeTolerance) {
      throw ValidationError(first_line, "t != frame / fps");
    }
    if (f.depth) CheckDepth(*f.depth, first_line);
    for (const BBox& b : f.boxes) {
      CheckBox(b, track.frame_width, track.frame_height, ++line);
    }
  }
}

BBoxTrack ParseTrack(std::string_view jsonl) {
  BBoxTrack track;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= jsonl.size()) {
    std::size_t end = jsonl.find('\n', pos);
    if (end == std::string_view::npos) end = jsonl.size();
    std::string_view line = jsonl.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded() || !obj.is_object()) {
      throw ValidationError(line_no, "not a JSON object");
    }
    if (!have_header) {
      track.frame_width = RequirePositive(obj, "frame_width", line_no);
      track.frame_height = RequirePositive(obj, "frame_height", line_no);
      track.fps = RequirePositive(obj, "fps", line_no);
      have_header = true;
      continue;
    }

    if (!obj.contains("frame") || !obj["frame"].is_number_integer() ||
        obj["frame"].get<std::int64_t>() < 0) {
      throw ValidationError(line_no, "'frame' must be a non-negative integer");
    }
    const auto frame = static_cast<std::size_t>(obj["frame"].get<std::int64_t>());
    const json& jb = obj.contains("box") ? obj["box"] : json();
    if (!jb.is_array() || jb.size() != 4 ||
        !std::all_of(jb.begin(), jb.end(),
                     [](const json& v) { return v.is_number(); })) {
      throw ValidationError(line_no, "'box' must be an array of 4 numbers");
    }
    const BBox box{jb[0].get<double>(), jb[1].get<double>(),
                   jb[2].get<double>(), jb[3].get<double>()};
    CheckBox(box, track.frame_width, track.frame_height, line_no);

    std::optional<double> depth;
    if (obj.contains("depth") && !obj["depth"].is_null()) {
      if (!obj["depth"].is_number()) {
        throw ValidationError(line_no, "'depth' must be a number");
      }
      depth = obj["depth"].get<double>();
      CheckDepth(*depth, line_no);
    }
    const double t = frame / track.fps;
    if (obj.contains("t")) {
      if (!obj["t"].is_number() ||
          std::abs(obj["t"].get<double>() - t) > kTimeTolerance) {
        throw ValidationError(line_no, "'t' does not equal frame / fps");
      }
    }

    if (!track.frames.empty() && track.frames.back().frame_index == frame) {
      TrackFrame& cur = track.frames.back();
      if (depth && cur.depth && *depth != *cur.depth) {
        throw ValidationError(line_no, "conflicting depth within one frame");
      }
      if (depth) cur.depth = depth;
      cur.boxes.push_back(box);
      continue;
    }
    if (!track.frames.empty() && frame < track.frames.back().frame_index) {
      throw ValidationError(line_no, "frame numbers must not decrease");
    }
    track.frames.push_back(TrackFrame{frame, t, {box}, depth});
  }
  if (!have_header) throw ValidationError(1, "missing header line");
  return track;
}

std::string SerializeTrack(const BBoxTrack& track) {
  std::string out;
  ordered_json header;
  header["frame_width"] = track.frame_width;
  header["frame_height"] = track.frame_height;
  header["fps"] = track.fps;
  out += header.dump() + "\n";
  for (const TrackFrame& f : track.frames) {
    for (const BBox& b : f.boxes) {
      ordered_json line;
      line["frame"] = f.frame_index;
      line["box"] = {b.x_i, b.y_i, b.x_f, b.y_f};
      if (f.depth) line["depth"] = *f.depth;
      out += line.dump() + "\n";
    }
  }
  return out;
}

BBoxTrack LoadTrack(const std::filesystem::path& path) {
  return ParseTrack(ReadFile(path));
}

void SaveTrack(const BBoxTrack& track, const std::filesystem::path& path) {
  ValidateTrack(track);
  WriteFile(path, SerializeTrack(track));
}

double NormalizeX(double x, double frame_width) {
  return 2.0 * x / frame_width - 1.0;
}

double BBoxCenterXNormalized(const BBox& box, double frame_width) {
  return std::clamp((box.x_i + box.x_f) / frame_width - 1.0, -1.0, 1.0);
}

std::optional<double> AlignmentReport::score() const {
  if (no_events()) return std::nullopt;
  return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

AlignmentReport& AlignmentReport::operator+=(const AlignmentReport& other) {
  tp += other.tp;
  fn += other.fn;
  per_event.insert(per_event.end(), other.per_event.begin(),
                   other.per_event.end());
  return *this;
}

std::string SerializeReport(const AlignmentReport& report, int indent) {
  ordered_json j;
  if (auto s = report.score()) {
    j["score"] = *s;
  } else {
    j["score"] = nullptr;
  }
  j["tp"] = report.tp;
  j["fn"] = report.fn;
  j["no_events"] = report.no_events();
  j["per_event"] = ordered_json::array();
  for (const AlignmentEvent& e : report.per_event) {
    ordered_json ev;
    ev["window_index"] = e.window_index;
    ev["direction"] = e.direction;
    ev["matched"] = e.matched;
    j["per_event"].push_back(std::move(ev));
  }
  return j.dump(indent);
}

AlignmentReport ParseReport(std::string_view text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw FormatError("report: not a JSON object");
  }
  try {
    AlignmentReport r;
    r.tp = j.at("tp").get<std::size_t>();
    r.fn = j.at("fn").get<std::size_t>();
    for (const json& ev : j.at("per_event")) {
      r.per_event.push_back({ev.at("window_index").get<std::size_t>(),
                             ev.at("direction").get<double>(),
                             ev.at("matched").get<bool>()});
    }
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("report: ") + e.what());
  }
}

void WriteReport(const AlignmentReport& report,
                 const std::filesystem::path& path) {
  WriteFile(path, SerializeReport(report) + "\n");
}

AlignmentReport ReadReport(const std::filesystem::path& path) {
  return ParseReport(ReadFile(path));
}

}  // namespace spatialav
