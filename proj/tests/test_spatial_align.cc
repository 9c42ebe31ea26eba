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

#include <cmath>
#include <random>

#include "doctest.h"
#include "spatialav/errors.h"
#include "spatialav/spatial_align.h"
#include "spatialav/spatial_render.h"
#include "test_util.h"

namespace spatialav {
namespace {

constexpr int kRate = 44100;

DirectionTrack Windows(std::vector<std::optional<double>> dirs,
                       double window_len = 0.1) {
  DirectionTrack d;
  d.window_len = window_len;
  d.window_samples = static_cast<std::size_t>(window_len * kRate);
  for (const auto& v : dirs) {
    d.windows.push_back({v.has_value(), v, v ? 0.5 : 0.0});
  }
  return d;
}

// Box centered on `pan`, 80 px wide, every frame of a 30 fps track.
BBoxTrack PannedTrack(double pan, double seconds) {
  BBoxTrack t;
  const double cx = (pan + 1) * 640;
  for (std::size_t k = 0; k <= seconds * 30; ++k) {
    t.frames.push_back(
        {k, k / 30.0, {BBox{std::max(0.0, cx - 40), 0, std::min(1280.0, cx + 40), 10}},
         std::nullopt});
  }
  return t;
}

TEST_CASE("detect events") {
  const StereoBuffer silence{std::vector<float>(kRate), std::vector<float>(kRate),
                             kRate};
  const DirectionTrack s = DetectEvents(silence);
  CHECK(s.windows.size() == 10);
  for (const auto& w : s.windows) CHECK_FALSE(w.active);

  // Full-scale noise in window 3 only.
  std::mt19937_64 rng(7);
  std::vector<float> x(kRate, 0.0f);
  const auto burst = testing::UniformSignal(4410, rng);
  std::copy(burst.begin(), burst.end(), x.begin() + 3 * 4410);
  const DirectionTrack b = DetectEvents(StereoBuffer::FromMono(x, kRate));
  for (std::size_t w = 0; w < b.windows.size(); ++w) {
    double acc = 0;
    for (std::size_t i = w * 4410; i < (w + 1) * 4410; ++i) acc += x[i] * x[i];
    const double rms_db = 10 * std::log10(acc / 4410 + 1e-300);
    CHECK(b.windows[w].active == (rms_db > -40.0));
    CHECK(b.windows[w].active == (w == 3));
  }

  // -20 dBFS tone.
  const auto tone = testing::Sine(kRate / 2, 440, kRate, std::pow(10, -1.0));
  const DirectionTrack t = DetectEvents(StereoBuffer::FromMono(tone, kRate));
  CHECK(t.windows.size() == 5);
  for (const auto& w : t.windows) CHECK(w.active);

  // Trailing partial window.
  const DirectionTrack p =
      DetectEvents(StereoBuffer::FromMono(std::vector<float>(4411, 0.5f), kRate));
  CHECK(p.windows.size() == 2);
  CHECK(p.windows[1].active);
}

TEST_CASE("estimate direction") {
  std::mt19937_64 rng(1);
  const auto src = testing::UniformSignal(kRate / 2, rng, 0.5f);
  const StereoBuffer same = StereoBuffer::FromMono(src, kRate);
  for (const auto& w : Localize(same).windows) {
    REQUIRE(w.direction.has_value());
    CHECK(*w.direction == 0.0);
  }
  const StereoBuffer left_only(src, std::vector<float>(src.size()), kRate);
  for (const auto& w : Localize(left_only).windows) {
    CHECK(*w.direction == -1.0);
  }
  const auto forward = Localize(left_only);
  const auto mirrored = Localize(left_only.Swapped());
  for (std::size_t i = 0; i < forward.windows.size(); ++i) {
    CHECK(*mirrored.windows[i].direction == -*forward.windows[i].direction);
  }
}

TEST_CASE("active window without channel energy is demoted") {
  DirectionTrack d = Windows({0.0});
  const StereoBuffer silent(std::vector<float>(4410), std::vector<float>(4410),
                            kRate);
  const DirectionTrack e = EstimateDirection(silent, d);
  CHECK_FALSE(e.windows[0].active);
  CHECK_FALSE(e.windows[0].direction.has_value());
}

TEST_CASE("direction is monotone in rendered pan") {
  std::mt19937_64 rng(2);
  const auto src = testing::UniformSignal(4410, rng, 0.5f);
  double prev = -2.0;
  for (int i = 0; i <= 20; ++i) {
    const double p = -1.0 + 0.1 * i;
    const std::vector<double> pan(src.size(), p);
    const auto dir = Localize(RenderWithPan(src, pan, {}, kRate));
    const double d = *dir.windows[0].direction;
    CHECK(d > prev);
    // Constant-power panning gives (sin - cos) / (sin + cos) = tan(p pi / 4).
    CHECK(std::abs(d - std::tan(p * std::numbers::pi / 4)) < 1e-6);
    prev = d;
  }
  const std::vector<double> half(src.size(), 0.5);
  CHECK(*Localize(RenderWithPan(src, half, {}, kRate)).windows[0].direction > 0);
}

TEST_CASE("nearest evaluation frame") {
  CHECK(NearestEvalFrame(0.05, 4) == 0);
  CHECK(NearestEvalFrame(0.125, 4) == 0);  // tie -> earlier
  CHECK(NearestEvalFrame(0.126, 4) == 1);
  CHECK(NearestEvalFrame(0.375, 4) == 1);
  BBoxTrack t = PannedTrack(0.0, 1.0);
  // k=1 -> t=0.25 -> source frame 7.5 -> tie -> 7.
  t.frames.erase(t.frames.begin() + 7);
  CHECK(BoxesAtEvalFrame(t, 1, 4).empty());
  CHECK(BoxesAtEvalFrame(t, 2, 4).size() == 1);
  CHECK(BoxesAtEvalFrame(t, -1, 4).empty());
  CHECK(BoxesAtEvalFrame(t, 100, 4).empty());
}

TEST_CASE("alignment score formula") {
  const BBoxTrack center = PannedTrack(0.0, 1.0);
  const AlignmentReport all = SpatialAvAlign(Windows({0.0, 0.05, -0.1, 0.0}), center);
  CHECK(all.tp == 4);
  CHECK(*all.score() == 1.0);

  const AlignmentReport half =
      SpatialAvAlign(Windows({0.0, 0.9, std::nullopt, -0.8, 0.1}), center);
  CHECK(half.tp == 2);
  CHECK(half.fn == 2);
  CHECK(*half.score() == 0.5);
  REQUIRE(half.per_event.size() == 4);
  CHECK(half.per_event[2].window_index == 3);
  CHECK_FALSE(half.per_event[2].matched);

  const AlignmentReport none = SpatialAvAlign(Windows({0.0, 0.0}), BBoxTrack{});
  CHECK(none.no_events());
  CHECK_FALSE(none.score().has_value());

  DirectionTrack unestimated = Windows({0.0});
  unestimated.windows[0].direction.reset();
  CHECK_THROWS_AS(SpatialAvAlign(unestimated, center), ArgumentError);
  CHECK_THROWS_AS(SpatialAvAlign(Windows({0.0}), center, {0.0, 0.15}),
                  ArgumentError);
}

TEST_CASE("adjacent evaluation frames count") {
  // Box on the far left for t < 0.5 s, far right afterwards. Window 5
  // (center 0.55 s) sits at eval frame 2 (0.5 s), whose left neighbour still
  // shows the left box.
  BBoxTrack t;
  for (std::size_t k = 0; k < 30; ++k) {
    const double x = k < 15 ? 0 : 1200;
    t.frames.push_back({k, k / 30.0, {BBox{x, 0, x + 80, 10}}, std::nullopt});
  }
  std::vector<std::optional<double>> dirs(10);
  dirs[5] = -0.9;
  CHECK(SpatialAvAlign(Windows(dirs), t).tp == 1);
  dirs[5].reset();
  dirs[9] = -0.9;  // 0.95 s -> eval frame 4, neighbours 3..5 all right side
  CHECK(SpatialAvAlign(Windows(dirs), t).fn == 1);
}

TEST_CASE("score is monotone in tolerance") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const BBoxTrack t = testing::LateralTrack(2.0, rng);
    std::vector<std::optional<double>> dirs(20);
    for (auto& d : dirs) d = u(rng);
    double prev = -1;
    for (double tol = 0; tol <= 1.0; tol += 0.05) {
      const double s = *SpatialAvAlign(Windows(dirs), t, {4.0, tol}).score();
      CHECK(s >= prev);
      CHECK(s >= 0.0);
      CHECK(s <= 1.0);
      prev = s;
    }
  }
}

TEST_CASE("render round trip, mirroring and deletion") {
  std::mt19937_64 rng(77);
  const double seconds = 3.0;
  const auto src = testing::FootstepSource(seconds, kRate, rng);

  const BBoxTrack left = testing::SideTrack(seconds, 120, 260);
  const StereoBuffer rendered = RenderStereo(src, left, {}, kRate);
  const DirectionTrack dir = Localize(rendered);
  const AlignmentReport original = SpatialAvAlign(dir, left);
  REQUIRE(original.tp > 0);
  CHECK(*original.score() >= 0.9);
  const double mirrored = *SpatialAvAlign(Localize(rendered.Swapped()), left).score();
  CHECK(mirrored < *original.score());
  CHECK(mirrored <= 0.5);

  // Remove every box within reach of the first matched window.
  const AlignmentEvent first = original.per_event.front();
  REQUIRE(first.matched);
  const double tc = dir.WindowCenter(first.window_index);
  BBoxTrack holed = left;
  std::erase_if(holed.frames, [&](const TrackFrame& f) {
    return std::abs(f.t - tc) <= 0.5;
  });
  const AlignmentReport after = SpatialAvAlign(dir, holed);
  CHECK(after.tp < original.tp);
  CHECK(*after.score() < *original.score());
}

TEST_CASE("shuffled track keeps frame indices") {
  std::mt19937_64 rng(3);
  const BBoxTrack t = testing::LateralTrack(2.0, rng);
  std::mt19937_64 a(9), b(9);
  const BBoxTrack s1 = ShuffledTrack(t, a);
  const BBoxTrack s2 = ShuffledTrack(t, b);
  CHECK(s1 == s2);
  REQUIRE(s1.frames.size() == t.frames.size());
  for (std::size_t i = 0; i < t.frames.size(); ++i) {
    CHECK(s1.frames[i].frame_index == t.frames[i].frame_index);
  }
  CHECK_FALSE(s1 == t);
}

}  // namespace
}  // namespace spatialav
