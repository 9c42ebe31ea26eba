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
#include "spatialav/spatial_render.h"
#include "test_util.h"

namespace spatialav {
namespace {

BBoxTrack StaticTrack(double x_i, double x_f, std::size_t frames = 31) {
  BBoxTrack t;
  for (std::size_t k = 0; k < frames; ++k) {
    t.frames.push_back({k, k / t.fps, {BBox{x_i, 100, x_f, 600}}, std::nullopt});
  }
  return t;
}

TEST_CASE("constant power gains") {
  const PanGains c = ConstantPowerGains(0.0);
  CHECK(c.left == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(c.right == c.left);
  CHECK(ConstantPowerGains(-1.0).left == 1.0);
  CHECK(ConstantPowerGains(-1.0).right == 0.0);
  CHECK(ConstantPowerGains(1.0).left == 0.0);
  CHECK(ConstantPowerGains(1.0).right == 1.0);
  CHECK(ConstantPowerGains(-7.0).right == 0.0);

  for (double p = -1.0; p <= 1.0; p += 0.01) {
    const PanGains g = ConstantPowerGains(p);
    CHECK(std::abs(g.left * g.left + g.right * g.right - 1.0) < 1e-6);
    const double theta = (p + 1) * std::numbers::pi / 4;
    CHECK(std::abs(g.left - std::cos(theta)) < 1e-12);
    CHECK(std::abs(g.right - std::sin(theta)) < 1e-12);
    const PanGains m = ConstantPowerGains(-p);
    CHECK(m.left == g.right);
    CHECK(m.right == g.left);
  }
}

TEST_CASE("pan curve") {
  const auto centered = PanCurve(StaticTrack(600, 680), 1000, 2000, 0.02);
  for (double v : centered) CHECK(v == 0.0);

  // Box sweeps from the left edge to the right edge over one second.
  BBoxTrack sweep;
  for (std::size_t k = 0; k <= 30; ++k) {
    const double x = 1280.0 * k / 30;
    sweep.frames.push_back({k, k / 30.0, {BBox{x, 0, x, 10}}, std::nullopt});
  }
  const int rate = 3000;
  const auto raw = PanCurve(sweep, rate, 4000, 0.0);
  CHECK(raw.front() == -1.0);
  CHECK(raw.back() == 1.0);  // held after the last frame
  for (std::size_t i = 1; i < raw.size(); ++i) CHECK(raw[i] >= raw[i - 1]);
  // Straight-line oracle in the sweep region.
  for (std::size_t s = 0; s < static_cast<std::size_t>(rate); s += 37) {
    const double oracle = -1.0 + 2.0 * (static_cast<double>(s) / rate);
    CHECK(std::abs(raw[s] - oracle) < 1e-9);
  }
  const auto smooth = PanCurve(sweep, rate, 4000, 0.05);
  for (std::size_t i = 1; i < smooth.size(); ++i) {
    CHECK(smooth[i] >= smooth[i - 1]);
  }
  CHECK(smooth[1500] < raw[1500]);  // lags a rising input

  CHECK_THROWS_AS(PanCurve(BBoxTrack{}, 1000, 10, 0.0), ArgumentError);
  CHECK_THROWS_AS(PanCurve(sweep, 1000, 10, -1.0), ArgumentError);
}

TEST_CASE("pan curve interpolates across gaps and holds before the first frame") {
  BBoxTrack t;
  t.frames.push_back({10, 10 / 30.0, {BBox{0, 0, 0, 0}}, std::nullopt});
  t.frames.push_back({20, 20 / 30.0, {BBox{1280, 0, 1280, 0}}, std::nullopt});
  const auto pan = PanCurve(t, 300, 300, 0.0);
  CHECK(pan[0] == -1.0);
  CHECK(pan[100] == -1.0);
  CHECK(std::abs(pan[150] - 0.0) < 1e-9);
  CHECK(pan[250] == 1.0);
}

TEST_CASE("render stereo simple cases") {
  std::mt19937_64 rng(3);
  const auto src = testing::UniformSignal(4410, rng, 0.8f);
  const StereoBuffer c = RenderStereo(src, StaticTrack(600, 680), {}, 44100);
  for (std::size_t i = 0; i < src.size(); ++i) {
    CHECK(c.left()[i] == c.right()[i]);
    CHECK(std::abs(c.left()[i] - src[i] / std::sqrt(2.0)) < 1e-7);
  }
  const StereoBuffer hard_left = RenderStereo(src, StaticTrack(0, 0), {}, 44100);
  for (std::size_t i = 0; i < src.size(); ++i) {
    CHECK(hard_left.right()[i] == 0.0f);
    CHECK(hard_left.left()[i] == src[i]);
  }
  CHECK_THROWS_AS(RenderStereo(std::vector<float>{}, StaticTrack(0, 0), {}),
                  ArgumentError);
}

TEST_CASE("negated pan renders the channel swap exactly") {
  std::mt19937_64 rng(29);
  const auto src = testing::UniformSignal(5000, rng);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> pan(src.size()), neg(src.size());
  for (std::size_t i = 0; i < pan.size(); ++i) {
    pan[i] = u(rng);
    neg[i] = -pan[i];
  }
  const StereoBuffer a = RenderWithPan(src, pan, {}, 44100);
  const StereoBuffer b = RenderWithPan(src, neg, {}, 44100);
  CHECK(a.Swapped() == b);
}

TEST_CASE("depth attenuation") {
  BBoxTrack t = StaticTrack(600, 680, 4);
  t.frames[0].depth = 1.0;
  t.frames[1].depth = 2.0;
  t.frames[2].depth = 2.0;
  t.frames[3].depth = 4.0;
  const auto none = DepthGainCurve(t, 30, 4, 0.0);
  CHECK(none == std::vector<double>(4, 1.0));
  const auto g = DepthGainCurve(t, 30, 4, 1.0);  // median 2
  CHECK(g[0] == doctest::Approx(2.0));
  CHECK(g[1] == doctest::Approx(1.0));
  CHECK(g[3] == doctest::Approx(0.5));
  CHECK(DepthGainCurve(StaticTrack(0, 1), 30, 4, 1.0) ==
        std::vector<double>(4, 1.0));

  RenderConfig cfg;
  cfg.depth_exponent = 1.0;
  const StereoBuffer loud = RenderStereo(std::vector<float>(4, 0.9f), t, cfg, 30);
  CHECK(loud.left()[0] == 1.0f);  // clipped
}

}  // namespace
}  // namespace spatialav
