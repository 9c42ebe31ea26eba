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

#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "spatialav/audio_io.h"
#include "spatialav/cli.h"
#include "spatialav/embedding_metrics.h"
#include "spatialav/errors.h"
#include "spatialav/spatial_render.h"
#include "test_util.h"

namespace spatialav::cli {
namespace {

constexpr int kRate = 44100;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

// One 100 ms window per entry: 0 = both channels, -1 = left only, and
// silence in between.
StereoBuffer EventAudio(const std::vector<int>& pattern, std::mt19937_64& rng) {
  const std::size_t w = kRate / 10;
  std::vector<float> left(w * pattern.size() * 2), right(left.size());
  for (std::size_t e = 0; e < pattern.size(); ++e) {
    const auto burst = testing::UniformSignal(w, rng, 0.5f);
    for (std::size_t i = 0; i < w; ++i) {
      left[2 * e * w + i] = burst[i];
      right[2 * e * w + i] = pattern[e] == 0 ? burst[i] : 0.0f;
    }
  }
  return StereoBuffer(left, right, kRate);
}

BBoxTrack CenterTrack(double seconds) {
  BBoxTrack t;
  for (std::size_t k = 0; k <= seconds * 30; ++k) {
    t.frames.push_back({k, k / 30.0, {BBox{600, 0, 680, 10}}, std::nullopt});
  }
  return t;
}

TEST_CASE("format number") {
  CHECK(FormatNumber(0.0) == "0.0");
  CHECK(FormatNumber(3.0) == "3.0");
  CHECK(FormatNumber(-2.0) == "-2.0");
  CHECK(FormatNumber(0.5) == "0.5");
  CHECK(std::stod(FormatNumber(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("usage errors exit 2") {
  CHECK(Call({}).code == kExitUsage);
  CHECK(Call({"no-such-command"}).code == kExitUsage);
  CHECK(Call({"el1", "--a", "x.wav"}).code == kExitUsage);
  CHECK(Call({"--help"}).code == kExitOk);
}

TEST_CASE("metrics of identical inputs") {
  testing::TempDir dir("cli_same");
  std::mt19937_64 rng(4);
  const auto sig = testing::UniformSignal(kRate, rng, 0.3f);
  WriteWav(StereoBuffer::FromMono(sig, kRate), dir / "a.wav");
  const Outcome el1 =
      Call({"el1", "--a", (dir / "a.wav").string(), "--b", (dir / "a.wav").string()});
  CHECK(el1.code == kExitOk);
  CHECK(Trim(el1.out) == "0.0");

  WriteWav(StereoBuffer::FromMono(sig, 22050), dir / "slow.wav");
  const Outcome rates = Call({"el1", "--a", (dir / "a.wav").string(), "--b",
                              (dir / "slow.wav").string()});
  CHECK(rates.code == kExitData);
  CHECK(rates.err.find("sample rates differ") != std::string::npos);

  EmbeddingSet::Matrix m(20, 4);
  std::normal_distribution<float> g;
  for (int i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
  SaveEmbeddings(EmbeddingSet(m), dir / "e.emb");
  const Outcome fad = Call({"fad", "--real", (dir / "e.emb").string(), "--gen",
                            (dir / "e.emb").string()});
  CHECK(fad.code == kExitOk);
  CHECK(std::stod(fad.out) < 1e-6);
}

TEST_CASE("error kinds map to exit codes") {
  testing::TempDir dir("cli_err");
  const Outcome missing =
      Call({"el1", "--a", (dir / "nope.wav").string(), "--b", "x.wav"});
  CHECK(missing.code == kExitIo);
  CHECK(missing.err.find("error[io]") != std::string::npos);

  std::ofstream(dir / "bad.wav") << "not a wav";
  const Outcome bad = Call({"envelope", "--audio", (dir / "bad.wav").string()});
  CHECK(bad.code == kExitData);

  std::ofstream(dir / "t.jsonl") << "{\"frame_width\":1280}\n";
  const Outcome vt =
      Call({"--json", "validate-track", "--track", (dir / "t.jsonl").string()});
  CHECK(vt.code == kExitData);
  const auto j = nlohmann::json::parse(vt.err);
  CHECK(j.contains("error"));
}

TEST_CASE("av-align on a rendered clip") {
  testing::TempDir dir("cli_align");
  std::mt19937_64 rng(12);
  const auto src = testing::FootstepSource(3.0, kRate, rng);
  const BBoxTrack track = testing::LateralTrack(3.0, rng);
  SaveTrack(track, dir / "t.jsonl");
  WriteWav(StereoBuffer::FromMono(src, kRate), dir / "src.wav");
  REQUIRE(Call({"render", "--source", (dir / "src.wav").string(), "--track",
                (dir / "t.jsonl").string(), "--out", (dir / "r.wav").string()})
              .code == kExitOk);
  const Outcome a = Call({"av-align", "--audio", (dir / "r.wav").string(),
                          "--track", (dir / "t.jsonl").string(), "--report",
                          (dir / "rep.json").string()});
  REQUIRE(a.code == kExitOk);
  CHECK(std::stod(a.out) >= 0.9);
  const AlignmentReport rep = ReadReport(dir / "rep.json");
  CHECK(rep.tp + rep.fn > 0);
}

TEST_CASE("batch pools true positives across clips") {
  testing::TempDir dir("cli_batch");
  std::mt19937_64 rng(8);
  WriteWav(EventAudio({0, 0, 0, -1}, rng), dir / "a.wav");
  WriteWav(EventAudio({-1, -1}, rng), dir / "b.wav");
  SaveTrack(CenterTrack(1.0), dir / "t.jsonl");
  std::ofstream(dir / "m.jsonl")
      << "{\"audio\":\"a.wav\",\"track\":\"t.jsonl\",\"ref_audio\":\"a.wav\"}\n"
      << "\n"
      << "{\"audio\":\"b.wav\",\"track\":\"t.jsonl\"}\n";

  BatchOptions opts;
  opts.parallelism = 2;
  const BatchResult r = BatchEvaluate(dir / "m.jsonl", opts);
  CHECK(r.tp == 3);
  CHECK(r.fn == 3);
  CHECK(*r.av_align == 0.5);  // not the 0.375 mean of per-clip scores
  CHECK(*r.clips[0].av_align.score() == 0.75);
  CHECK(*r.clips[1].av_align.score() == 0.0);
  CHECK(*r.mean_e_l1 == 0.0);
  CHECK_FALSE(r.fad.has_value());

  const Outcome j = Call({"--json", "-j", "1", "batch", "--manifest",
                          (dir / "m.jsonl").string()});
  CHECK(j.code == kExitOk);
  CHECK(Trim(j.out) == BatchResultJson(r));

  WriteWav(EventAudio({0, -1, -1, -1}, rng), dir / "c.wav");
  std::ofstream(dir / "sym.jsonl")
      << "{\"audio\":\"a.wav\",\"track\":\"t.jsonl\"}\n"
      << "{\"audio\":\"c.wav\",\"track\":\"t.jsonl\"}\n";
  const BatchResult sym = BatchEvaluate(dir / "sym.jsonl", opts);
  CHECK(sym.tp == 4);
  CHECK(sym.fn == 4);
  CHECK(*sym.av_align == 0.5);

  std::ofstream(dir / "empty.jsonl") << "\n";
  CHECK(Call({"batch", "--manifest", (dir / "empty.jsonl").string()}).code ==
        kExitUsage);
  std::ofstream(dir / "gone.jsonl")
      << "{\"audio\":\"a.wav\",\"track\":\"t.jsonl\"}\n"
      << "{\"audio\":\"missing.wav\",\"track\":\"t.jsonl\"}\n";
  const Outcome gone = Call({"batch", "--manifest", (dir / "gone.jsonl").string()});
  CHECK(gone.code == kExitData);
  CHECK(gone.err.find("clip 2") != std::string::npos);
}

TEST_CASE("seeded output is reproducible") {
  const Outcome a = Call({"--seed", "7", "diffusion-demo", "--t", "50"});
  const Outcome b = Call({"--seed", "7", "diffusion-demo", "--t", "50"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(std::stod(a.out) < 1e-3);
}

}  // namespace
}  // namespace spatialav::cli
