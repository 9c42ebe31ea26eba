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
#include <limits>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "spatialav/audio_io.h"
#include "spatialav/cli.h"
#include "spatialav/diffusion.h"
#include "spatialav/embedding_metrics.h"
#include "spatialav/envelope.h"
#include "spatialav/errors.h"
#include "spatialav/spatial_align.h"
#include "spatialav/spatial_render.h"
#include "spatialav/track_io.h"

namespace py = pybind11;
using namespace pybind11::literals;

namespace spatialav {
namespace {

using FloatArray = py::array_t<float, py::array::c_style | py::array::forcecast>;
using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::span<const float> Span1d(const FloatArray& a, const char* name) {
  if (a.ndim() != 1) {
    throw ArgumentError(std::string(name) + " must be one-dimensional");
  }
  return {a.data(), static_cast<std::size_t>(a.shape(0))};
}

template <typename T>
py::array_t<T> ToArray(std::span<const T> v) {
  py::array_t<T> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

// (2, L) float32 array -> StereoBuffer. A 1-D array is treated as mono.
StereoBuffer ToStereo(const FloatArray& a, int sample_rate) {
  if (a.ndim() == 1) return StereoBuffer::FromMono(Span1d(a, "audio"), sample_rate);
  if (a.ndim() != 2 || a.shape(0) != 2) {
    throw ArgumentError("audio must have shape (2, L) or (L,)");
  }
  const auto n = static_cast<std::size_t>(a.shape(1));
  const float* p = a.data();
  return StereoBuffer(std::vector<float>(p, p + n),
                      std::vector<float>(p + n, p + 2 * n), sample_rate);
}

py::array_t<float> FromStereo(const StereoBuffer& buf) {
  const auto n = static_cast<py::ssize_t>(buf.frames());
  py::array_t<float> out({py::ssize_t{2}, n});
  auto w = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < n; ++i) {
    w(0, i) = buf.left()[i];
    w(1, i) = buf.right()[i];
  }
  return out;
}

EmbeddingSet ToEmbeddings(const FloatArray& a) {
  if (a.ndim() != 2) throw ArgumentError("embeddings must have shape (N, D)");
  EmbeddingSet::Matrix m(a.shape(0), a.shape(1));
  std::copy(a.data(), a.data() + a.size(), m.data());
  return EmbeddingSet(std::move(m));
}

Envelope EnvelopeFromArray(const FloatArray& a, std::size_t window,
                           std::size_t hop) {
  Envelope env;
  const auto s = Span1d(a, "envelope");
  env.frames.assign(s.begin(), s.end());
  env.window = window;
  env.hop = hop;
  return env;
}

py::dict ReportDict(const AlignmentReport& r) {
  py::list events;
  for (const AlignmentEvent& e : r.per_event) {
    events.append(py::dict("window_index"_a = e.window_index,
                           "direction"_a = e.direction, "matched"_a = e.matched));
  }
  py::object score = py::none();
  if (r.score()) score = py::float_(*r.score());
  return py::dict("score"_a = score, "tp"_a = r.tp, "fn"_a = r.fn,
                  "no_events"_a = r.no_events(), "per_event"_a = events);
}

}  // namespace
}  // namespace spatialav

PYBIND11_MODULE(_core, m) {
  using namespace spatialav;
  m.doc() = "Native core of spatialav.";

  auto data_error = py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", data_error.ptr());
  py::register_exception<FormatError>(m, "FormatError", data_error.ptr());
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<ContractError>(m, "ContractError", PyExc_RuntimeError);
  py::register_exception<cli::UsageError>(m, "UsageError", PyExc_ValueError);

  // Audio.
  m.def("read_wav", [](const std::filesystem::path& path) {
    const StereoBuffer buf = ReadWav(path);
    return py::make_tuple(FromStereo(buf), buf.sample_rate());
  }, "path"_a, "Returns (audio of shape (2, L), sample_rate).");
  m.def("write_wav", [](const std::filesystem::path& path, const FloatArray& audio,
                        int sample_rate, const std::string& format) {
    if (format != "pcm16" && format != "float32") {
      throw ArgumentError("format must be 'pcm16' or 'float32'");
    }
    WriteWav(ToStereo(audio, sample_rate), path,
             format == "pcm16" ? WavFormat::kPcm16 : WavFormat::kFloat32);
  }, "path"_a, "audio"_a, "sample_rate"_a = kDefaultSampleRate,
        "format"_a = "pcm16");

  // Envelope.
  m.def("rms_envelope", [](const FloatArray& signal, std::size_t window,
                           std::size_t hop) {
    const Envelope env = RmsEnvelope(Span1d(signal, "signal"), window, hop);
    return ToArray<float>(env.frames);
  }, "signal"_a, "window"_a = kEnvelopeWindow, "hop"_a = kEnvelopeHop);
  m.def("interpolate_envelope", [](const FloatArray& env, std::size_t target_len,
                                   std::size_t channels) {
    const auto rows = InterpolateEnvelope(EnvelopeFromArray(env, 1, 1),
                                          target_len, channels);
    py::array_t<float> out({static_cast<py::ssize_t>(channels),
                            static_cast<py::ssize_t>(target_len)});
    float* p = out.mutable_data();
    for (const auto& r : rows) p = std::copy(r.begin(), r.end(), p);
    return out;
  }, "envelope"_a, "target_len"_a, "channels"_a = 2);
  m.def("e_l1", [](const FloatArray& a, const FloatArray& b, bool align) {
    const Envelope ea = EnvelopeFromArray(a, kEnvelopeWindow, kEnvelopeHop);
    const Envelope eb = EnvelopeFromArray(b, kEnvelopeWindow, kEnvelopeHop);
    return align ? AlignedEnvelopeL1(ea, eb) : EnvelopeL1(ea, eb);
  }, "a"_a, "b"_a, "align"_a = false,
        "Mean absolute difference of two envelopes. align=True stretches the "
        "shorter one first.");

  // Embeddings.
  m.def("frechet_distance", [](const FloatArray& a, const FloatArray& b) {
    return FrechetDistance(ToEmbeddings(a), ToEmbeddings(b));
  }, "a"_a, "b"_a);
  m.def("load_embeddings", [](const std::filesystem::path& path) {
    const EmbeddingSet set = LoadEmbeddings(path);
    py::array_t<float> out({static_cast<py::ssize_t>(set.n()),
                            static_cast<py::ssize_t>(set.d())});
    std::copy(set.data().data(), set.data().data() + set.data().size(),
              out.mutable_data());
    return out;
  }, "path"_a);
  m.def("save_embeddings", [](const std::filesystem::path& path,
                              const FloatArray& a) {
    SaveEmbeddings(ToEmbeddings(a), path);
  }, "path"_a, "embeddings"_a);

  // Tracks.
  py::class_<BBoxTrack>(m, "Track")
      .def_readonly("frame_width", &BBoxTrack::frame_width)
      .def_readonly("frame_height", &BBoxTrack::frame_height)
      .def_readonly("fps", &BBoxTrack::fps)
      .def_property_readonly("num_frames", [](const BBoxTrack& t) { return t.frames.size(); })
      .def_property_readonly("gap_count", &BBoxTrack::GapCount)
      .def("to_jsonl", &SerializeTrack)
      .def("__len__", [](const BBoxTrack& t) { return t.frames.size(); });
  m.def("parse_track", [](const std::string& text) { return ParseTrack(text); },
        "text"_a);
  m.def("load_track", &LoadTrack, "path"_a);

  // Rendering and alignment.
  m.def("render_stereo", [](const FloatArray& source, const BBoxTrack& track,
                            int sample_rate, double depth_exponent,
                            double smoothing) {
    const RenderConfig cfg{depth_exponent, smoothing};
    return FromStereo(RenderStereo(Span1d(source, "source"), track, cfg, sample_rate));
  }, "source"_a, "track"_a, "sample_rate"_a = kDefaultSampleRate,
        "depth_exponent"_a = 0.0, "smoothing"_a = 0.020);
  m.def("localize", [](const FloatArray& audio, int sample_rate, double window_len,
                       double threshold_db) {
    const DirectionTrack d =
        Localize(ToStereo(audio, sample_rate), window_len, threshold_db);
    py::array_t<bool> active(static_cast<py::ssize_t>(d.windows.size()));
    py::array_t<double> direction(static_cast<py::ssize_t>(d.windows.size()));
    for (std::size_t i = 0; i < d.windows.size(); ++i) {
      active.mutable_at(i) = d.windows[i].active;
      direction.mutable_at(i) = d.windows[i].direction.value_or(
          std::numeric_limits<double>::quiet_NaN());
    }
    return py::make_tuple(active, direction);
  }, "audio"_a, "sample_rate"_a = kDefaultSampleRate, "window_len"_a = 0.1,
        "threshold_db"_a = -40.0,
        "Returns (active, direction); direction is NaN for inactive windows.");
  m.def("spatial_av_align", [](const FloatArray& audio, const BBoxTrack& track,
                               int sample_rate, double tolerance, double eval_fps,
                               double window_len, double threshold_db) {
    const DirectionTrack d =
        Localize(ToStereo(audio, sample_rate), window_len, threshold_db);
    return ReportDict(SpatialAvAlign(d, track, {eval_fps, tolerance}));
  }, "audio"_a, "track"_a, "sample_rate"_a = kDefaultSampleRate,
        "tolerance"_a = 0.15, "eval_fps"_a = 4.0, "window_len"_a = 0.1,
        "threshold_db"_a = -40.0);

  // Diffusion.
  m.def("noise_schedule", [](const std::string& kind, int steps) {
    if (kind != "linear" && kind != "cosine") {
      throw ArgumentError("kind must be 'linear' or 'cosine'");
    }
    const auto s = diffusion::MakeSchedule(
        kind == "linear" ? diffusion::ScheduleKind::kLinearBeta
                         : diffusion::ScheduleKind::kCosine,
        steps);
    return py::make_tuple(ToArray<double>(s.alphas()), ToArray<double>(s.alpha_bars()));
  }, "kind"_a = "linear", "steps"_a = 1000, "Returns (alphas, alpha_bars).");
  m.def("oracle_round_trip", [](int steps, std::size_t dim, std::uint64_t seed,
                                const std::string& kind) {
    diffusion::Rng rng(seed);
    const auto s = diffusion::MakeSchedule(
        kind == "cosine" ? diffusion::ScheduleKind::kCosine
                         : diffusion::ScheduleKind::kLinearBeta,
        steps);
    return diffusion::OracleRoundTrip(s, dim, rng).max_abs_error;
  }, "steps"_a = 50, "dim"_a = 16, "seed"_a = 0, "kind"_a = "linear",
        "Max |z0 error| of forward-then-reverse with replayed noise.");

  m.def("_batch_evaluate_json", [](const std::filesystem::path& manifest,
                                   double tolerance, double threshold_db,
                                   unsigned parallelism) {
    cli::BatchOptions opts;
    opts.align.tolerance = tolerance;
    opts.threshold_db = threshold_db;
    opts.parallelism = parallelism;
    py::gil_scoped_release release;
    return cli::BatchResultJson(cli::BatchEvaluate(manifest, opts));
  }, "manifest"_a, "tolerance"_a = 0.15, "threshold_db"_a = -40.0,
        "parallelism"_a = 0);
}
