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

#include "spatialav/cli.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "spatialav/audio_io.h"
#include "spatialav/diffusion.h"
#include "spatialav/embedding_metrics.h"
#include "spatialav/envelope.h"
#include "spatialav/errors.h"
#include "spatialav/spatial_render.h"

namespace spatialav::cli {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

unsigned ResolveParallelism(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

ordered_json NullableNumber(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::string NullableText(const std::optional<double>& v) {
  return v ? FormatNumber(*v) : "null";
}

// Envelope frames are only comparable at a common sample rate.
void RequireSameRate(const StereoBuffer& a, const StereoBuffer& b) {
  if (a.sample_rate() != b.sample_rate()) {
    throw DataError(fmt::format("sample rates differ ({} vs {} Hz)",
                                a.sample_rate(), b.sample_rate()));
  }
}

// Runs `work(i)` for i in [0, n) on up to `threads` workers. The exception
// of the lowest failing index is rethrown after all workers join.
template <typename Work>
void ParallelFor(std::size_t n, unsigned threads, Work work) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        work(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned count = std::min<std::size_t>(std::max(1u, threads), n);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::optional<EmbeddingSet> Pool(const std::vector<const EmbeddingSet*>& sets) {
  std::optional<EmbeddingSet> pooled;
  for (const EmbeddingSet* s : sets) {
    pooled = pooled ? pooled->Concatenated(*s) : *s;
  }
  return pooled;
}

}  // namespace

std::string FormatNumber(double v) {
  std::string s = fmt::format("{}", v);
  if (s.find_first_not_of("-0123456789") == std::string::npos) s += ".0";
  return s;
}

std::vector<ClipSpec> ParseManifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  const std::filesystem::path base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };

  std::vector<ClipSpec> clips;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded() || !obj.is_object()) {
      throw ValidationError(line_no, "manifest line is not a JSON object");
    }
    auto required = [&](const char* key) {
      if (!obj.contains(key) || !obj[key].is_string()) {
        throw ValidationError(line_no, std::string("manifest entry needs '") +
                                           key + "'");
      }
      return resolve(obj[key].get<std::string>());
    };
    auto optional = [&](const char* key)
        -> std::optional<std::filesystem::path> {
      if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
      if (!obj[key].is_string()) {
        throw ValidationError(line_no, std::string("'") + key +
                                           "' must be a path string");
      }
      return resolve(obj[key].get<std::string>());
    };
    ClipSpec clip;
    clip.audio = required("audio");
    clip.track = required("track");
    clip.ref_audio = optional("ref_audio");
    clip.emb_real = optional("emb_real");
    clip.emb_gen = optional("emb_gen");
    clip.emb_video = optional("emb_video");
    clips.push_back(std::move(clip));
  }
  return clips;
}

BatchResult BatchEvaluate(const std::vector<ClipSpec>& clips,
                          const BatchOptions& opts) {
  if (clips.empty()) throw UsageError("manifest lists no clips");

  struct Loaded {
    std::optional<EmbeddingSet> real, gen, video;
  };
  BatchResult result;
  result.clips.resize(clips.size());
  std::vector<Loaded> loaded(clips.size());

  ParallelFor(clips.size(), ResolveParallelism(opts.parallelism),
              [&](std::size_t i) {
    const ClipSpec& spec = clips[i];
    const std::string label =
        "clip " + std::to_string(i + 1) + " (" + spec.audio.string() + ")";
    auto require_file = [&](const std::filesystem::path& p) {
      if (!std::filesystem::is_regular_file(p)) {
        throw DataError(label + ": missing file " + p.string());
      }
    };
    require_file(spec.audio);
    require_file(spec.track);
    for (const auto* p : {&spec.ref_audio, &spec.emb_real, &spec.emb_gen,
                          &spec.emb_video}) {
      if (*p) require_file(**p);
    }
    try {
      ClipResult& clip = result.clips[i];
      clip.spec = spec;
      const StereoBuffer audio = ReadWav(spec.audio);
      const BBoxTrack track = LoadTrack(spec.track);
      clip.av_align = SpatialAvAlign(
          Localize(audio, opts.window_len, opts.threshold_db), track,
          opts.align);
      if (spec.ref_audio) {
        const StereoBuffer ref_audio = ReadWav(*spec.ref_audio);
        RequireSameRate(ref_audio, audio);
        const Envelope gen = RmsEnvelope(ToMono(audio));
        const Envelope ref = RmsEnvelope(ToMono(ref_audio));
        clip.e_l1 = AlignedEnvelopeL1(ref, gen);
      }
      if (spec.emb_real) loaded[i].real = LoadEmbeddings(*spec.emb_real);
      if (spec.emb_gen) loaded[i].gen = LoadEmbeddings(*spec.emb_gen);
      if (spec.emb_video) loaded[i].video = LoadEmbeddings(*spec.emb_video);
    } catch (const std::exception& e) {
      throw DataError(label + ": " + e.what());
    }
  });

  // Ordered reduce.
  double el1_sum = 0.0;
  std::size_t el1_count = 0;
  std::vector<const EmbeddingSet*> real, gen, video;
  for (std::size_t i = 0; i < clips.size(); ++i) {
    const ClipResult& clip = result.clips[i];
    result.tp += clip.av_align.tp;
    result.fn += clip.av_align.fn;
    if (clip.e_l1) {
      el1_sum += *clip.e_l1;
      ++el1_count;
    }
    if (loaded[i].real) real.push_back(&*loaded[i].real);
    if (loaded[i].gen) gen.push_back(&*loaded[i].gen);
    if (loaded[i].video) video.push_back(&*loaded[i].video);
  }
  if (result.tp + result.fn > 0) {
    result.av_align = static_cast<double>(result.tp) /
                      static_cast<double>(result.tp + result.fn);
  }
  if (el1_count > 0) result.mean_e_l1 = el1_sum / el1_count;
  const auto pooled_gen = Pool(gen);
  if (pooled_gen) {
    if (const auto pooled_real = Pool(real)) {
      result.fad = FrechetDistance(*pooled_real, *pooled_gen);
    }
    if (const auto pooled_video = Pool(video)) {
      result.favd = FrechetDistance(*pooled_video, *pooled_gen);
    }
  }
  return result;
}

BatchResult BatchEvaluate(const std::filesystem::path& manifest,
                          const BatchOptions& opts) {
  return BatchEvaluate(ParseManifest(manifest), opts);
}

std::string BatchResultJson(const BatchResult& result) {
  ordered_json j;
  j["clips"] = ordered_json::array();
  for (const ClipResult& c : result.clips) {
    ordered_json clip;
    clip["audio"] = c.spec.audio.string();
    clip["track"] = c.spec.track.string();
    clip["av_align"] = NullableNumber(c.av_align.score());
    clip["tp"] = c.av_align.tp;
    clip["fn"] = c.av_align.fn;
    clip["e_l1"] = NullableNumber(c.e_l1);
    j["clips"].push_back(std::move(clip));
  }
  ordered_json agg;
  agg["av_align"] = NullableNumber(result.av_align);
  agg["tp"] = result.tp;
  agg["fn"] = result.fn;
  agg["no_events"] = result.tp + result.fn == 0;
  agg["mean_e_l1"] = NullableNumber(result.mean_e_l1);
  agg["fad"] = NullableNumber(result.fad);
  agg["favd"] = NullableNumber(result.favd);
  j["aggregate"] = std::move(agg);
  return j.dump(2);
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Spatial audio-visual alignment, envelope and embedding "
               "metrics for stereo audio.",
               "spatialav"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalConfig cfg;
  app.add_option("--seed", cfg.seed, "Seed for every random draw")
      ->capture_default_str();
  app.add_flag("--json", cfg.json_output, "Machine-readable output");
  app.add_option("-j,--parallelism", cfg.parallelism,
                 "Worker threads for batch work (0 = auto)")
      ->capture_default_str();

  // envelope
  std::string env_audio, env_out;
  std::size_t window = kEnvelopeWindow, hop = kEnvelopeHop;
  bool env_binary = false;
  auto* envelope = app.add_subcommand("envelope", "RMS envelope of a WAV file");
  envelope->add_option("--audio", env_audio, "Input WAV")->required();
  envelope->add_option("--window", window, "Window length in samples")
      ->check(CLI::PositiveNumber)->capture_default_str();
  envelope->add_option("--hop", hop, "Hop in samples")
      ->check(CLI::PositiveNumber)->capture_default_str();
  envelope->add_flag("--binary", env_binary,
                     "Raw little-endian f32 frames instead of CSV");
  envelope->add_option("--out", env_out, "Output file (default stdout)");

  // el1
  std::string el1_a, el1_b;
  auto* el1 = app.add_subcommand("el1", "Envelope L1 distance of two WAVs");
  el1->add_option("--a", el1_a, "Reference WAV")->required();
  el1->add_option("--b", el1_b, "Generated WAV")->required();
  el1->add_option("--window", window)->check(CLI::PositiveNumber);
  el1->add_option("--hop", hop)->check(CLI::PositiveNumber);

  // fad / favd
  std::string fad_real, fad_gen, favd_video, favd_audio;
  auto* fad = app.add_subcommand(
      "fad", "Frechet distance between real and generated audio embeddings");
  fad->add_option("--real", fad_real, "EMB1 file")->required();
  fad->add_option("--gen", fad_gen, "EMB1 file")->required();
  auto* favd = app.add_subcommand(
      "favd", "Frechet distance between video and audio embeddings");
  favd->add_option("--video", favd_video, "EMB1 file")->required();
  favd->add_option("--audio", favd_audio, "EMB1 file")->required();

  // av-align / localize
  std::string aa_audio, aa_track, aa_report;
  double tolerance = 0.15, threshold_db = -40.0, window_ms = 100.0,
         eval_fps = 4.0;
  bool shuffle_baseline = false;
  auto* av_align = app.add_subcommand(
      "av-align", "Spatial audio-visual alignment of a stereo WAV and track");
  av_align->add_option("--audio", aa_audio, "Stereo WAV")->required();
  av_align->add_option("--track", aa_track, "JSONL bbox track")->required();
  av_align->add_option("--tolerance", tolerance,
                       "Span widening on each side, normalized units")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  av_align->add_option("--threshold-db", threshold_db,
                       "Event threshold, dB re full scale")
      ->capture_default_str();
  av_align->add_option("--window-ms", window_ms, "Audio window length")
      ->check(CLI::PositiveNumber)->capture_default_str();
  av_align->add_option("--eval-fps", eval_fps, "Video evaluation frame rate")
      ->check(CLI::PositiveNumber)->capture_default_str();
  av_align->add_option("--report", aa_report, "Write the JSON report here");
  av_align->add_flag("--shuffle-baseline", shuffle_baseline,
                     "Also score against a time-shuffled track (uses --seed)");

  std::string loc_audio;
  auto* localize = app.add_subcommand(
      "localize", "Per-window event detection and ILD direction");
  localize->add_option("--audio", loc_audio, "Stereo WAV")->required();
  localize->add_option("--threshold-db", threshold_db)->capture_default_str();
  localize->add_option("--window-ms", window_ms)
      ->check(CLI::PositiveNumber)->capture_default_str();

  // render
  std::string r_source, r_track, r_out, r_format = "pcm16";
  double depth_exponent = 0.0, smoothing_ms = 20.0;
  auto* render = app.add_subcommand(
      "render", "Pan a mono source along a bbox track");
  render->add_option("--source", r_source, "Source WAV (mixed to mono)")
      ->required();
  render->add_option("--track", r_track, "JSONL bbox track")->required();
  render->add_option("--out", r_out, "Output stereo WAV")->required();
  render->add_option("--depth-exponent", depth_exponent)
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  render->add_option("--smoothing-ms", smoothing_ms)
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  render->add_option("--format", r_format)
      ->check(CLI::IsMember({"pcm16", "float32"}))->capture_default_str();

  // diffusion-demo
  int demo_steps = 50;
  std::size_t demo_dim = 16;
  std::string demo_schedule = "linear";
  auto* demo = app.add_subcommand(
      "diffusion-demo",
      "Forward/reverse oracle round trip; prints max reconstruction error");
  demo->add_option("--t", demo_steps, "Diffusion steps")
      ->check(CLI::PositiveNumber)->capture_default_str();
  demo->add_option("--dim", demo_dim, "Latent dimension")
      ->check(CLI::PositiveNumber)->capture_default_str();
  demo->add_option("--schedule", demo_schedule)
      ->check(CLI::IsMember({"linear", "cosine"}))->capture_default_str();

  // validate-track
  std::string vt_track;
  auto* validate = app.add_subcommand("validate-track",
                                      "Check a JSONL bbox track");
  validate->add_option("--track", vt_track)->required();

  // batch
  std::string manifest, batch_report;
  auto* batch = app.add_subcommand(
      "batch", "Evaluate every clip of a JSONL manifest and pool metrics");
  batch->add_option("--manifest", manifest)->required();
  batch->add_option("--report", batch_report, "Write aggregate JSON here");
  batch->add_option("--tolerance", tolerance)
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  batch->add_option("--threshold-db", threshold_db)->capture_default_str();

  auto fail = [&](const char* kind, const std::string& msg, int code) {
    if (cfg.json_output) {
      ordered_json j;
      j["error"] = kind;
      j["message"] = msg;
      err << j.dump() << "\n";
    } else {
      err << "error[" << kind << "]: " << msg << "\n";
    }
    return code;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), kExitUsage);
  }

  try {
    if (envelope->parsed()) {
      const Envelope env = RmsEnvelope(ToMono(ReadWav(env_audio)), window, hop);
      std::ofstream file;
      std::ostream* sink = &out;
      if (!env_out.empty()) {
        file.open(env_out, std::ios::binary | std::ios::trunc);
        if (!file) throw IoError("cannot open for writing: " + env_out);
        sink = &file;
      }
      if (env_binary) {
        for (float v : env.frames) {
          const auto bits = std::bit_cast<std::uint32_t>(v);
          const char bytes[4] = {static_cast<char>(bits & 0xff),
                                 static_cast<char>((bits >> 8) & 0xff),
                                 static_cast<char>((bits >> 16) & 0xff),
                                 static_cast<char>((bits >> 24) & 0xff)};
          sink->write(bytes, 4);
        }
      } else if (cfg.json_output) {
        ordered_json j;
        j["window"] = env.window;
        j["hop"] = env.hop;
        j["source_len"] = env.source_len;
        j["frames"] = env.frames;
        *sink << j.dump() << "\n";
      } else {
        *sink << "frame_index,value\n";
        for (std::size_t i = 0; i < env.frames.size(); ++i) {
          *sink << i << "," << FormatNumber(env.frames[i]) << "\n";
        }
      }
      if (file.is_open() && !file) throw IoError("write failed: " + env_out);
    } else if (el1->parsed()) {
      const StereoBuffer a = ReadWav(el1_a);
      const StereoBuffer b = ReadWav(el1_b);
      RequireSameRate(a, b);
      const double v = AlignedEnvelopeL1(RmsEnvelope(ToMono(a), window, hop),
                                         RmsEnvelope(ToMono(b), window, hop));
      if (cfg.json_output) {
        ordered_json j;
        j["metric"] = "e_l1";
        j["value"] = v;
        out << j.dump() << "\n";
      } else {
        out << FormatNumber(v) << "\n";
      }
    } else if (fad->parsed() || favd->parsed()) {
      const bool is_fad = fad->parsed();
      const EmbeddingSet a = LoadEmbeddings(is_fad ? fad_real : favd_video);
      const EmbeddingSet b = LoadEmbeddings(is_fad ? fad_gen : favd_audio);
      const double v = FrechetDistance(a, b);
      if (cfg.json_output) {
        ordered_json j;
        j["metric"] = is_fad ? "fad" : "favd";
        j["value"] = v;
        j["n_a"] = a.n();
        j["n_b"] = b.n();
        j["dim"] = a.d();
        out << j.dump() << "\n";
      } else {
        out << FormatNumber(v) << "\n";
      }
    } else if (av_align->parsed()) {
      const StereoBuffer audio = ReadWav(aa_audio);
      const BBoxTrack track = LoadTrack(aa_track);
      const DirectionTrack dir =
          Localize(audio, window_ms / 1000.0, threshold_db);
      const AlignOptions opts{eval_fps, tolerance};
      const AlignmentReport report = SpatialAvAlign(dir, track, opts);
      std::optional<double> baseline;
      if (shuffle_baseline) {
        std::mt19937_64 rng(cfg.seed);
        baseline = SpatialAvAlign(dir, ShuffledTrack(track, rng), opts).score();
      }
      if (!aa_report.empty()) WriteReport(report, aa_report);
      if (cfg.json_output) {
        ordered_json j;
        j["metric"] = "av_align";
        j["score"] = NullableNumber(report.score());
        j["tp"] = report.tp;
        j["fn"] = report.fn;
        j["no_events"] = report.no_events();
        if (shuffle_baseline) j["shuffle_baseline"] = NullableNumber(baseline);
        out << j.dump() << "\n";
      } else {
        out << NullableText(report.score()) << "\n";
        if (shuffle_baseline) {
          out << "shuffle_baseline " << NullableText(baseline) << "\n";
        }
      }
    } else if (localize->parsed()) {
      const DirectionTrack dir =
          Localize(ReadWav(loc_audio), window_ms / 1000.0, threshold_db);
      if (cfg.json_output) {
        ordered_json j;
        j["window_len"] = dir.window_len;
        j["windows"] = ordered_json::array();
        for (std::size_t i = 0; i < dir.windows.size(); ++i) {
          const DirectionWindow& w = dir.windows[i];
          ordered_json row;
          row["index"] = i;
          row["t"] = dir.WindowCenter(i);
          row["active"] = w.active;
          row["energy"] = w.energy;
          row["direction"] = NullableNumber(w.direction);
          j["windows"].push_back(std::move(row));
        }
        out << j.dump() << "\n";
      } else {
        out << "window_index,t,active,energy,direction\n";
        for (std::size_t i = 0; i < dir.windows.size(); ++i) {
          const DirectionWindow& w = dir.windows[i];
          out << i << "," << FormatNumber(dir.WindowCenter(i)) << ","
              << (w.active ? 1 : 0) << "," << FormatNumber(w.energy) << ","
              << (w.direction ? FormatNumber(*w.direction) : "") << "\n";
        }
      }
    } else if (render->parsed()) {
      const StereoBuffer src = ReadWav(r_source);
      const BBoxTrack track = LoadTrack(r_track);
      RenderConfig rc;
      rc.depth_exponent = depth_exponent;
      rc.smoothing = smoothing_ms / 1000.0;
      const StereoBuffer rendered =
          RenderStereo(ToMono(src), track, rc, src.sample_rate());
      WriteWav(rendered, r_out,
               r_format == "float32" ? WavFormat::kFloat32 : WavFormat::kPcm16);
      if (cfg.json_output) {
        ordered_json j;
        j["out"] = r_out;
        j["frames"] = rendered.frames();
        j["sample_rate"] = rendered.sample_rate();
        out << j.dump() << "\n";
      } else {
        out << "wrote " << r_out << " (" << rendered.frames() << " frames)\n";
      }
    } else if (demo->parsed()) {
      const auto schedule = diffusion::MakeSchedule(
          demo_schedule == "cosine" ? diffusion::ScheduleKind::kCosine
                                    : diffusion::ScheduleKind::kLinearBeta,
          demo_steps);
      diffusion::Rng rng(cfg.seed);
      const auto rt = diffusion::OracleRoundTrip(schedule, demo_dim, rng);
      if (cfg.json_output) {
        ordered_json j;
        j["t"] = demo_steps;
        j["dim"] = demo_dim;
        j["seed"] = cfg.seed;
        j["schedule"] = demo_schedule == "cosine" ? "cosine" : "linear-beta";
        j["alpha_bar_T"] = schedule.alpha_bar(schedule.steps());
        j["max_abs_error"] = rt.max_abs_error;
        out << j.dump() << "\n";
      } else {
        out << FormatNumber(rt.max_abs_error) << "\n";
      }
    } else if (validate->parsed()) {
      const BBoxTrack track = LoadTrack(vt_track);
      std::size_t boxes = 0;
      for (const TrackFrame& f : track.frames) boxes += f.boxes.size();
      const double span = track.frames.empty() ? 0.0 : track.frames.back().t;
      if (cfg.json_output) {
        ordered_json j;
        j["valid"] = true;
        j["frames"] = track.frames.size();
        j["boxes"] = boxes;
        j["gaps"] = track.GapCount();
        j["last_t"] = span;
        j["has_depth"] = track.HasDepth();
        out << j.dump() << "\n";
      } else {
        out << "ok: " << track.frames.size() << " frames, " << boxes
            << " boxes, " << track.GapCount() << " missing frames, last t "
            << FormatNumber(span) << " s\n";
      }
    } else if (batch->parsed()) {
      BatchOptions opts;
      opts.align.tolerance = tolerance;
      opts.threshold_db = threshold_db;
      opts.parallelism = cfg.parallelism;
      const BatchResult result = BatchEvaluate(manifest, opts);
      const std::string text = BatchResultJson(result);
      if (!batch_report.empty()) {
        std::ofstream file(batch_report, std::ios::trunc);
        if (!file) throw IoError("cannot open for writing: " + batch_report);
        file << text << "\n";
      }
      if (cfg.json_output) {
        out << text << "\n";
      } else {
        out << "clips " << result.clips.size() << "\n"
            << "av_align " << NullableText(result.av_align) << " (tp "
            << result.tp << ", fn " << result.fn << ")\n"
            << "mean_e_l1 " << NullableText(result.mean_e_l1) << "\n"
            << "fad " << NullableText(result.fad) << "\n"
            << "favd " << NullableText(result.favd) << "\n";
      }
    }
  } catch (const UsageError& e) {
    return fail("usage", e.what(), kExitUsage);
  } catch (const IoError& e) {
    return fail("io", e.what(), kExitIo);
  } catch (const ValidationError& e) {
    return fail("validation", e.what(), kExitData);
  } catch (const FormatError& e) {
    return fail("format", e.what(), kExitData);
  } catch (const DataError& e) {
    return fail("data", e.what(), kExitData);
  } catch (const ArgumentError& e) {
    return fail("argument", e.what(), kExitData);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kExitData);
  }
  return kExitOk;
}

}  // namespace spatialav::cli
