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

#include "spatialav/envelope.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "spatialav/audio_io.h"
#include "spatialav/errors.h"

namespace spatialav {

std::size_t EnvelopeFrameCount(std::size_t source_len, std::size_t hop) {
  return (source_len + hop - 1) / hop;
}

Envelope RmsEnvelope(std::span<const float> signal, std::size_t window,
                     std::size_t hop) {
  if (signal.empty()) throw ArgumentError("RmsEnvelope: empty signal");
  if (window == 0 || hop == 0) {
    throw ArgumentError("RmsEnvelope: window and hop must be >= 1");
  }
  Envelope env;
  env.window = window;
  env.hop = hop;
  env.source_len = signal.size();
  env.frames.resize(EnvelopeFrameCount(signal.size(), hop));

  const auto len = static_cast<std::int64_t>(signal.size());
  const auto half = static_cast<std::int64_t>(window / 2);
  for (std::size_t i = 0; i < env.frames.size(); ++i) {
    const std::int64_t start = static_cast<std::int64_t>(i * hop) - half;
    const std::int64_t lo = std::max<std::int64_t>(start, 0);
    const std::int64_t hi =
        std::min<std::int64_t>(start + static_cast<std::int64_t>(window), len);
    double acc = 0.0;
    for (std::int64_t t = lo; t < hi; ++t) {
      const double s = signal[static_cast<std::size_t>(t)];
      acc += s * s;
    }
    env.frames[i] = static_cast<float>(std::sqrt(acc / window));
  }
  return env;
}

std::vector<std::vector<float>> InterpolateEnvelope(const Envelope& env,
                                                    std::size_t target_len,
                                                    std::size_t channels) {
  if (env.frames.empty()) {
    throw ArgumentError("InterpolateEnvelope: empty envelope");
  }
  if (target_len == 0 || channels == 0) {
    throw ArgumentError("InterpolateEnvelope: target_len and channels >= 1");
  }
  return std::vector<std::vector<float>>(channels,
                                         LinearResample(env.frames, target_len));
}

double EnvelopeL1(const Envelope& a, const Envelope& b) {
  if (a.frames.size() != b.frames.size()) {
    throw ArgumentError("EnvelopeL1: frame counts differ (" +
                        std::to_string(a.frames.size()) + " vs " +
                        std::to_string(b.frames.size()) + ")");
  }
  if (a.window != b.window || a.hop != b.hop) {
    throw ArgumentError("EnvelopeL1: window/hop differ");
  }
  if (a.frames.empty()) throw ArgumentError("EnvelopeL1: empty envelopes");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.frames.size(); ++i) {
    acc += std::abs(static_cast<double>(a.frames[i]) - b.frames[i]);
  }
  return acc / static_cast<double>(a.frames.size());
}

double AlignedEnvelopeL1(const Envelope& a, const Envelope& b) {
  if (a.frames.size() < b.frames.size()) {
    return EnvelopeL1(ResampleEnvelope(a, b.frames.size()), b);
  }
  if (b.frames.size() < a.frames.size()) {
    return EnvelopeL1(a, ResampleEnvelope(b, a.frames.size()));
  }
  return EnvelopeL1(a, b);
}

Envelope ResampleEnvelope(const Envelope& env, std::size_t frames) {
  Envelope out = env;
  out.frames = LinearResample(env.frames, frames);
  return out;
}

}  // namespace spatialav
