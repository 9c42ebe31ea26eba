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

#ifndef SPATIALAV_ENVELOPE_H_
#define SPATIALAV_ENVELOPE_H_

#include <cstddef>
#include <span>
#include <vector>

namespace spatialav {

inline constexpr std::size_t kEnvelopeWindow = 512;
inline constexpr std::size_t kEnvelopeHop = 128;

// Frame-wise RMS of a signal.
//
// Framing is centered: frame i covers samples
//   [i*hop - window/2, i*hop - window/2 + window)
// with zeros outside the signal, and there are ceil(source_len / hop) frames.
// The mean always divides by the full window, padding included.
struct Envelope {
  std::vector<float> frames;
  std::size_t window = kEnvelopeWindow;
  std::size_t hop = kEnvelopeHop;
  std::size_t source_len = 0;

  bool operator==(const Envelope&) const = default;
};

std::size_t EnvelopeFrameCount(std::size_t source_len, std::size_t hop);

Envelope RmsEnvelope(std::span<const float> signal,
                     std::size_t window = kEnvelopeWindow,
                     std::size_t hop = kEnvelopeHop);

// Linear interpolation of env.frames to target_len, replicated on every
// channel. This is the control-signal shape fed alongside a Ch x L latent.
std::vector<std::vector<float>> InterpolateEnvelope(const Envelope& env,
                                                    std::size_t target_len,
                                                    std::size_t channels = 2);

// Mean absolute frame difference. Envelopes must share length, window and
// hop; the caller aligns lengths first (see ResampleEnvelope).
double EnvelopeL1(const Envelope& a, const Envelope& b);

// EnvelopeL1 after stretching the shorter envelope to the longer one.
double AlignedEnvelopeL1(const Envelope& a, const Envelope& b);

// env with frames linearly resampled to `frames` points. Window and hop
// metadata are kept.
Envelope ResampleEnvelope(const Envelope& env, std::size_t frames);

}  // namespace spatialav

#endif  // SPATIALAV_ENVELOPE_H_
