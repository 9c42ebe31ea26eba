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

#include "spatialav/audio_io.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>

#include "spatialav/errors.h"

namespace spatialav {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatIeeeFloat = 3;

std::uint16_t ReadU16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t ReadU32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) |
         (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

void PutU16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) {
    out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
  }
}

void PutTag(std::vector<std::uint8_t>& out, std::string_view tag) {
  out.insert(out.end(), tag.begin(), tag.end());
}

bool TagIs(std::span<const std::uint8_t> b, std::size_t at,
           std::string_view tag) {
  return std::memcmp(b.data() + at, tag.data(), 4) == 0;
}

struct FmtChunk {
  std::uint16_t code;
  std::uint16_t channels;
  std::uint32_t sample_rate;
  std::uint16_t bits;
};

}  // namespace

StereoBuffer::StereoBuffer(std::vector<float> left, std::vector<float> right,
                           int sample_rate)
    : left_(std::move(left)), right_(std::move(right)),
      sample_rate_(sample_rate) {
  if (left_.size() != right_.size()) {
    throw ArgumentError("StereoBuffer: channel lengths differ (" +
                        std::to_string(left_.size()) + " vs " +
                        std::to_string(right_.size()) + ")");
  }
  if (sample_rate_ <= 0) {
    throw ArgumentError("StereoBuffer: sample_rate must be positive");
  }
  auto finite = [](float x) { return std::isfinite(x); };
  if (!std::all_of(left_.begin(), left_.end(), finite) ||
      !std::all_of(right_.begin(), right_.end(), finite)) {
    throw ArgumentError("StereoBuffer: non-finite sample");
  }
}

StereoBuffer StereoBuffer::FromMono(std::span<const float> mono,
                                    int sample_rate) {
  std::vector<float> ch(mono.begin(), mono.end());
  return StereoBuffer(ch, ch, sample_rate);
}

StereoBuffer StereoBuffer::Swapped() const {
  return StereoBuffer(right_, left_, sample_rate_);
}

std::int16_t QuantizePcm16(float sample) {
  // std::round is half-away-from-zero.
  const double scaled = std::round(static_cast<double>(sample) * 32768.0);
  return static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
}

StereoBuffer DecodeWav(std::span<const std::uint8_t> b) {
  if (b.size() < 12 || !TagIs(b, 0, "RIFF") || !TagIs(b, 8, "WAVE")) {
    throw FormatError("wav: missing RIFF/WAVE header");
  }
  std::optional<FmtChunk> fmt;
  std::span<const std::uint8_t> data;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= b.size()) {
    const std::uint32_t size = ReadU32(b, pos + 4);
    const std::size_t body = pos + 8;
    if (size > b.size() - body) {
      throw FormatError("wav: chunk extends past end of file");
    }
    if (TagIs(b, pos, "fmt ")) {
      if (size < 16) throw FormatError("wav: fmt chunk too short");
      fmt = FmtChunk{ReadU16(b, body), ReadU16(b, body + 2),
                     ReadU32(b, body + 4), ReadU16(b, body + 14)};
    } else if (TagIs(b, pos, "data")) {
      data = b.subspan(body, size);
      have_data = true;
    }
    // Chunks are word aligned.
    pos = body + size + (size & 1u);
  }
  if (!fmt) throw FormatError("wav: no fmt chunk");
  if (!have_data) throw FormatError("wav: no data chunk");

  if (fmt->channels != 1 && fmt->channels != 2) {
    throw UnsupportedFormatError("wav: " + std::to_string(fmt->channels) +
                                 " channels (only mono and stereo)");
  }
  if (fmt->sample_rate == 0 ||
      fmt->sample_rate > static_cast<std::uint32_t>(INT32_MAX)) {
    throw FormatError("wav: invalid sample rate");
  }
  const bool pcm16 = fmt->code == kFormatPcm && fmt->bits == 16;
  const bool f32 = fmt->code == kFormatIeeeFloat && fmt->bits == 32;
  if (!pcm16 && !f32) {
    throw UnsupportedFormatError(
        "wav: format code " + std::to_string(fmt->code) + " with " +
        std::to_string(fmt->bits) + " bits per sample");
  }

  const std::size_t bytes_per_sample = pcm16 ? 2 : 4;
  const std::size_t frame_bytes = bytes_per_sample * fmt->channels;
  const std::size_t n = data.size() / frame_bytes;
  std::vector<float> left(n), right(n);
  auto sample_at = [&](std::size_t offset) -> float {
    if (pcm16) {
      return DequantizePcm16(static_cast<std::int16_t>(ReadU16(data, offset)));
    }
    return std::bit_cast<float>(ReadU32(data, offset));
  };
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t at = i * frame_bytes;
    left[i] = sample_at(at);
    right[i] = fmt->channels == 2 ? sample_at(at + bytes_per_sample) : left[i];
  }
  try {
    return StereoBuffer(std::move(left), std::move(right),
                        static_cast<int>(fmt->sample_rate));
  } catch (const ArgumentError& e) {
    throw FormatError(std::string("wav: ") + e.what());
  }
}

std::vector<std::uint8_t> EncodeWav(const StereoBuffer& buf,
                                    WavFormat format) {
  const bool pcm16 = format == WavFormat::kPcm16;
  const std::uint16_t bits = pcm16 ? 16 : 32;
  const std::uint16_t block_align = 2 * bits / 8;
  const std::uint64_t data_bytes =
      static_cast<std::uint64_t>(buf.frames()) * block_align;
  if (data_bytes > 0xffffffffull - 36) {
    throw ArgumentError("wav: buffer too large for RIFF");
  }

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  PutTag(out, "RIFF");
  PutU32(out, static_cast<std::uint32_t>(36 + data_bytes));
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  PutU32(out, 16);
  PutU16(out, pcm16 ? kFormatPcm : kFormatIeeeFloat);
  PutU16(out, 2);
  PutU32(out, static_cast<std::uint32_t>(buf.sample_rate()));
  PutU32(out, static_cast<std::uint32_t>(buf.sample_rate()) * block_align);
  PutU16(out, block_align);
  PutU16(out, bits);
  PutTag(out, "data");
  PutU32(out, static_cast<std::uint32_t>(data_bytes));

  const auto left = buf.left();
  const auto right = buf.right();
  for (std::size_t i = 0; i < buf.frames(); ++i) {
    for (float s : {left[i], right[i]}) {
      if (pcm16) {
        PutU16(out, static_cast<std::uint16_t>(QuantizePcm16(s)));
      } else {
        PutU32(out, std::bit_cast<std::uint32_t>(s));
      }
    }
  }
  return out;
}

StereoBuffer ReadWav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return DecodeWav(bytes);
}

void WriteWav(const StereoBuffer& buf, const std::filesystem::path& path,
              WavFormat format) {
  const auto bytes = EncodeWav(buf, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<float> LinearResample(std::span<const float> signal,
                                  std::size_t target_len) {
  if (signal.empty()) throw ArgumentError("LinearResample: empty signal");
  if (target_len == 0) throw ArgumentError("LinearResample: target_len is 0");
  std::vector<float> out(target_len);
  const std::size_t n = signal.size();
  if (target_len == 1 || n == 1) {
    std::fill(out.begin(), out.end(), signal[0]);
    return out;
  }
  // Position i maps to i*(n-1)/(m-1); integer arithmetic keeps grid-aligned
  // points (including both endpoints) exact.
  const std::uint64_t span = target_len - 1;
  for (std::size_t i = 0; i < target_len; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(i) * (n - 1);
    const std::size_t idx = num / span;
    const std::uint64_t rem = num % span;
    if (rem == 0) {
      out[i] = signal[idx];
    } else {
      const double frac = static_cast<double>(rem) / static_cast<double>(span);
      const double a = signal[idx];
      const double b = signal[idx + 1];
      out[i] = static_cast<float>(a + frac * (b - a));
    }
  }
  return out;
}

std::vector<float> ToMono(const StereoBuffer& buf) {
  std::vector<float> out(buf.frames());
  const auto left = buf.left();
  const auto right = buf.right();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<float>(
        (static_cast<double>(left[i]) + static_cast<double>(right[i])) * 0.5);
  }
  return out;
}

}  // namespace spatialav
