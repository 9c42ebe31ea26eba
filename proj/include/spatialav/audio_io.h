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

// WAV codec and basic signal utilities for two-channel PCM audio.
//
// PCM-16 quantization uses a single scale of 32768 in both directions:
//   read:  word / 32768
//   write: clamp(round_half_away(x * 32768), -32768, 32767)
// so -1.0 maps to -32768, +1.0 clips to 32767, and any buffer already on
// the k/32768 grid round-trips to identical sample words.

#ifndef SPATIALAV_AUDIO_IO_H_
#define SPATIALAV_AUDIO_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace spatialav {

inline constexpr int kDefaultSampleRate = 44100;

class StereoBuffer {
 public:
  // Throws ArgumentError unless left.size() == right.size(),
  // sample_rate > 0 and every sample is finite.
  StereoBuffer(std::vector<float> left, std::vector<float> right,
               int sample_rate);

  // Mono source duplicated to both channels.
  static StereoBuffer FromMono(std::span<const float> mono, int sample_rate);

  std::span<const float> left() const { return left_; }
  std::span<const float> right() const { return right_; }
  int sample_rate() const { return sample_rate_; }
  std::size_t frames() const { return left_.size(); }
  double duration_seconds() const {
    return static_cast<double>(left_.size()) / sample_rate_;
  }

  // L/R exchanged.
  StereoBuffer Swapped() const;

  bool operator==(const StereoBuffer&) const = default;

 private:
  std::vector<float> left_;
  std::vector<float> right_;
  int sample_rate_;
};

enum class WavFormat { kPcm16, kFloat32 };

StereoBuffer ReadWav(const std::filesystem::path& path);
void WriteWav(const StereoBuffer& buf, const std::filesystem::path& path,
              WavFormat format = WavFormat::kPcm16);

// In-memory variants used by the file functions.
StereoBuffer DecodeWav(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> EncodeWav(const StereoBuffer& buf, WavFormat format);

std::int16_t QuantizePcm16(float sample);
inline float DequantizePcm16(std::int16_t word) {
  return static_cast<float>(word) / 32768.0f;
}

// Linear interpolation of `signal` onto `target_len` uniformly spaced points
// spanning the same interval. Endpoints are preserved; resampling to the
// same length is the identity. A target of 1 returns the first sample.
std::vector<float> LinearResample(std::span<const float> signal,
                                  std::size_t target_len);

// (left + right) / 2.
std::vector<float> ToMono(const StereoBuffer& buf);

}  // namespace spatialav

#endif  // SPATIALAV_AUDIO_IO_H_
