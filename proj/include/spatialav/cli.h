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

#ifndef SPATIALAV_CLI_H_
#define SPATIALAV_CLI_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spatialav/spatial_align.h"
#include "spatialav/track_io.h"

namespace spatialav::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitData = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalConfig {
  std::uint64_t seed = 0;
  bool json_output = false;
  unsigned parallelism = 0;  // 0 = hardware concurrency
};

// Manifest line:
//   {"audio": path, "track": path, "ref_audio": path?, "emb_real": path?,
//    "emb_gen": path?, "emb_video": path?}
// Relative paths resolve against the manifest's directory.
struct ClipSpec {
  std::filesystem::path audio;
  std::filesystem::path track;
  std::optional<std::filesystem::path> ref_audio;
  std::optional<std::filesystem::path> emb_real;
  std::optional<std::filesystem::path> emb_gen;
  std::optional<std::filesystem::path> emb_video;
};

struct ClipResult {
  ClipSpec spec;
  AlignmentReport av_align;
  std::optional<double> e_l1;
};

struct BatchOptions {
  AlignOptions align;
  double window_len = 0.1;
  double threshold_db = -40.0;
  unsigned parallelism = 0;
};

struct BatchResult {
  std::vector<ClipResult> clips;
  // TP/FN summed over clips; per-event detail is not pooled.
  std::size_t tp = 0;
  std::size_t fn = 0;
  std::optional<double> av_align;
  std::optional<double> mean_e_l1;
  std::optional<double> fad;   // pooled emb_real vs pooled emb_gen
  std::optional<double> favd;  // pooled emb_video vs pooled emb_gen
};

std::vector<ClipSpec> ParseManifest(const std::filesystem::path& path);

// Clips run in parallel up to opts.parallelism; results keep manifest order.
// Throws UsageError on an empty manifest and DataError naming the clip when
// one of its files is missing or invalid.
BatchResult BatchEvaluate(const std::vector<ClipSpec>& clips,
                          const BatchOptions& opts);
BatchResult BatchEvaluate(const std::filesystem::path& manifest,
                          const BatchOptions& opts);

std::string BatchResultJson(const BatchResult& result);

// Shortest round-trip decimal; integral values keep a trailing ".0".
std::string FormatNumber(double v);

// Entry point shared by the executable and the tests. args excludes the
// program name.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace spatialav::cli

#endif  // SPATIALAV_CLI_H_
