/*
 * Copyright 2026 The hdrqa Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Sequence I/O against a manifest: rgbe sequences live as one .hdr file per
// frame addressed by a printf-style pattern; yuv12 sequences are a single
// headerless raw file. PFM writers serve the display simulator's float-plane
// outputs.

#ifndef HDRQA_DATASET_HPP
#define HDRQA_DATASET_HPP

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "hdrqa/error.hpp"
#include "hdrqa/frame.hpp"
#include "hdrqa/manifest.hpp"
#include "hdrqa/rgbe.hpp"
#include "hdrqa/yuv.hpp"

namespace hdrqa {

/// Expand a frame-path pattern containing exactly one %d / %0Nd conversion.
inline std::string expand_frame_path(const std::string& pattern, int index) {
  int conversions = 0;
  for (std::size_t i = 0; i + 1 < pattern.size(); ++i) {
    if (pattern[i] != '%') continue;
    if (pattern[i + 1] == '%') {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < pattern.size() && (std::isdigit(static_cast<unsigned char>(pattern[j])))) ++j;
    require(j < pattern.size() && pattern[j] == 'd', errc::usage,
            "frame pattern '" + pattern + "': only %d conversions are supported");
    ++conversions;
    i = j;
  }
  require(conversions == 1, errc::usage,
          "frame pattern '" + pattern + "' must contain exactly one %d conversion");
  char buf[4096];
  std::snprintf(buf, sizeof(buf), pattern.c_str(), index);
  return buf;
}

/// Load up to `max_frames` frames (0 = all) of a manifest sequence. YUV
/// sources are converted to linear RGB.
inline std::vector<HdrFrame> load_sequence(const SequenceManifest& seq,
                                           const std::string& base_dir, int max_frames = 0) {
  require(!seq.path.empty(), errc::usage,
          "sequence '" + seq.name + "' has no pixel source path in the manifest");
  int count = seq.frames;
  if (max_frames > 0) count = std::min(count, max_frames);

  std::vector<HdrFrame> frames;
  frames.reserve(static_cast<std::size_t>(count));
  std::filesystem::path base(base_dir);

  if (seq.format == SourceFormat::rgbe) {
    for (int i = 0; i < count; ++i) {
      std::string p = (base / expand_frame_path(seq.path, i)).string();
      HdrFrame f = read_rgbe_file(p);
      require(f.width == seq.width && f.height == seq.height, errc::format,
              "'" + p + "': geometry disagrees with the manifest");
      frames.push_back(std::move(f));
    }
  } else {
    std::string p = (base / seq.path).string();
    std::vector<std::uint8_t> bytes = read_file_bytes(p);
    std::size_t available = yuv12_frame_count(bytes.size(), seq.width, seq.height);
    require(available >= static_cast<std::size_t>(count), errc::format,
            "'" + p + "': holds " + std::to_string(available) + " frames, manifest expects " +
                std::to_string(seq.frames));
    for (int i = 0; i < count; ++i)
      frames.push_back(yuv_to_rgb(read_yuv12(bytes, seq.width, seq.height,
                                             static_cast<std::size_t>(i))));
  }
  return frames;
}

// ---------------------------------------------------------------------------
// PFM (portable float map): "Pf"/"PF", dimensions, negative scale for
// little-endian, rows bottom-up.

inline void write_pfm_gray(const std::string& path, const Plane& plane) {
  std::string out;
  char header[64];
  std::snprintf(header, sizeof(header), "Pf\n%d %d\n-1.0\n", plane.width, plane.height);
  out += header;
  for (int y = plane.height - 1; y >= 0; --y) {
    for (int x = 0; x < plane.width; ++x) {
      float f = static_cast<float>(plane.at(x, y));
      out.append(reinterpret_cast<const char*>(&f), sizeof(float));
    }
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  require(f.good(), errc::io, "cannot open '" + path + "' for writing");
  f << out;
  require(f.good(), errc::io, "short write to '" + path + "'");
}

inline void write_pfm_rgb(const std::string& path, const HdrFrame& frame) {
  std::string out;
  char header[64];
  std::snprintf(header, sizeof(header), "PF\n%d %d\n-1.0\n", frame.width, frame.height);
  out += header;
  for (int y = frame.height - 1; y >= 0; --y)
    for (int x = 0; x < frame.width; ++x)
      for (int c = 0; c < 3; ++c) {
        float f = frame.at(x, y, c);
        out.append(reinterpret_cast<const char*>(&f), sizeof(float));
      }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  require(f.good(), errc::io, "cannot open '" + path + "' for writing");
  f << out;
  require(f.good(), errc::io, "short write to '" + path + "'");
}

}  // namespace hdrqa

#endif  // HDRQA_DATASET_HPP
