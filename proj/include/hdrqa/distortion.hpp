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

// Synthetic distortion generators. Stochastic kinds are bit-reproducible
// from (seed, frame_index, parameters); see rng.hpp for the stream rule.
// Compression is tag-only: encoded streams come from an external HEVC
// encoder and re-enter the toolkit as decoded 12-bit YUV.

#ifndef HDRQA_DISTORTION_HPP
#define HDRQA_DISTORTION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hdrqa/convolve.hpp"
#include "hdrqa/error.hpp"
#include "hdrqa/frame.hpp"
#include "hdrqa/rng.hpp"

namespace hdrqa {

enum class DistortionKind { awgn, intensity_shift, salt_pepper, gaussian_lpf, compression };

inline const char* distortion_kind_name(DistortionKind k) {
  switch (k) {
    case DistortionKind::awgn: return "awgn";
    case DistortionKind::intensity_shift: return "intensity_shift";
    case DistortionKind::salt_pepper: return "salt_pepper";
    case DistortionKind::gaussian_lpf: return "gaussian_lpf";
    case DistortionKind::compression: return "compression";
  }
  return "?";
}

inline DistortionKind parse_distortion_kind(const std::string& s) {
  if (s == "awgn") return DistortionKind::awgn;
  if (s == "intensity_shift") return DistortionKind::intensity_shift;
  if (s == "salt_pepper") return DistortionKind::salt_pepper;
  if (s == "gaussian_lpf") return DistortionKind::gaussian_lpf;
  if (s == "compression") return DistortionKind::compression;
  fail(errc::usage, "unknown distortion kind '" + s + "'");
}

struct DistortionSpec {
  DistortionKind kind = DistortionKind::awgn;
  double sigma = 0.002;        // awgn
  double fraction = 0.02;      // salt_pepper
  int kernel_size = 8;         // gaussian_lpf
  double kernel_sigma = 8.0;   // gaussian_lpf
  int qp = 0;                  // compression tag
  std::uint64_t seed = 0;

  bool stochastic() const {
    return kind == DistortionKind::awgn || kind == DistortionKind::salt_pepper;
  }

  void validate() const {
    switch (kind) {
      case DistortionKind::awgn:
        require(sigma >= 0.0, errc::usage, "awgn: sigma must be non-negative");
        break;
      case DistortionKind::salt_pepper:
        require(fraction >= 0.0 && fraction <= 1.0, errc::usage,
                "salt_pepper: fraction must lie in [0,1]");
        break;
      case DistortionKind::gaussian_lpf:
        require(kernel_size >= 1, errc::usage, "gaussian_lpf: kernel size must be >= 1");
        require(kernel_sigma > 0.0, errc::usage, "gaussian_lpf: sigma must be positive");
        break;
      case DistortionKind::compression:
        require(qp > 0, errc::usage, "compression: qp required");
        break;
      case DistortionKind::intensity_shift:
        break;
    }
  }

  std::map<std::string, double> params() const {
    switch (kind) {
      case DistortionKind::awgn: return {{"sigma", sigma}};
      case DistortionKind::salt_pepper: return {{"fraction", fraction}};
      case DistortionKind::gaussian_lpf:
        return {{"size", static_cast<double>(kernel_size)}, {"sigma", kernel_sigma}};
      case DistortionKind::compression: return {{"qp", static_cast<double>(qp)}};
      case DistortionKind::intensity_shift: return {};
    }
    return {};
  }
};

/// White Gaussian noise on all channel samples after joint normalization to
/// [0,1] by the frame maximum. Noisy values clamp to [0,1] before the
/// original scale is restored, so the output never leaves [0, max].
inline HdrFrame add_awgn(const HdrFrame& frame, double sigma = 0.002, std::uint64_t seed = 0,
                         std::uint64_t frame_index = 0) {
  require(sigma >= 0.0, errc::usage, "add_awgn: sigma must be non-negative");
  double m = frame.max_value();
  require(m > 0.0, errc::usage, "add_awgn: frame maximum must be positive");
  if (sigma == 0.0) return frame;

  Xoshiro256pp rng = frame_stream(seed, frame_index);
  HdrFrame out = frame;
  for (float& s : out.data) {
    double n = rng.next_gaussian() * sigma;
    double v = std::clamp(static_cast<double>(s) / m + n, 0.0, 1.0);
    s = static_cast<float>(v * m);
  }
  return out;
}

struct IntensityShiftResult {
  std::vector<HdrFrame> frames;
  double shift = 0.0;      // offset added to every channel
  bool all_black = false;  // sequence max luminance was zero; identity applied
};

/// Raise luminance everywhere by 10% of the sequence-wide maximum scene
/// luminance. The offset is added equally to R, G and B; since the luma
/// weights sum to 1, luminance rises by exactly the offset.
inline IntensityShiftResult intensity_shift(const std::vector<HdrFrame>& frames,
                                            double amount = 0.1) {
  require(!frames.empty(), errc::usage, "intensity_shift: empty sequence");
  double max_luma = 0.0;
  for (const HdrFrame& f : frames)
    for (std::size_t i = 0; i < f.pixel_count(); ++i)
      max_luma = std::max(max_luma,
                          luminance_of(f.data[i * 3], f.data[i * 3 + 1], f.data[i * 3 + 2]));

  IntensityShiftResult r;
  if (max_luma <= 0.0) {
    r.frames = frames;
    r.all_black = true;
    return r;
  }
  r.shift = amount * max_luma;
  r.frames.reserve(frames.size());
  for (const HdrFrame& f : frames) {
    HdrFrame g = f;
    for (float& s : g.data) s = static_cast<float>(s + r.shift);
    r.frames.push_back(std::move(g));
  }
  return r;
}

/// Impulse noise on exactly floor(fraction * N) distinct pixels, chosen
/// uniformly; each hit pixel becomes (min,min,min) or (max,max,max) with a
/// fair coin. Extremes are the frame's own min/max since HDR data has no
/// fixed code range.
inline HdrFrame salt_pepper(const HdrFrame& frame, double fraction = 0.02, std::uint64_t seed = 0,
                            std::uint64_t frame_index = 0) {
  require(fraction >= 0.0 && fraction <= 1.0, errc::usage,
          "salt_pepper: fraction must lie in [0,1]");
  const std::size_t n = frame.pixel_count();
  const std::size_t count = static_cast<std::size_t>(fraction * static_cast<double>(n));
  HdrFrame out = frame;
  if (count == 0) return out;

  float lo = frame.min_value();
  float hi = frame.max_value();
  Xoshiro256pp rng = frame_stream(seed, frame_index);

  // Partial Fisher-Yates: the first `count` slots end up a uniform sample of
  // distinct positions.
  std::vector<std::uint32_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
    std::swap(idx[i], idx[j]);
  }
  for (std::size_t i = 0; i < count; ++i) {
    float v = (rng.next() & 1) ? hi : lo;
    std::size_t p = static_cast<std::size_t>(idx[i]) * 3;
    out.data[p] = out.data[p + 1] = out.data[p + 2] = v;
  }
  return out;
}

/// Per-channel Gaussian low-pass, edge replication. The default 8x8 kernel
/// with sigma 8 is nearly flat; see convolve.hpp for even-size anchoring.
inline HdrFrame gaussian_lowpass(const HdrFrame& frame, int size = 8, double sigma = 8.0) {
  require(size >= 1, errc::usage, "gaussian_lowpass: size must be >= 1");
  require(sigma > 0.0, errc::usage, "gaussian_lowpass: sigma must be positive");
  return gaussian_blur_frame(frame, size, sigma);
}

}  // namespace hdrqa

#endif  // HDRQA_DISTORTION_HPP
