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

#ifndef HDRQA_FRAME_HPP
#define HDRQA_FRAME_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "hdrqa/error.hpp"

namespace hdrqa {

// BT.709 luma weights. Shared by luminance extraction, the YUV matrix and the
// display pipeline.
inline constexpr double kLumaR = 0.2126;
inline constexpr double kLumaG = 0.7152;
inline constexpr double kLumaB = 0.0722;

inline double luminance_of(double r, double g, double b) {
  return kLumaR * r + kLumaG * g + kLumaB * b;
}

/// Linear-light RGB raster, relative radiance units. Channel values are
/// finite and non-negative; data is interleaved R,G,B.
struct HdrFrame {
  int width = 0;
  int height = 0;
  std::vector<float> data;

  static HdrFrame solid(int w, int h, float r, float g, float b) {
    HdrFrame f;
    f.width = w;
    f.height = h;
    f.data.resize(static_cast<std::size_t>(w) * h * 3);
    for (std::size_t p = 0; p < static_cast<std::size_t>(w) * h; ++p) {
      f.data[p * 3 + 0] = r;
      f.data[p * 3 + 1] = g;
      f.data[p * 3 + 2] = b;
    }
    return f;
  }

  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }

  float& at(int x, int y, int c) { return data[(static_cast<std::size_t>(y) * width + x) * 3 + c]; }
  float at(int x, int y, int c) const {
    return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }

  bool same_size(const HdrFrame& o) const { return width == o.width && height == o.height; }

  float max_value() const {
    float m = 0.0f;
    for (float v : data) m = std::max(m, v);
    return m;
  }

  float min_value() const {
    if (data.empty()) return 0.0f;
    float m = data[0];
    for (float v : data) m = std::min(m, v);
    return m;
  }

  void validate() const {
    require(width > 0 && height > 0, errc::format, "frame has empty geometry");
    require(data.size() == pixel_count() * 3, errc::format, "frame data length mismatch");
    for (float v : data)
      require(std::isfinite(v) && v >= 0.0f, errc::format,
              "frame contains a negative or non-finite sample");
  }
};

/// Single-channel raster. Metrics and the display pipeline run on these.
struct Plane {
  int width = 0;
  int height = 0;
  std::vector<double> v;

  static Plane zeros(int w, int h) {
    Plane p;
    p.width = w;
    p.height = h;
    p.v.assign(static_cast<std::size_t>(w) * h, 0.0);
    return p;
  }

  std::size_t size() const { return static_cast<std::size_t>(width) * height; }
  double& at(int x, int y) { return v[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return v[static_cast<std::size_t>(y) * width + x]; }
  bool same_size(const Plane& o) const { return width == o.width && height == o.height; }

  double max_value() const {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : v) m = std::max(m, x);
    return v.empty() ? 0.0 : m;
  }
  double min_value() const {
    double m = std::numeric_limits<double>::infinity();
    for (double x : v) m = std::min(m, x);
    return v.empty() ? 0.0 : m;
  }
  double mean() const {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
  }
};

enum class LumaUnits { relative, absolute_cd_m2 };

/// Luminance raster: relative (dimensionless, nominally [0,1] once
/// normalized) or absolute cd/m², tagged by `units`.
struct LumaPlane : Plane {
  LumaUnits units = LumaUnits::relative;
};

/// Y = 0.2126 R + 0.7152 G + 0.0722 B, per pixel. Output keeps the frame's
/// relative scale (callers normalize when a [0,1] plane is required).
inline LumaPlane rgb_to_luminance(const HdrFrame& f) {
  require(f.width > 0 && f.height > 0, errc::usage, "rgb_to_luminance: empty frame");
  LumaPlane p;
  p.width = f.width;
  p.height = f.height;
  p.units = LumaUnits::relative;
  p.v.resize(f.pixel_count());
  for (std::size_t i = 0; i < f.pixel_count(); ++i)
    p.v[i] = luminance_of(f.data[i * 3 + 0], f.data[i * 3 + 1], f.data[i * 3 + 2]);
  return p;
}

struct NormalizeResult {
  LumaPlane plane;  // values in [0,1]
  double scale;     // the maximum that was divided out
};

/// Divide by the plane maximum. The scale is returned so callers can invert;
/// pass a sequence-wide maximum via `scale_override` for temporally stable
/// normalization.
inline NormalizeResult normalize(const LumaPlane& p, double scale_override = 0.0) {
  double m = scale_override > 0.0 ? scale_override : p.max_value();
  require(m > 0.0, errc::numeric, "normalize: plane maximum is zero");
  NormalizeResult r;
  r.scale = m;
  r.plane = p;
  for (double& x : r.plane.v) x = x / m;
  return r;
}

inline LumaPlane invert_normalize(const LumaPlane& p, double scale) {
  LumaPlane out = p;
  for (double& x : out.v) x = x * scale;
  return out;
}

}  // namespace hdrqa

#endif  // HDRQA_FRAME_HPP
