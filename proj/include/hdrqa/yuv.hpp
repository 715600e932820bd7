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

// 12-bit planar YUV 4:2:0, stored in 16-bit little-endian containers with the
// low 12 bits significant. Headerless: geometry comes from the manifest.

#ifndef HDRQA_YUV_HPP
#define HDRQA_YUV_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "hdrqa/error.hpp"
#include "hdrqa/frame.hpp"

namespace hdrqa {

inline constexpr int kYuv12Max = 4095;
inline constexpr int kYuv12ChromaZero = 2048;

struct Yuv12Frame {
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> y;  // width*height
  std::vector<std::uint16_t> u;  // (width/2)*(height/2)
  std::vector<std::uint16_t> v;  // (width/2)*(height/2)

  static Yuv12Frame blank(int w, int h) {
    require(w > 0 && h > 0 && w % 2 == 0 && h % 2 == 0, errc::usage,
            "yuv12: dimensions must be positive and even");
    Yuv12Frame f;
    f.width = w;
    f.height = h;
    f.y.assign(static_cast<std::size_t>(w) * h, 0);
    f.u.assign(static_cast<std::size_t>(w / 2) * (h / 2), kYuv12ChromaZero);
    f.v.assign(static_cast<std::size_t>(w / 2) * (h / 2), kYuv12ChromaZero);
    return f;
  }

  void validate() const {
    require(width > 0 && height > 0, errc::format, "yuv12: empty geometry");
    require(width % 2 == 0 && height % 2 == 0, errc::format,
            "yuv12: 4:2:0 requires even dimensions");
    require(y.size() == static_cast<std::size_t>(width) * height, errc::format,
            "yuv12: luma plane size mismatch");
    std::size_t cs = static_cast<std::size_t>(width / 2) * (height / 2);
    require(u.size() == cs && v.size() == cs, errc::format, "yuv12: chroma plane size mismatch");
    for (std::uint16_t s : y)
      require(s <= kYuv12Max, errc::format, "yuv12: luma sample exceeds 12-bit range");
    for (std::uint16_t s : u)
      require(s <= kYuv12Max, errc::format, "yuv12: chroma sample exceeds 12-bit range");
    for (std::uint16_t s : v)
      require(s <= kYuv12Max, errc::format, "yuv12: chroma sample exceeds 12-bit range");
  }
};

/// Bytes per frame: Y plane + two quarter-size chroma planes, 2 bytes each.
inline std::size_t yuv12_frame_stride(int width, int height) {
  return static_cast<std::size_t>(width) * height * 2 +
         2 * (static_cast<std::size_t>(width / 2) * (height / 2)) * 2;
}

inline std::size_t yuv12_frame_count(std::size_t byte_size, int width, int height) {
  return byte_size / yuv12_frame_stride(width, height);
}

namespace detail {

inline void read_plane_12le(const std::uint8_t* src, std::vector<std::uint16_t>& dst,
                            std::size_t count, const char* what) {
  dst.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint16_t s = static_cast<std::uint16_t>(src[2 * i] | (src[2 * i + 1] << 8));
    require(s <= kYuv12Max, errc::format,
            std::string("yuv12: ") + what + " sample exceeds 12-bit range (wrong bit depth?)");
    dst[i] = s;
  }
}

}  // namespace detail

inline Yuv12Frame read_yuv12(const std::uint8_t* bytes, std::size_t size, int width, int height,
                             std::size_t frame_index = 0) {
  require(width > 0 && height > 0 && width % 2 == 0 && height % 2 == 0, errc::usage,
          "yuv12: dimensions must be positive and even");
  std::size_t stride = yuv12_frame_stride(width, height);
  require(size >= (frame_index + 1) * stride, errc::format,
          "yuv12: short read (buffer ends before frame " + std::to_string(frame_index) + ")");
  const std::uint8_t* p = bytes + frame_index * stride;

  Yuv12Frame f;
  f.width = width;
  f.height = height;
  std::size_t ys = static_cast<std::size_t>(width) * height;
  std::size_t cs = static_cast<std::size_t>(width / 2) * (height / 2);
  detail::read_plane_12le(p, f.y, ys, "luma");
  detail::read_plane_12le(p + ys * 2, f.u, cs, "chroma");
  detail::read_plane_12le(p + ys * 2 + cs * 2, f.v, cs, "chroma");
  return f;
}

inline Yuv12Frame read_yuv12(const std::vector<std::uint8_t>& bytes, int width, int height,
                             std::size_t frame_index = 0) {
  return read_yuv12(bytes.data(), bytes.size(), width, height, frame_index);
}

inline void write_yuv12(const Yuv12Frame& f, std::vector<std::uint8_t>& out) {
  f.validate();
  auto put = [&](const std::vector<std::uint16_t>& plane) {
    for (std::uint16_t s : plane) {
      out.push_back(static_cast<std::uint8_t>(s & 0xFF));
      out.push_back(static_cast<std::uint8_t>(s >> 8));
    }
  };
  put(f.y);
  put(f.u);
  put(f.v);
}

inline std::vector<std::uint8_t> write_yuv12(const Yuv12Frame& f) {
  std::vector<std::uint8_t> out;
  out.reserve(yuv12_frame_stride(f.width, f.height));
  write_yuv12(f, out);
  return out;
}

// BT.709 analog coefficients: Pb = (B-Y)/1.8556, Pr = (R-Y)/1.5748.
inline constexpr double kBt709Pb = 1.8556;
inline constexpr double kBt709Pr = 1.5748;

/// Full-range 12-bit BT.709. RGB is expected in [0,1]; out-of-range values
/// clamp at the code boundaries. Chroma is downsampled by averaging each
/// 2x2 block of per-pixel Pb/Pr.
inline Yuv12Frame rgb_to_yuv(const HdrFrame& frame) {
  require(frame.width % 2 == 0 && frame.height % 2 == 0, errc::usage,
          "rgb_to_yuv: 4:2:0 requires even dimensions");
  const int w = frame.width, h = frame.height;
  Yuv12Frame out = Yuv12Frame::blank(w, h);

  std::vector<double> pb(static_cast<std::size_t>(w) * h), pr(pb.size());
  auto quantize = [](double x) {
    long q = std::lround(x);
    return static_cast<std::uint16_t>(std::clamp(q, 0L, static_cast<long>(kYuv12Max)));
  };
  for (int yy = 0; yy < h; ++yy) {
    for (int x = 0; x < w; ++x) {
      double r = frame.at(x, yy, 0), g = frame.at(x, yy, 1), b = frame.at(x, yy, 2);
      double luma = luminance_of(r, g, b);
      std::size_t i = static_cast<std::size_t>(yy) * w + x;
      pb[i] = (b - luma) / kBt709Pb;
      pr[i] = (r - luma) / kBt709Pr;
      out.y[i] = quantize(luma * kYuv12Max);
    }
  }
  for (int cy = 0; cy < h / 2; ++cy) {
    for (int cx = 0; cx < w / 2; ++cx) {
      std::size_t i00 = static_cast<std::size_t>(2 * cy) * w + 2 * cx;
      std::size_t i10 = i00 + 1, i01 = i00 + w, i11 = i01 + 1;
      double apb = (pb[i00] + pb[i10] + pb[i01] + pb[i11]) * 0.25;
      double apr = (pr[i00] + pr[i10] + pr[i01] + pr[i11]) * 0.25;
      std::size_t ci = static_cast<std::size_t>(cy) * (w / 2) + cx;
      out.u[ci] = quantize(apb * kYuv12Max + kYuv12ChromaZero);
      out.v[ci] = quantize(apr * kYuv12Max + kYuv12ChromaZero);
    }
  }
  return out;
}

/// Inverse of rgb_to_yuv. Chroma upsamples by block replication; RGB is
/// floored at zero (linear radiance cannot go negative) but not clipped
/// above, so luma survives the round trip to within one code value.
inline HdrFrame yuv_to_rgb(const Yuv12Frame& f) {
  f.validate();
  const int w = f.width, h = f.height;
  HdrFrame out;
  out.width = w;
  out.height = h;
  out.data.resize(static_cast<std::size_t>(w) * h * 3);

  for (int yy = 0; yy < h; ++yy) {
    for (int x = 0; x < w; ++x) {
      std::size_t i = static_cast<std::size_t>(yy) * w + x;
      std::size_t ci = static_cast<std::size_t>(yy / 2) * (w / 2) + (x / 2);
      double luma = f.y[i] / static_cast<double>(kYuv12Max);
      double cb = (f.u[ci] - kYuv12ChromaZero) / static_cast<double>(kYuv12Max);
      double cr = (f.v[ci] - kYuv12ChromaZero) / static_cast<double>(kYuv12Max);
      double r = luma + kBt709Pr * cr;
      double b = luma + kBt709Pb * cb;
      double g = (luma - kLumaR * r - kLumaB * b) / kLumaG;
      out.data[i * 3 + 0] = static_cast<float>(std::max(r, 0.0));
      out.data[i * 3 + 1] = static_cast<float>(std::max(g, 0.0));
      out.data[i * 3 + 2] = static_cast<float>(std::max(b, 0.0));
    }
  }
  return out;
}

inline std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  require(f.good(), errc::io, "cannot open '" + path + "' for reading");
  return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(f)),
                                   std::istreambuf_iterator<char>());
}

inline void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  require(f.good(), errc::io, "cannot open '" + path + "' for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  require(f.good(), errc::io, "short write to '" + path + "'");
}

}  // namespace hdrqa

#endif  // HDRQA_YUV_HPP
