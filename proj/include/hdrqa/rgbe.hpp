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

// Radiance .hdr (RGBE) codec: 8-bit mantissa per channel plus one shared
// exponent byte. Header is "#?..." / "FORMAT=32-bit_rle_rgbe" / blank /
// "-Y h +X w"; scanlines use the new-style per-channel run-length coding
// when 8 <= width <= 32767 and flat 4-byte quads otherwise.

#ifndef HDRQA_RGBE_HPP
#define HDRQA_RGBE_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "hdrqa/error.hpp"
#include "hdrqa/frame.hpp"

namespace hdrqa {

/// Decode one RGBE quad. A zero exponent byte is the exact-zero sentinel;
/// otherwise channel = mantissa/256 * 2^(e-128).
inline void rgbe_decode_pixel(const std::uint8_t quad[4], float& r, float& g, float& b) {
  if (quad[3] == 0) {
    r = g = b = 0.0f;
    return;
  }
  double s = std::ldexp(1.0, static_cast<int>(quad[3]) - 136);  // 2^(e-128)/256
  r = static_cast<float>(quad[0] * s);
  g = static_cast<float>(quad[1] * s);
  b = static_cast<float>(quad[2] * s);
}

/// Encode with a rounded mantissa (clamped at 255), which keeps every
/// channel within max(r,g,b)/256 of its original value.
inline void rgbe_encode_pixel(float r, float g, float b, std::uint8_t quad[4]) {
  double m = std::max({static_cast<double>(r), static_cast<double>(g), static_cast<double>(b)});
  if (!(m >= 1e-32)) {
    quad[0] = quad[1] = quad[2] = quad[3] = 0;
    return;
  }
  int e = 0;
  std::frexp(m, &e);  // m = f * 2^e, f in [0.5, 1)
  if (e > 127) e = 127;
  double scale = std::ldexp(256.0, -e);
  auto q = [&](double c) {
    long s = std::lround(c * scale);
    if (s < 0) s = 0;
    if (s > 255) s = 255;
    return static_cast<std::uint8_t>(s);
  };
  quad[0] = q(r);
  quad[1] = q(g);
  quad[2] = q(b);
  quad[3] = static_cast<std::uint8_t>(e + 128);
}

namespace detail {

class ByteReader {
 public:
  ByteReader(const std::uint8_t* data, std::size_t size) : data_(data), size_(size) {}

  std::string line() {
    std::string out;
    while (pos_ < size_) {
      char c = static_cast<char>(data_[pos_++]);
      if (c == '\n') return out;
      out.push_back(c);
      require(out.size() < 4096, errc::format, "rgbe: header line too long");
    }
    fail(errc::format, "rgbe: malformed header (unterminated line)");
  }

  void bytes(std::uint8_t* out, std::size_t n) {
    require(pos_ + n <= size_, errc::format, "rgbe: truncated scanline");
    std::memcpy(out, data_ + pos_, n);
    pos_ += n;
  }

  std::size_t remaining() const { return size_ - pos_; }

 private:
  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

inline void read_flat_scanline(ByteReader& in, float* row, int width, const std::uint8_t* first) {
  std::uint8_t quad[4];
  for (int x = 0; x < width; ++x) {
    if (x == 0 && first) {
      std::memcpy(quad, first, 4);
    } else {
      in.bytes(quad, 4);
    }
    rgbe_decode_pixel(quad, row[x * 3], row[x * 3 + 1], row[x * 3 + 2]);
  }
}

inline void read_rle_scanline(ByteReader& in, float* row, int width) {
  std::vector<std::uint8_t> channels(static_cast<std::size_t>(width) * 4);
  for (int c = 0; c < 4; ++c) {
    std::uint8_t* ptr = channels.data() + static_cast<std::size_t>(c) * width;
    std::uint8_t* end = ptr + width;
    while (ptr < end) {
      std::uint8_t buf[2];
      in.bytes(buf, 2);
      if (buf[0] > 128) {
        int count = buf[0] - 128;
        require(count <= end - ptr, errc::format, "rgbe: run overflows scanline");
        while (count-- > 0) *ptr++ = buf[1];
      } else {
        int count = buf[0];
        require(count > 0 && count <= end - ptr, errc::format, "rgbe: bad literal count");
        *ptr++ = buf[1];
        if (--count > 0) {
          in.bytes(ptr, static_cast<std::size_t>(count));
          ptr += count;
        }
      }
    }
  }
  for (int x = 0; x < width; ++x) {
    std::uint8_t quad[4] = {channels[x], channels[x + width], channels[x + 2 * width],
                            channels[x + 3 * width]};
    rgbe_decode_pixel(quad, row[x * 3], row[x * 3 + 1], row[x * 3 + 2]);
  }
}

// Ward's scheme: runs of >=4 identical bytes become (128+len, value), other
// bytes go out as literal chunks of at most 128.
inline void write_bytes_rle(std::vector<std::uint8_t>& out, const std::uint8_t* data, int n) {
  constexpr int kMinRun = 4;
  int cur = 0;
  while (cur < n) {
    int beg_run = cur;
    int run_count = 0, old_run_count = 0;
    while (run_count < kMinRun && beg_run < n) {
      beg_run += run_count;
      old_run_count = run_count;
      run_count = 1;
      while (beg_run + run_count < n && run_count < 127 && data[beg_run] == data[beg_run + run_count])
        ++run_count;
    }
    if (old_run_count > 1 && old_run_count == beg_run - cur) {
      out.push_back(static_cast<std::uint8_t>(128 + old_run_count));
      out.push_back(data[cur]);
      cur = beg_run;
    }
    while (cur < beg_run) {
      int lit = std::min(beg_run - cur, 128);
      out.push_back(static_cast<std::uint8_t>(lit));
      out.insert(out.end(), data + cur, data + cur + lit);
      cur += lit;
    }
    if (run_count >= kMinRun) {
      out.push_back(static_cast<std::uint8_t>(128 + run_count));
      out.push_back(data[beg_run]);
      cur += run_count;
    }
  }
}

}  // namespace detail

inline HdrFrame read_rgbe(const std::uint8_t* bytes, std::size_t size) {
  detail::ByteReader in(bytes, size);

  std::string magic = in.line();
  require(magic.size() >= 2 && magic[0] == '#' && magic[1] == '?', errc::format,
          "rgbe: malformed header (missing #? magic)");

  bool format_seen = false;
  for (;;) {
    std::string l = in.line();
    if (l.empty()) break;
    if (l.rfind("FORMAT=", 0) == 0) {
      require(l == "FORMAT=32-bit_rle_rgbe", errc::format,
              "rgbe: malformed header (unsupported FORMAT '" + l.substr(7) + "')");
      format_seen = true;
    }
    // EXPOSURE=, GAMMA= and comment lines are tolerated and ignored.
  }
  require(format_seen, errc::format, "rgbe: malformed header (no FORMAT line)");

  std::string res = in.line();
  int w = 0, h = 0;
  if (std::sscanf(res.c_str(), "-Y %d +X %d", &h, &w) != 2) {
    // Any of the other seven axis orderings is a legal Radiance file we do
    // not handle; tell those apart from garbage.
    int a = 0, b = 0;
    char s0 = 0, c0 = 0, s1 = 0, c1 = 0;
    if (std::sscanf(res.c_str(), "%c%c %d %c%c %d", &s0, &c0, &a, &s1, &c1, &b) == 6 &&
        (s0 == '+' || s0 == '-') && (s1 == '+' || s1 == '-') && (c0 == 'X' || c0 == 'Y') &&
        (c1 == 'X' || c1 == 'Y'))
      fail(errc::format, "rgbe: unsupported pixel ordering '" + res + "' (expected -Y h +X w)");
    fail(errc::format, "rgbe: malformed header (bad resolution line '" + res + "')");
  }
  require(w > 0 && h > 0, errc::format, "rgbe: malformed header (non-positive dimensions)");

  HdrFrame frame;
  frame.width = w;
  frame.height = h;
  frame.data.resize(static_cast<std::size_t>(w) * h * 3);

  for (int y = 0; y < h; ++y) {
    float* row = frame.data.data() + static_cast<std::size_t>(y) * w * 3;
    std::uint8_t head[4];
    in.bytes(head, 4);
    if (head[0] == 2 && head[1] == 2 && !(head[2] & 0x80)) {
      int sw = (static_cast<int>(head[2]) << 8) | head[3];
      require(sw == w, errc::format, "rgbe: scanline width mismatch");
      detail::read_rle_scanline(in, row, w);
    } else {
      detail::read_flat_scanline(in, row, w, head);
    }
  }
  return frame;
}

inline HdrFrame read_rgbe(const std::vector<std::uint8_t>& bytes) {
  return read_rgbe(bytes.data(), bytes.size());
}

inline std::vector<std::uint8_t> write_rgbe(const HdrFrame& frame) {
  frame.validate();
  std::vector<std::uint8_t> out;
  char header[96];
  std::snprintf(header, sizeof(header), "#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n-Y %d +X %d\n",
                frame.height, frame.width);
  out.insert(out.end(), header, header + std::strlen(header));

  const int w = frame.width;
  const bool rle = w >= 8 && w <= 0x7fff;
  std::vector<std::uint8_t> channels(rle ? static_cast<std::size_t>(w) * 4 : 0);

  for (int y = 0; y < frame.height; ++y) {
    const float* row = frame.data.data() + static_cast<std::size_t>(y) * w * 3;
    if (!rle) {
      std::uint8_t quad[4];
      for (int x = 0; x < w; ++x) {
        rgbe_encode_pixel(row[x * 3], row[x * 3 + 1], row[x * 3 + 2], quad);
        out.insert(out.end(), quad, quad + 4);
      }
      continue;
    }
    out.push_back(2);
    out.push_back(2);
    out.push_back(static_cast<std::uint8_t>(w >> 8));
    out.push_back(static_cast<std::uint8_t>(w & 0xFF));
    std::uint8_t quad[4];
    for (int x = 0; x < w; ++x) {
      rgbe_encode_pixel(row[x * 3], row[x * 3 + 1], row[x * 3 + 2], quad);
      channels[x] = quad[0];
      channels[x + w] = quad[1];
      channels[x + 2 * w] = quad[2];
      channels[x + 3 * w] = quad[3];
    }
    for (int c = 0; c < 4; ++c)
      detail::write_bytes_rle(out, channels.data() + static_cast<std::size_t>(c) * w, w);
  }
  return out;
}

inline HdrFrame read_rgbe_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  require(f.good(), errc::io, "cannot open '" + path + "' for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                  std::istreambuf_iterator<char>());
  return read_rgbe(bytes);
}

inline void write_rgbe_file(const std::string& path, const HdrFrame& frame) {
  std::vector<std::uint8_t> bytes = write_rgbe(frame);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  require(f.good(), errc::io, "cannot open '" + path + "' for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  require(f.good(), errc::io, "short write to '" + path + "'");
}

}  // namespace hdrqa

#endif  // HDRQA_RGBE_HPP
