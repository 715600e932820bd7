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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "hdrqa/yuv.hpp"
#include "test_util.hpp"

using namespace hdrqa;

namespace {

Yuv12Frame random_yuv(int w, int h, std::uint64_t seed) {
  Xoshiro256pp rng(seed);
  Yuv12Frame f = Yuv12Frame::blank(w, h);
  for (auto& s : f.y) s = static_cast<std::uint16_t>(rng.next_below(4096));
  for (auto& s : f.u) s = static_cast<std::uint16_t>(rng.next_below(4096));
  for (auto& s : f.v) s = static_cast<std::uint16_t>(rng.next_below(4096));
  return f;
}

}  // namespace

TEST_CASE("yuv12 file round trip is byte identical") {
  Yuv12Frame f = random_yuv(16, 8, 42);
  std::vector<std::uint8_t> bytes = write_yuv12(f);
  CHECK(bytes.size() == yuv12_frame_stride(16, 8));
  Yuv12Frame back = read_yuv12(bytes, 16, 8, 0);
  CHECK(write_yuv12(back) == bytes);
}

TEST_CASE("yuv12 range boundary") {
  Yuv12Frame f = Yuv12Frame::blank(2, 2);
  for (auto& s : f.y) s = 4095;
  for (auto& s : f.u) s = 4095;
  for (auto& s : f.v) s = 4095;
  std::vector<std::uint8_t> bytes = write_yuv12(f);
  CHECK_NOTHROW(read_yuv12(bytes, 2, 2, 0));

  // 4096 in the raw bytes signals the wrong bit depth
  bytes[0] = 0x00;
  bytes[1] = 0x10;
  CHECK_THROWS_WITH_AS(read_yuv12(bytes, 2, 2, 0), doctest::Contains("12-bit"), Error);
}

TEST_CASE("yuv12 frame indexing and short reads") {
  Yuv12Frame a = random_yuv(4, 4, 1);
  Yuv12Frame b = random_yuv(4, 4, 2);
  std::vector<std::uint8_t> bytes = write_yuv12(a);
  write_yuv12(b, bytes);

  CHECK(yuv12_frame_count(bytes.size(), 4, 4) == 2);
  Yuv12Frame back = read_yuv12(bytes, 4, 4, 1);
  CHECK(back.y == b.y);
  CHECK(back.u == b.u);
  CHECK(back.v == b.v);
  CHECK_THROWS_WITH_AS(read_yuv12(bytes, 4, 4, 2), doctest::Contains("short read"), Error);
}

TEST_CASE("achromatic codes decode to equal RGB") {
  Yuv12Frame f = Yuv12Frame::blank(4, 4);
  for (auto& s : f.y) s = 2048;
  HdrFrame rgb = yuv_to_rgb(f);
  for (std::size_t p = 0; p < rgb.pixel_count(); ++p) {
    CHECK(rgb.data[p * 3 + 0] == doctest::Approx(rgb.data[p * 3 + 1]).epsilon(1e-9));
    CHECK(rgb.data[p * 3 + 1] == doctest::Approx(rgb.data[p * 3 + 2]).epsilon(1e-9));
    CHECK(rgb.data[p * 3 + 0] == doctest::Approx(0.5).epsilon(1e-3));
  }
}

TEST_CASE("black maps to Y=0, U=V=2048") {
  HdrFrame black = HdrFrame::solid(4, 4, 0.0f, 0.0f, 0.0f);
  Yuv12Frame f = rgb_to_yuv(black);
  for (auto s : f.y) CHECK(s == 0);
  for (auto s : f.u) CHECK(s == kYuv12ChromaZero);
  for (auto s : f.v) CHECK(s == kYuv12ChromaZero);
}

TEST_CASE("yuv round trip holds luma within one code value") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    // margin from the gamut edges keeps the reconstruction un-clipped
    HdrFrame rgb = testutil::random_frame(16, 8, seed, 0.1f, 0.9f);
    Yuv12Frame a = rgb_to_yuv(rgb);
    Yuv12Frame b = rgb_to_yuv(yuv_to_rgb(a));
    for (std::size_t i = 0; i < a.y.size(); ++i)
      CHECK(std::abs(static_cast<int>(a.y[i]) - static_cast<int>(b.y[i])) <= 1);
    for (std::size_t i = 0; i < a.u.size(); ++i) {
      CHECK(std::abs(static_cast<int>(a.u[i]) - static_cast<int>(b.u[i])) <= 1);
      CHECK(std::abs(static_cast<int>(a.v[i]) - static_cast<int>(b.v[i])) <= 1);
    }
  }
}

TEST_CASE("odd dimensions are rejected") {
  CHECK_THROWS_AS(read_yuv12(std::vector<std::uint8_t>(1000, 0), 3, 4, 0), Error);
  HdrFrame odd = HdrFrame::solid(3, 4, 0.1f, 0.1f, 0.1f);
  CHECK_THROWS_AS(rgb_to_yuv(odd), Error);
}
