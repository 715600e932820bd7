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

#include <cmath>
#include <cstring>
#include <string>

#include "hdrqa/rgbe.hpp"
#include "test_util.hpp"

using namespace hdrqa;

namespace {

// Independent decode path: mantissa/256 * 2^(e-128) via pow, not ldexp.
void oracle_decode(const std::uint8_t q[4], double out[3]) {
  if (q[3] == 0) {
    out[0] = out[1] = out[2] = 0.0;
    return;
  }
  double scale = std::pow(2.0, static_cast<int>(q[3]) - 128) / 256.0;
  for (int c = 0; c < 3; ++c) out[c] = q[c] * scale;
}

// Per-channel error of an encode/decode round trip, relative to the pixel
// maximum (the shared-exponent quantization scale).
double max_roundtrip_error(const HdrFrame& orig, const HdrFrame& back) {
  double worst = 0.0;
  for (std::size_t p = 0; p < orig.pixel_count(); ++p) {
    double m = std::max({orig.data[p * 3], orig.data[p * 3 + 1], orig.data[p * 3 + 2]});
    if (m <= 0.0) continue;
    for (int c = 0; c < 3; ++c)
      worst = std::max(worst, std::abs(static_cast<double>(orig.data[p * 3 + c]) -
                                       back.data[p * 3 + c]) /
                                  m);
  }
  return worst;
}

}  // namespace

TEST_CASE("rgbe pixel decode") {
  float r, g, b;

  std::uint8_t zero[4] = {0, 0, 0, 0};
  rgbe_decode_pixel(zero, r, g, b);
  CHECK(r == 0.0f);
  CHECK(g == 0.0f);
  CHECK(b == 0.0f);

  std::uint8_t one[4] = {128, 128, 128, 129};
  rgbe_decode_pixel(one, r, g, b);
  CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b == doctest::Approx(1.0).epsilon(1e-12));

  std::uint8_t red[4] = {255, 0, 0, 128};
  rgbe_decode_pixel(red, r, g, b);
  CHECK(r == doctest::Approx(0.99609375).epsilon(1e-12));
  CHECK(g == 0.0f);
  CHECK(b == 0.0f);
}

TEST_CASE("rgbe pixel decode agrees with the direct formula") {
  Xoshiro256pp rng(11);
  for (int i = 0; i < 2000; ++i) {
    std::uint8_t q[4] = {static_cast<std::uint8_t>(rng.next()), static_cast<std::uint8_t>(rng.next()),
                         static_cast<std::uint8_t>(rng.next()), static_cast<std::uint8_t>(rng.next())};
    float r, g, b;
    rgbe_decode_pixel(q, r, g, b);
    double expect[3];
    oracle_decode(q, expect);
    CHECK(r == doctest::Approx(expect[0]).epsilon(1e-6));
    CHECK(g == doctest::Approx(expect[1]).epsilon(1e-6));
    CHECK(b == doctest::Approx(expect[2]).epsilon(1e-6));
    CHECK(std::isfinite(r));
    CHECK(r >= 0.0f);
  }
}

TEST_CASE("rgbe round trip stays within the shared-exponent bound") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    HdrFrame f = testutil::random_frame(64, 17, seed, 0.0f, 10.0f);
    HdrFrame back = read_rgbe(write_rgbe(f));
    REQUIRE(back.width == f.width);
    REQUIRE(back.height == f.height);
    CHECK(max_roundtrip_error(f, back) <= 1.0 / 256.0);
  }
  // wide dynamic range
  HdrFrame hdr = testutil::synthetic_hdr_frame(48, 32, 3);
  HdrFrame back = read_rgbe(write_rgbe(hdr));
  CHECK(max_roundtrip_error(hdr, back) <= 1.0 / 256.0);

  // extreme per-pixel contrast: the shared exponent is set by the largest
  // channel, and the bound is still relative to that channel
  HdrFrame extreme = testutil::random_frame(32, 8, 9);
  for (std::size_t p = 0; p < extreme.pixel_count(); ++p)
    extreme.data[p * 3 + (p % 3)] *= 1e20f;
  HdrFrame back2 = read_rgbe(write_rgbe(extreme));
  CHECK(max_roundtrip_error(extreme, back2) <= 1.0 / 256.0);
}

TEST_CASE("rgbe all-zero frame round-trips exactly") {
  HdrFrame f = HdrFrame::solid(13, 7, 0.0f, 0.0f, 0.0f);
  HdrFrame back = read_rgbe(write_rgbe(f));
  for (float v : back.data) CHECK(v == 0.0f);
}

TEST_CASE("rgbe 2x1 white frame stores quads that decode to 1") {
  HdrFrame f = HdrFrame::solid(2, 1, 1.0f, 1.0f, 1.0f);
  std::vector<std::uint8_t> bytes = write_rgbe(f);
  // width 2 < 8: flat quads directly after the header
  const char* res = "-Y 1 +X 2\n";
  auto it = std::search(bytes.begin(), bytes.end(), res, res + std::strlen(res));
  REQUIRE(it != bytes.end());
  std::size_t at = static_cast<std::size_t>(it - bytes.begin()) + std::strlen(res);
  REQUIRE(bytes.size() == at + 8);
  for (int p = 0; p < 2; ++p) {
    double v[3];
    oracle_decode(bytes.data() + at + 4 * p, v);
    for (int c = 0; c < 3; ++c) CHECK(v[c] == doctest::Approx(1.0).epsilon(1.0 / 256.0));
  }
}

TEST_CASE("rgbe RLE path compresses runs and round-trips") {
  // constant rows produce long runs
  HdrFrame flat = HdrFrame::solid(256, 4, 0.25f, 0.5f, 0.75f);
  std::vector<std::uint8_t> bytes = write_rgbe(flat);
  CHECK(bytes.size() < 256 * 4 * 4 / 4);  // far below flat encoding
  HdrFrame back = read_rgbe(bytes);
  CHECK(max_roundtrip_error(flat, back) <= 1.0 / 256.0);

  HdrFrame noisy = testutil::random_frame(301, 5, 77, 0.0f, 3.0f);
  HdrFrame back2 = read_rgbe(write_rgbe(noisy));
  CHECK(max_roundtrip_error(noisy, back2) <= 1.0 / 256.0);
}

TEST_CASE("rgbe header errors are distinct") {
  auto bytes_of = [](const std::string& s) {
    return std::vector<std::uint8_t>(s.begin(), s.end());
  };

  SUBCASE("missing magic") {
    auto e = [&] { read_rgbe(bytes_of("RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n-Y 1 +X 1\n")); };
    CHECK_THROWS_WITH_AS(e(), doctest::Contains("magic"), Error);
  }
  SUBCASE("missing FORMAT") {
    auto e = [&] { read_rgbe(bytes_of("#?RADIANCE\nEXPOSURE=1\n\n-Y 1 +X 1\n")); };
    CHECK_THROWS_WITH_AS(e(), doctest::Contains("FORMAT"), Error);
  }
  SUBCASE("unsupported format value") {
    auto e = [&] { read_rgbe(bytes_of("#?RADIANCE\nFORMAT=32-bit_rle_xyze\n\n-Y 1 +X 1\n")); };
    CHECK_THROWS_WITH_AS(e(), doctest::Contains("FORMAT"), Error);
  }
  SUBCASE("unsupported pixel ordering") {
    auto e = [&] { read_rgbe(bytes_of("#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n+Y 1 +X 1\n")); };
    CHECK_THROWS_WITH_AS(e(), doctest::Contains("ordering"), Error);
  }
  SUBCASE("garbage resolution line") {
    auto e = [&] { read_rgbe(bytes_of("#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\nbogus\n")); };
    CHECK_THROWS_WITH_AS(e(), doctest::Contains("resolution"), Error);
  }
  SUBCASE("truncated scanline") {
    std::string s = "#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n-Y 2 +X 2\n";
    s += std::string("\x80\x80\x80\x81", 4);  // one pixel of four
    auto e = [&] { read_rgbe(bytes_of(s)); };
    CHECK_THROWS_WITH_AS(e(), doctest::Contains("truncated"), Error);
  }
  SUBCASE("RLE scanline width mismatch") {
    HdrFrame f = testutil::random_frame(16, 2, 5);
    std::vector<std::uint8_t> bytes = write_rgbe(f);
    // corrupt the RLE marker's width field of the first scanline
    const char* res = "-Y 2 +X 16\n";
    auto it = std::search(bytes.begin(), bytes.end(), res, res + std::strlen(res));
    REQUIRE(it != bytes.end());
    std::size_t at = static_cast<std::size_t>(it - bytes.begin()) + std::strlen(res);
    REQUIRE(bytes[at] == 2);
    bytes[at + 3] = 17;
    CHECK_THROWS_WITH_AS(read_rgbe(bytes), doctest::Contains("width"), Error);
  }
}

TEST_CASE("rgbe accepts foreign headers with extra variables and comments") {
  std::string s =
      "#?RGBE\n"
      "# made elsewhere\n"
      "EXPOSURE=2.5\n"
      "GAMMA=1.0\n"
      "FORMAT=32-bit_rle_rgbe\n"
      "\n"
      "-Y 1 +X 2\n";
  s += std::string("\x80\x80\x80\x81", 4);  // (1,1,1)
  s += std::string("\x00\x00\x00\x00", 4);  // zero sentinel
  HdrFrame f = read_rgbe(std::vector<std::uint8_t>(s.begin(), s.end()));
  REQUIRE(f.width == 2);
  REQUIRE(f.height == 1);
  CHECK(f.at(0, 0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.at(1, 0, 2) == 0.0f);
}

TEST_CASE("rgbe rejects a zero literal count inside an RLE stream") {
  std::string s = "#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n-Y 1 +X 16\n";
  s += std::string("\x02\x02\x00\x10", 4);  // RLE marker, width 16
  s += std::string("\x00\x00", 2);          // literal count 0: malformed
  CHECK_THROWS_WITH_AS(read_rgbe(std::vector<std::uint8_t>(s.begin(), s.end())),
                       doctest::Contains("literal"), Error);
}

TEST_CASE("rgbe decoded values are always finite and non-negative") {
  // adversarial: every exponent byte, extreme mantissas
  for (int e = 0; e < 256; ++e) {
    std::uint8_t q[4] = {255, 1, 0, static_cast<std::uint8_t>(e)};
    float r, g, b;
    rgbe_decode_pixel(q, r, g, b);
    CHECK(std::isfinite(r));
    CHECK(std::isfinite(g));
    CHECK(r >= 0.0f);
    CHECK(g >= 0.0f);
    CHECK(b == 0.0f);
  }
}
