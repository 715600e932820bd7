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

#include "hdrqa/frame.hpp"
#include "test_util.hpp"

using namespace hdrqa;

TEST_CASE("luminance uses the BT.709 weights") {
  HdrFrame white = HdrFrame::solid(2, 2, 1.0f, 1.0f, 1.0f);
  LumaPlane y = rgb_to_luminance(white);
  CHECK(y.v[0] == doctest::Approx(1.0).epsilon(1e-12));

  HdrFrame red = HdrFrame::solid(2, 2, 1.0f, 0.0f, 0.0f);
  CHECK(rgb_to_luminance(red).v[0] == doctest::Approx(0.2126).epsilon(1e-12));

  HdrFrame green = HdrFrame::solid(2, 2, 0.0f, 1.0f, 0.0f);
  CHECK(rgb_to_luminance(green).v[0] == doctest::Approx(0.7152).epsilon(1e-12));

  HdrFrame blue = HdrFrame::solid(2, 2, 0.0f, 0.0f, 1.0f);
  CHECK(rgb_to_luminance(blue).v[0] == doctest::Approx(0.0722).epsilon(1e-12));

  HdrFrame black = HdrFrame::solid(2, 2, 0.0f, 0.0f, 0.0f);
  CHECK(rgb_to_luminance(black).v[0] == 0.0);
}

TEST_CASE("luminance is linear in the frame") {
  HdrFrame f1 = testutil::random_frame(8, 8, 1, 0.0f, 2.0f);
  HdrFrame f2 = testutil::random_frame(8, 8, 2, 0.0f, 2.0f);
  const double a = 0.7, b = 1.9;
  HdrFrame mix = f1;
  for (std::size_t i = 0; i < mix.data.size(); ++i)
    mix.data[i] = static_cast<float>(a * f1.data[i] + b * f2.data[i]);
  LumaPlane y1 = rgb_to_luminance(f1);
  LumaPlane y2 = rgb_to_luminance(f2);
  LumaPlane ym = rgb_to_luminance(mix);
  for (std::size_t i = 0; i < ym.v.size(); ++i)
    CHECK(ym.v[i] == doctest::Approx(a * y1.v[i] + b * y2.v[i]).epsilon(1e-6));
}

TEST_CASE("normalize divides by the maximum and returns the scale") {
  LumaPlane p;
  p.width = 2;
  p.height = 2;
  p.v = {1.0, 2.0, 4.0, 0.5};
  NormalizeResult r = normalize(p);
  CHECK(r.scale == 4.0);
  CHECK(r.plane.v[0] == 0.25);
  CHECK(r.plane.v[2] == 1.0);

  // already normalized: identity with scale 1
  NormalizeResult r2 = normalize(r.plane);
  CHECK(r2.scale == 1.0);
  CHECK(r2.plane.v == r.plane.v);

  // power-of-two maximum round-trips bit exactly
  LumaPlane back = invert_normalize(r.plane, r.scale);
  for (std::size_t i = 0; i < p.v.size(); ++i) CHECK(back.v[i] == p.v[i]);
}

TEST_CASE("normalize of an all-zero plane is an error") {
  LumaPlane p;
  p.width = 2;
  p.height = 1;
  p.v = {0.0, 0.0};
  CHECK_THROWS_AS(normalize(p), Error);
}

TEST_CASE("normalize honors a sequence-wide override") {
  LumaPlane p;
  p.width = 2;
  p.height = 1;
  p.v = {1.0, 2.0};
  NormalizeResult r = normalize(p, 8.0);
  CHECK(r.scale == 8.0);
  CHECK(r.plane.v[1] == 0.25);
}

TEST_CASE("frame validation flags bad samples") {
  HdrFrame f = HdrFrame::solid(2, 2, 0.5f, 0.5f, 0.5f);
  CHECK_NOTHROW(f.validate());
  f.data[5] = -1.0f;
  CHECK_THROWS_AS(f.validate(), Error);
  f.data[5] = std::numeric_limits<float>::infinity();
  CHECK_THROWS_AS(f.validate(), Error);
}
