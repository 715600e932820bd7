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

#include "hdrqa/convolve.hpp"
#include "test_util.hpp"

using namespace hdrqa;

TEST_CASE("gaussian kernels are normalized") {
  for (auto [size, sigma] : {std::pair{8, 8.0}, {11, 1.5}, {12, 2.0}, {3, 0.6}, {17, 3.4}}) {
    auto k2 = gaussian_kernel_2d(size, sigma);
    double sum = 0.0;
    for (const auto& row : k2)
      for (double w : row) sum += w;
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("separable replicate convolution matches the brute-force 2-D oracle") {
  for (auto [size, sigma] : {std::pair{8, 8.0}, {12, 2.0}, {5, 1.0}}) {
    Plane p = testutil::random_plane(23, 17, 100 + size);
    Plane fast = convolve_replicate(p, gaussian_kernel_1d(size, sigma));
    Plane slow = testutil::conv2d_replicate_oracle(p, gaussian_kernel_2d(size, sigma));
    REQUIRE(fast.same_size(slow));
    for (std::size_t i = 0; i < fast.v.size(); ++i)
      CHECK(fast.v[i] == doctest::Approx(slow.v[i]).epsilon(1e-12));
  }
}

TEST_CASE("even kernels anchor at the top-left of the central 2x2") {
  // a unit impulse reproduces the kernel weights at offsets -(anchor)..size-1-anchor
  const int size = 8;
  const double sigma = 8.0;
  Plane p = Plane::zeros(32, 32);
  p.at(16, 16) = 1.0;
  Plane out = convolve_replicate(p, gaussian_kernel_1d(size, sigma));
  auto k2 = gaussian_kernel_2d(size, sigma);
  const int anchor = (size - 1) / 2;  // 3
  for (int j = 0; j < size; ++j)
    for (int i = 0; i < size; ++i)
      CHECK(out.at(16 - (i - anchor) + 0, 16 - (j - anchor) + 0) ==
            doctest::Approx(k2[j][i]).epsilon(1e-12));
  // everything outside the support is zero
  CHECK(out.at(16 + anchor + 2, 16) == 0.0);
  CHECK(out.at(16, 16 - anchor - 6) == 0.0);
}

TEST_CASE("constant planes are fixed points of blurring") {
  Plane p = Plane::zeros(20, 14);
  for (double& v : p.v) v = 3.25;
  Plane out = gaussian_blur_plane(p, 8, 8.0);
  for (double v : out.v) CHECK(v == doctest::Approx(3.25).epsilon(1e-15));
}

TEST_CASE("valid-mode filtering shrinks and matches direct sums") {
  Plane p = testutil::random_plane(19, 13, 5);
  auto k = gaussian_kernel_1d(5, 1.0);
  Plane out = filter_valid(p, k);
  CHECK(out.width == 15);
  CHECK(out.height == 9);
  // spot check one position against an explicit double loop
  double s = 0.0;
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 5; ++i) s += k[j] * k[i] * p.at(3 + i, 2 + j);
  CHECK(out.at(3, 2) == doctest::Approx(s).epsilon(1e-12));
  CHECK_THROWS_AS(filter_valid(testutil::random_plane(4, 4, 1), k), Error);
}

TEST_CASE("white-noise variance shrinks by the squared kernel norm") {
  // interior pixels of blurred iid noise have variance ~ sum(w^2) * var(in)
  const int size = 8;
  const double sigma = 8.0;
  auto k2 = gaussian_kernel_2d(size, sigma);
  double w2 = 0.0;
  for (const auto& row : k2)
    for (double w : row) w2 += w * w;

  Plane noise = testutil::random_plane(160, 160, 9, -1.0, 1.0);  // var 1/3
  Plane blurred = convolve_replicate(noise, gaussian_kernel_1d(size, sigma));
  double mean = 0.0, var = 0.0;
  std::size_t count = 0;
  for (int y = size; y < noise.height - size; ++y)
    for (int x = size; x < noise.width - size; ++x) {
      mean += blurred.at(x, y);
      ++count;
    }
  mean /= static_cast<double>(count);
  for (int y = size; y < noise.height - size; ++y)
    for (int x = size; x < noise.width - size; ++x) {
      double d = blurred.at(x, y) - mean;
      var += d * d;
    }
  var /= static_cast<double>(count);
  double expected = w2 / 3.0;
  CHECK(var == doctest::Approx(expected).epsilon(0.15));
}

TEST_CASE("stronger blur removes more high-frequency energy") {
  // natural-spectrum content (texture + grain); white noise would let the
  // near-box kernels' spectral sidelobes invert the ordering near Nyquist
  Plane content = rgb_to_luminance(testutil::synthetic_hdr_frame(64, 64, 21));
  auto laplacian_var = [](const Plane& p) {
    double acc = 0.0;
    std::size_t n = 0;
    for (int y = 1; y < p.height - 1; ++y)
      for (int x = 1; x < p.width - 1; ++x) {
        double l = 4 * p.at(x, y) - p.at(x - 1, y) - p.at(x + 1, y) - p.at(x, y - 1) -
                   p.at(x, y + 1);
        acc += l * l;
        ++n;
      }
    return acc / static_cast<double>(n);
  };
  double prev = laplacian_var(content);
  for (double sigma : {1.0, 2.0, 4.0, 8.0}) {
    double cur = laplacian_var(gaussian_blur_plane(content, 8, sigma));
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("downsample2 keeps even indices") {
  Plane p = Plane::zeros(5, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 5; ++x) p.at(x, y) = 10.0 * y + x;
  Plane d = downsample2(p);
  CHECK(d.width == 3);
  CHECK(d.height == 2);
  CHECK(d.at(0, 0) == 0.0);
  CHECK(d.at(1, 0) == 2.0);
  CHECK(d.at(2, 1) == 24.0);
}
