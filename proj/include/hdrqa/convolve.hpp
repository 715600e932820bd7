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

// Separable Gaussian filtering. Two border policies: edge replication (blur
// distortion, projector PSF) and valid-region (metric windows, which must not
// see synthetic border data).
//
// Even-sized kernels are centered between samples; the output anchors at
// offset (size-1)/2 from the kernel origin, i.e. the top-left pixel of the
// central 2x2. Golden files depend on this anchoring.

#ifndef HDRQA_CONVOLVE_HPP
#define HDRQA_CONVOLVE_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "hdrqa/error.hpp"
#include "hdrqa/frame.hpp"

namespace hdrqa {

/// 1-D Gaussian taps at offsets i - (size-1)/2, normalized to sum 1.
inline std::vector<double> gaussian_kernel_1d(int size, double sigma) {
  require(size >= 1, errc::usage, "gaussian kernel: size must be >= 1");
  require(sigma > 0.0, errc::usage, "gaussian kernel: sigma must be positive");
  std::vector<double> k(static_cast<std::size_t>(size));
  double center = (size - 1) / 2.0;
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    double d = i - center;
    k[i] = std::exp(-(d * d) / (2.0 * sigma * sigma));
    sum += k[i];
  }
  for (double& w : k) w /= sum;
  return k;
}

/// Outer product of the 1-D kernel with itself; sums to 1.
inline std::vector<std::vector<double>> gaussian_kernel_2d(int size, double sigma) {
  std::vector<double> k = gaussian_kernel_1d(size, sigma);
  std::vector<std::vector<double>> k2(k.size(), std::vector<double>(k.size()));
  for (std::size_t j = 0; j < k.size(); ++j)
    for (std::size_t i = 0; i < k.size(); ++i) k2[j][i] = k[j] * k[i];
  return k2;
}

namespace detail {

inline void convolve_rows_replicate(const Plane& in, const std::vector<double>& k, Plane& out) {
  const int n = static_cast<int>(k.size());
  const int anchor = (n - 1) / 2;
  out = Plane::zeros(in.width, in.height);
  for (int y = 0; y < in.height; ++y) {
    const double* row = in.v.data() + static_cast<std::size_t>(y) * in.width;
    double* orow = out.v.data() + static_cast<std::size_t>(y) * in.width;
    for (int x = 0; x < in.width; ++x) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        int sx = std::clamp(x + i - anchor, 0, in.width - 1);
        s += k[i] * row[sx];
      }
      orow[x] = s;
    }
  }
}

inline void convolve_cols_replicate(const Plane& in, const std::vector<double>& k, Plane& out) {
  const int n = static_cast<int>(k.size());
  const int anchor = (n - 1) / 2;
  out = Plane::zeros(in.width, in.height);
  for (int y = 0; y < in.height; ++y) {
    for (int x = 0; x < in.width; ++x) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        int sy = std::clamp(y + i - anchor, 0, in.height - 1);
        s += k[i] * in.at(x, sy);
      }
      out.at(x, y) = s;
    }
  }
}

}  // namespace detail

/// Separable convolution with edge replication; output keeps the input size.
inline Plane convolve_replicate(const Plane& in, const std::vector<double>& kernel) {
  Plane tmp, out;
  detail::convolve_rows_replicate(in, kernel, tmp);
  detail::convolve_cols_replicate(tmp, kernel, out);
  return out;
}

inline Plane gaussian_blur_plane(const Plane& in, int size, double sigma) {
  return convolve_replicate(in, gaussian_kernel_1d(size, sigma));
}

/// Per-channel Gaussian blur of an RGB frame (edge replication). Channel
/// arithmetic runs in double.
inline HdrFrame gaussian_blur_frame(const HdrFrame& in, int size, double sigma) {
  std::vector<double> k = gaussian_kernel_1d(size, sigma);
  HdrFrame out = in;
  Plane ch = Plane::zeros(in.width, in.height);
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < in.pixel_count(); ++i) ch.v[i] = in.data[i * 3 + c];
    Plane blurred = convolve_replicate(ch, k);
    for (std::size_t i = 0; i < in.pixel_count(); ++i)
      out.data[i * 3 + c] = static_cast<float>(blurred.v[i]);
  }
  return out;
}

/// Separable convolution keeping only fully covered positions; output size
/// shrinks by (size-1) in each dimension.
inline Plane filter_valid(const Plane& in, const std::vector<double>& kernel) {
  const int n = static_cast<int>(kernel.size());
  require(in.width >= n && in.height >= n, errc::usage,
          "filter_valid: plane smaller than the kernel");
  Plane tmp = Plane::zeros(in.width - n + 1, in.height);
  for (int y = 0; y < in.height; ++y) {
    const double* row = in.v.data() + static_cast<std::size_t>(y) * in.width;
    double* orow = tmp.v.data() + static_cast<std::size_t>(y) * tmp.width;
    for (int x = 0; x < tmp.width; ++x) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += kernel[i] * row[x + i];
      orow[x] = s;
    }
  }
  Plane out = Plane::zeros(tmp.width, in.height - n + 1);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += kernel[i] * tmp.at(x, y + i);
      out.at(x, y) = s;
    }
  }
  return out;
}

/// Keep every second row/column (indices 0, 2, 4, ...).
inline Plane downsample2(const Plane& in) {
  Plane out = Plane::zeros((in.width + 1) / 2, (in.height + 1) / 2);
  for (int y = 0; y < out.height; ++y)
    for (int x = 0; x < out.width; ++x) out.at(x, y) = in.at(2 * x, 2 * y);
  return out;
}

}  // namespace hdrqa

#endif  // HDRQA_CONVOLVE_HPP
