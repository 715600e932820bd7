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

// Test-only helpers: deterministic synthetic content and independent oracle
// implementations (direct per-window statistics, brute-force 2-D
// convolution, counting-based ranks). The oracles deliberately avoid the
// library's separable-filter code paths.

#ifndef HDRQA_TEST_UTIL_HPP
#define HDRQA_TEST_UTIL_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "hdrqa/convolve.hpp"
#include "hdrqa/frame.hpp"
#include "hdrqa/rng.hpp"

namespace hdrqa::testutil {

inline HdrFrame random_frame(int w, int h, std::uint64_t seed, float lo = 0.0f, float hi = 1.0f) {
  Xoshiro256pp rng(seed);
  HdrFrame f;
  f.width = w;
  f.height = h;
  f.data.resize(static_cast<std::size_t>(w) * h * 3);
  for (float& v : f.data) v = lo + static_cast<float>(rng.next_unit()) * (hi - lo);
  return f;
}

inline Plane random_plane(int w, int h, std::uint64_t seed, double lo = 0.0, double hi = 1.0) {
  Xoshiro256pp rng(seed);
  Plane p = Plane::zeros(w, h);
  for (double& v : p.v) v = lo + rng.next_unit() * (hi - lo);
  return p;
}

/// Textured HDR test frame: an exposure ramp times a multi-frequency pattern
/// plus seeded grain, luminance roughly in [0.05, 8].
inline HdrFrame synthetic_hdr_frame(int w, int h, std::uint64_t seed, int t = 0) {
  Xoshiro256pp rng(seed + 977 * static_cast<std::uint64_t>(t + 1));
  HdrFrame f;
  f.width = w;
  f.height = h;
  f.data.resize(static_cast<std::size_t>(w) * h * 3);
  const double pi = 3.14159265358979323846;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double ramp = std::exp2(4.0 * x / w);  // 1 .. 16
      double tex = 0.62 + 0.22 * std::sin(2.0 * pi * (x + 3.0 * t) / 7.0) *
                              std::sin(2.0 * pi * y / 9.0) +
                   0.16 * std::sin(2.0 * pi * (x + y) / 23.0);
      double grain = 1.0 + 0.08 * (rng.next_unit() - 0.5);
      double luma = 0.05 + 0.45 * ramp * tex * grain;
      double warm = 0.85 + 0.3 * (static_cast<double>(y) / h);
      std::size_t i = (static_cast<std::size_t>(y) * w + x) * 3;
      f.data[i + 0] = static_cast<float>(luma * warm);
      f.data[i + 1] = static_cast<float>(luma);
      f.data[i + 2] = static_cast<float>(luma * (1.7 - warm));
    }
  }
  return f;
}

inline std::vector<HdrFrame> synthetic_sequence(int w, int h, int frames, std::uint64_t seed) {
  std::vector<HdrFrame> out;
  for (int t = 0; t < frames; ++t) out.push_back(synthetic_hdr_frame(w, h, seed, t));
  return out;
}

/// Brute-force 2-D convolution with edge replication, full kernel, no
/// separability assumption.
inline Plane conv2d_replicate_oracle(const Plane& in, const std::vector<std::vector<double>>& k) {
  const int n = static_cast<int>(k.size());
  const int anchor = (n - 1) / 2;
  Plane out = Plane::zeros(in.width, in.height);
  for (int y = 0; y < in.height; ++y)
    for (int x = 0; x < in.width; ++x) {
      double s = 0.0;
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          int sx = std::clamp(x + i - anchor, 0, in.width - 1);
          int sy = std::clamp(y + j - anchor, 0, in.height - 1);
          s += k[j][i] * in.at(sx, sy);
        }
      out.at(x, y) = s;
    }
  return out;
}

/// Direct per-window weighted statistics, then the structural-similarity
/// closed form; mean over valid window positions.
inline double ssim_oracle(const Plane& ref, const Plane& dist, double dynamic_range,
                          double k1 = 0.01, double k2 = 0.03, int window = 11,
                          double window_sigma = 1.5) {
  std::vector<std::vector<double>> w = gaussian_kernel_2d(window, window_sigma);
  const double c1 = (k1 * dynamic_range) * (k1 * dynamic_range);
  const double c2 = (k2 * dynamic_range) * (k2 * dynamic_range);
  double acc = 0.0;
  std::size_t count = 0;
  for (int y = 0; y + window <= ref.height; ++y)
    for (int x = 0; x + window <= ref.width; ++x) {
      double mx = 0, my = 0, sxx = 0, syy = 0, sxy = 0;
      for (int j = 0; j < window; ++j)
        for (int i = 0; i < window; ++i) {
          double a = ref.at(x + i, y + j), b = dist.at(x + i, y + j);
          mx += w[j][i] * a;
          my += w[j][i] * b;
          sxx += w[j][i] * a * a;
          syy += w[j][i] * b * b;
          sxy += w[j][i] * a * b;
        }
      double vx = sxx - mx * mx, vy = syy - my * my, cxy = sxy - mx * my;
      acc += ((2 * mx * my + c1) * (2 * cxy + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
      ++count;
    }
  return acc / static_cast<double>(count);
}

namespace vif_detail {

inline Plane conv2d_valid(const Plane& in, const std::vector<std::vector<double>>& k) {
  const int n = static_cast<int>(k.size());
  Plane out = Plane::zeros(in.width - n + 1, in.height - n + 1);
  for (int y = 0; y < out.height; ++y)
    for (int x = 0; x < out.width; ++x) {
      double s = 0.0;
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) s += k[j][i] * in.at(x + i, y + j);
      out.at(x, y) = s;
    }
  return out;
}

inline Plane down2(const Plane& in) {
  Plane out = Plane::zeros((in.width + 1) / 2, (in.height + 1) / 2);
  for (int y = 0; y < out.height; ++y)
    for (int x = 0; x < out.width; ++x) out.at(x, y) = in.at(2 * x, 2 * y);
  return out;
}

}  // namespace vif_detail

struct VifOracleStats {
  double num = 0.0;
  double den = 0.0;
  double max_gain = 0.0;
  double min_gain = 0.0;
};

/// Brute-force pixel-domain VIF: explicit window loops at every scale.
inline VifOracleStats vif_oracle_stats(Plane ref, Plane dist) {
  VifOracleStats st;
  st.num = 0.0;
  bool first_window = true;
  for (int scale = 1; scale <= 4; ++scale) {
    const int n = (1 << (5 - scale)) + 1;
    std::vector<std::vector<double>> w = gaussian_kernel_2d(n, n / 5.0);
    if (scale > 1) {
      ref = vif_detail::down2(vif_detail::conv2d_valid(ref, w));
      dist = vif_detail::down2(vif_detail::conv2d_valid(dist, w));
    }
    for (int y = 0; y + n <= ref.height; ++y)
      for (int x = 0; x + n <= ref.width; ++x) {
        double mr = 0, md = 0, srr = 0, sdd = 0, srd = 0;
        for (int j = 0; j < n; ++j)
          for (int i = 0; i < n; ++i) {
            double a = ref.at(x + i, y + j), b = dist.at(x + i, y + j);
            mr += w[j][i] * a;
            md += w[j][i] * b;
            srr += w[j][i] * a * a;
            sdd += w[j][i] * b * b;
            srd += w[j][i] * a * b;
          }
        double sr = std::max(srr - mr * mr, 0.0);
        double sd = std::max(sdd - md * md, 0.0);
        double cov = srd - mr * md;
        double g = cov / (sr + 1e-10);
        double sv = std::max(sd - g * cov, 0.0);
        st.num += std::log2(1.0 + g * g * sr / (sv + 2.0));
        st.den += std::log2(1.0 + sr / 2.0);
        if (first_window) {
          st.max_gain = st.min_gain = g;
          first_window = false;
        } else {
          st.max_gain = std::max(st.max_gain, g);
          st.min_gain = std::min(st.min_gain, g);
        }
      }
  }
  return st;
}

inline double vif_oracle(const Plane& ref, const Plane& dist) {
  VifOracleStats st = vif_oracle_stats(ref, dist);
  return st.num / st.den;
}

/// Pearson from raw moment sums (single pass, no centering).
inline double pearson_oracle(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

/// Average ranks by counting comparisons (quadratic, order-free).
inline std::vector<double> ranks_oracle(const std::vector<double>& x) {
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::size_t less = 0, equal = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] < x[i]) ++less;
      if (x[j] == x[i]) ++equal;
    }
    r[i] = static_cast<double>(less) + (static_cast<double>(equal) - 1.0) / 2.0 + 1.0;
  }
  return r;
}

inline double spearman_oracle(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson_oracle(ranks_oracle(x), ranks_oracle(y));
}

}  // namespace hdrqa::testutil

#endif  // HDRQA_TEST_UTIL_HPP
