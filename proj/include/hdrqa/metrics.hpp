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

// Full-reference quality kernels on single-channel planes.
//
//   PSNR  10*log10(peak^2/MSE), capped at 100 dB when MSE == 0.
//   SSIM  11x11 Gaussian window (sigma 1.5), C1=(k1 L)^2, C2=(k2 L)^2,
//         valid-region windowing, mean over window positions.
//   VIF   pixel-domain variant over 4 dyadic scales; Gaussian windows of
//         size 2^(5-s)+1 with sigma size/5, sigma_n^2 = 2.

#ifndef HDRQA_METRICS_HPP
#define HDRQA_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hdrqa/convolve.hpp"
#include "hdrqa/error.hpp"
#include "hdrqa/frame.hpp"

namespace hdrqa {

enum class MetricKind { psnr, ssim, vif };

inline const char* metric_name(MetricKind k) {
  switch (k) {
    case MetricKind::psnr: return "psnr";
    case MetricKind::ssim: return "ssim";
    case MetricKind::vif: return "vif";
  }
  return "?";
}

inline MetricKind parse_metric_kind(const std::string& s) {
  if (s == "psnr") return MetricKind::psnr;
  if (s == "ssim") return MetricKind::ssim;
  if (s == "vif") return MetricKind::vif;
  fail(errc::usage, "unknown metric '" + s + "'");
}

inline constexpr double kPsnrCapDb = 100.0;
inline constexpr double kVifNoiseVariance = 2.0;
inline constexpr double kVifGainEpsilon = 1e-10;

struct MetricResult {
  std::string metric;
  std::vector<double> per_frame;
  double sequence = 0.0;       // arithmetic mean of per_frame
  double dynamic_range = 0.0;  // peak / L parameter the kernels saw
};

/// Arithmetic mean; the only sequence aggregation used.
inline double aggregate(const std::vector<double>& per_frame) {
  require(!per_frame.empty(), errc::usage, "aggregate: empty score list");
  double s = 0.0;
  for (double x : per_frame) s += x;
  return s / static_cast<double>(per_frame.size());
}

inline double metric_identity_value(MetricKind k) {
  return k == MetricKind::psnr ? kPsnrCapDb : 1.0;
}

inline double psnr(const Plane& ref, const Plane& dist, double peak) {
  require(ref.same_size(dist), errc::usage, "psnr: dimension mismatch");
  require(ref.size() > 0, errc::usage, "psnr: empty plane");
  require(peak > 0.0, errc::usage, "psnr: peak must be positive");
  double sse = 0.0;
  for (std::size_t i = 0; i < ref.v.size(); ++i) {
    double d = ref.v[i] - dist.v[i];
    sse += d * d;
  }
  double mse = sse / static_cast<double>(ref.v.size());
  if (mse == 0.0) return kPsnrCapDb;
  return std::min(kPsnrCapDb, 10.0 * std::log10(peak * peak / mse));
}

struct SsimOptions {
  double k1 = 0.01;
  double k2 = 0.03;
  int window = 11;
  double window_sigma = 1.5;
};

inline double ssim(const Plane& ref, const Plane& dist, double dynamic_range,
                   const SsimOptions& opt = {}) {
  require(ref.same_size(dist), errc::usage, "ssim: dimension mismatch");
  require(ref.width >= opt.window && ref.height >= opt.window, errc::usage,
          "ssim: plane smaller than the window");
  require(dynamic_range > 0.0, errc::usage, "ssim: dynamic range must be positive");

  const double c1 = (opt.k1 * dynamic_range) * (opt.k1 * dynamic_range);
  const double c2 = (opt.k2 * dynamic_range) * (opt.k2 * dynamic_range);
  std::vector<double> win = gaussian_kernel_1d(opt.window, opt.window_sigma);

  Plane xx = ref, yy = dist, x2 = ref, y2 = dist, xy = ref;
  for (std::size_t i = 0; i < ref.v.size(); ++i) {
    x2.v[i] = ref.v[i] * ref.v[i];
    y2.v[i] = dist.v[i] * dist.v[i];
    xy.v[i] = ref.v[i] * dist.v[i];
  }
  Plane mu_x = filter_valid(xx, win);
  Plane mu_y = filter_valid(yy, win);
  Plane m_x2 = filter_valid(x2, win);
  Plane m_y2 = filter_valid(y2, win);
  Plane m_xy = filter_valid(xy, win);

  double acc = 0.0;
  for (std::size_t i = 0; i < mu_x.v.size(); ++i) {
    double mx = mu_x.v[i], my = mu_y.v[i];
    double vx = m_x2.v[i] - mx * mx;
    double vy = m_y2.v[i] - my * my;
    double cxy = m_xy.v[i] - mx * my;
    double num = (2.0 * mx * my + c1) * (2.0 * cxy + c2);
    double den = (mx * mx + my * my + c1) * (vx + vy + c2);
    acc += num / den;
  }
  return acc / static_cast<double>(mu_x.v.size());
}

/// Pixel-domain VIF. Errors with errc::numeric when the reference carries no
/// information (all-constant), for which the ratio is undefined.
inline double vif(const Plane& ref, const Plane& dist) {
  require(ref.same_size(dist), errc::usage, "vif: dimension mismatch");
  require(ref.min_value() != ref.max_value(), errc::numeric,
          "vif: undefined for an all-constant reference");

  Plane r = ref, d = dist;
  double num = 0.0, den = 0.0;
  for (int scale = 1; scale <= 4; ++scale) {
    const int n = (1 << (5 - scale)) + 1;
    std::vector<double> win = gaussian_kernel_1d(n, n / 5.0);

    if (scale > 1) {
      require(r.width >= n && r.height >= n, errc::usage,
              "vif: plane too small for 4 dyadic scales");
      r = downsample2(filter_valid(r, win));
      d = downsample2(filter_valid(d, win));
    }
    require(r.width >= n && r.height >= n, errc::usage, "vif: plane too small for 4 dyadic scales");

    Plane r2 = r, d2 = d, rd = r;
    for (std::size_t i = 0; i < r.v.size(); ++i) {
      r2.v[i] = r.v[i] * r.v[i];
      d2.v[i] = d.v[i] * d.v[i];
      rd.v[i] = r.v[i] * d.v[i];
    }
    Plane mu_r = filter_valid(r, win);
    Plane mu_d = filter_valid(d, win);
    Plane m_r2 = filter_valid(r2, win);
    Plane m_d2 = filter_valid(d2, win);
    Plane m_rd = filter_valid(rd, win);

    for (std::size_t i = 0; i < mu_r.v.size(); ++i) {
      double sr = std::max(m_r2.v[i] - mu_r.v[i] * mu_r.v[i], 0.0);
      double sd = std::max(m_d2.v[i] - mu_d.v[i] * mu_d.v[i], 0.0);
      double srd = m_rd.v[i] - mu_r.v[i] * mu_d.v[i];
      double g = srd / (sr + kVifGainEpsilon);
      double sv = std::max(sd - g * srd, 0.0);
      num += std::log2(1.0 + g * g * sr / (sv + kVifNoiseVariance));
      den += std::log2(1.0 + sr / kVifNoiseVariance);
    }
  }
  if (den <= kVifGainEpsilon)
    fail(errc::numeric, "vif: undefined for an all-constant reference");
  return num / den;
}

}  // namespace hdrqa

#endif  // HDRQA_METRICS_HPP
