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

// Adapters that lift the LDR metric kernels to HDR sequences.
//
// PU route: luminance -> display-referred absolute cd/m^2 -> perceptually
// uniform codes -> metric, with the metric's dynamic range set to
// PU(peak) - PU(black).
//
// ME route: a set of virtual exposures renders each frame to 8-bit LDR
// planes; the metric runs per exposure at peak 255 and the scores average.
//
// Both routes derive their normalization (sequence maximum, exposure
// anchors) from the REFERENCE stream only, so a distortion cannot shift its
// own evaluation anchor.

#ifndef HDRQA_ADAPTERS_HPP
#define HDRQA_ADAPTERS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hdrqa/error.hpp"
#include "hdrqa/frame.hpp"
#include "hdrqa/metrics.hpp"
#include "hdrqa/parallel.hpp"
#include "hdrqa/pu.hpp"

namespace hdrqa {

/// Display-referred luminance model: 2700 cd/m^2 peak through a 2000:1
/// modulator, black floor peak/contrast unless overridden.
struct DisplayModel {
  double peak = 2700.0;
  double contrast = 2000.0;
  double black_override = 0.0;  // 0 means "use peak/contrast"

  double black() const { return black_override > 0.0 ? black_override : peak / contrast; }

  void validate() const {
    require(peak > 0.0 && contrast > 1.0, errc::usage, "display model: peak and contrast invalid");
    require(peak > black() && black() > 0.0, errc::usage,
            "display model: requires peak > black > 0");
  }
};

/// L = clamp(relative * peak, black, peak).
inline LumaPlane to_absolute_luminance(const LumaPlane& relative, const DisplayModel& model) {
  require(relative.units == LumaUnits::relative, errc::usage,
          "to_absolute_luminance: input already absolute");
  model.validate();
  LumaPlane out = relative;
  out.units = LumaUnits::absolute_cd_m2;
  const double black = model.black();
  for (double& x : out.v) x = std::clamp(x * model.peak, black, model.peak);
  return out;
}

struct ExposureSet {
  std::vector<double> stops;  // log2 exposure values, strictly increasing
  double gamma = 2.2;

  std::size_t count() const { return stops.size(); }
  void validate() const {
    require(!stops.empty(), errc::usage, "exposure set: empty");
    for (std::size_t i = 1; i < stops.size(); ++i)
      require(stops[i] > stops[i - 1], errc::usage, "exposure set: stops not strictly increasing");
  }
};

/// Exposure anchors from the reference stream: the lowest stop maps the
/// sequence maximum to 1.0, the highest maps the dark_percentile quantile of
/// the nonzero luminances to 1.0, and n stops space evenly between them.
/// A zero-span sequence (constant luminance) collapses to one exposure.
inline ExposureSet derive_exposures(const std::vector<HdrFrame>& reference, int n = 5,
                                    double gamma = 2.2, double dark_percentile = 0.01) {
  require(!reference.empty(), errc::usage, "derive_exposures: empty sequence");
  require(n >= 1, errc::usage, "derive_exposures: need at least one exposure");
  require(dark_percentile > 0.0 && dark_percentile < 1.0, errc::usage,
          "derive_exposures: percentile must lie in (0,1)");

  std::vector<double> nonzero;
  double max_luma = 0.0;
  for (const HdrFrame& f : reference) {
    for (std::size_t i = 0; i < f.pixel_count(); ++i) {
      double l = luminance_of(f.data[i * 3], f.data[i * 3 + 1], f.data[i * 3 + 2]);
      max_luma = std::max(max_luma, l);
      if (l > 0.0) nonzero.push_back(l);
    }
  }
  require(max_luma > 0.0 && !nonzero.empty(), errc::numeric,
          "derive_exposures: sequence carries no light");

  std::size_t k = static_cast<std::size_t>(dark_percentile * (nonzero.size() - 1));
  std::nth_element(nonzero.begin(), nonzero.begin() + k, nonzero.end());
  double dark = nonzero[k];

  double e_min = -std::log2(max_luma);
  double e_max = -std::log2(dark);
  ExposureSet set;
  set.gamma = gamma;
  if (!(e_max > e_min) || n == 1) {
    set.stops = {e_min};
  } else {
    for (int i = 0; i < n; ++i)
      set.stops.push_back(e_min + (e_max - e_min) * i / static_cast<double>(n - 1));
  }
  set.validate();
  return set;
}

/// Render one 8-bit exposure: code = round(255 * clamp(L * 2^stops, 0, 1)^(1/gamma)).
inline Plane expose_ldr(const LumaPlane& luminance, double stops, double gamma) {
  Plane out;
  out.width = luminance.width;
  out.height = luminance.height;
  out.v.resize(luminance.v.size());
  const double gain = std::exp2(stops);
  const double inv_gamma = 1.0 / gamma;
  for (std::size_t i = 0; i < luminance.v.size(); ++i) {
    double v = std::clamp(luminance.v[i] * gain, 0.0, 1.0);
    out.v[i] = static_cast<double>(std::lround(255.0 * std::pow(v, inv_gamma)));
  }
  return out;
}

inline std::vector<Plane> multi_exposure(const HdrFrame& frame, const ExposureSet& exposures) {
  exposures.validate();
  LumaPlane luma = rgb_to_luminance(frame);
  std::vector<Plane> out;
  out.reserve(exposures.stops.size());
  for (double e : exposures.stops) out.push_back(expose_ldr(luma, e, exposures.gamma));
  return out;
}

namespace detail {

inline double run_metric(MetricKind kind, const Plane& ref, const Plane& dist, double range,
                         const SsimOptions& ssim_opt) {
  switch (kind) {
    case MetricKind::psnr: return psnr(ref, dist, range);
    case MetricKind::ssim: return ssim(ref, dist, range, ssim_opt);
    case MetricKind::vif: return vif(ref, dist);
  }
  fail(errc::usage, "run_metric: bad metric kind");
}

inline void check_paired_sequences(const std::vector<HdrFrame>& ref,
                                   const std::vector<HdrFrame>& dist) {
  require(!ref.empty(), errc::usage, "metric adapter: empty sequence");
  require(ref.size() == dist.size(), errc::usage, "metric adapter: frame count mismatch");
  for (std::size_t i = 0; i < ref.size(); ++i)
    require(ref[i].same_size(dist[i]), errc::usage,
            "metric adapter: frame " + std::to_string(i) + " geometry mismatch");
}

inline double sequence_max_luminance(const std::vector<HdrFrame>& frames) {
  double m = 0.0;
  for (const HdrFrame& f : frames)
    for (std::size_t i = 0; i < f.pixel_count(); ++i)
      m = std::max(m, luminance_of(f.data[i * 3], f.data[i * 3 + 1], f.data[i * 3 + 2]));
  return m;
}

}  // namespace detail

struct PuAdapterConfig {
  DisplayModel display;
  SsimOptions ssim;
  int threads = 1;
};

inline MetricResult pu_metric(const std::vector<HdrFrame>& ref, const std::vector<HdrFrame>& dist,
                              MetricKind kind, const PuTransfer& transfer,
                              const PuAdapterConfig& cfg = {}) {
  detail::check_paired_sequences(ref, dist);
  transfer.validate();
  cfg.display.validate();

  double ref_max = detail::sequence_max_luminance(ref);
  require(ref_max > 0.0, errc::numeric, "pu_metric: reference sequence carries no light");
  const double range =
      transfer.encode(cfg.display.peak) - transfer.encode(cfg.display.black());

  MetricResult result;
  result.metric = metric_name(kind);
  result.dynamic_range = range;
  result.per_frame.resize(ref.size());
  parallel_for(ref.size(), cfg.threads, [&](std::size_t i) {
    auto encode = [&](const HdrFrame& f) {
      LumaPlane rel = rgb_to_luminance(f);
      for (double& x : rel.v) x /= ref_max;  // reference-anchored normalization
      return pu_encode(to_absolute_luminance(rel, cfg.display), transfer);
    };
    result.per_frame[i] = detail::run_metric(kind, encode(ref[i]), encode(dist[i]), range, cfg.ssim);
  });
  result.sequence = aggregate(result.per_frame);
  return result;
}

struct MeAdapterConfig {
  int exposures = 5;
  double gamma = 2.2;
  double dark_percentile = 0.01;
  SsimOptions ssim;
  int threads = 1;
};

/// Multi-exposure adapter. The exposure set comes from the reference stream
/// (or `fixed` when supplied) and is reused verbatim for the distorted one.
inline MetricResult me_metric(const std::vector<HdrFrame>& ref, const std::vector<HdrFrame>& dist,
                              MetricKind kind, const MeAdapterConfig& cfg = {},
                              const ExposureSet* fixed = nullptr) {
  detail::check_paired_sequences(ref, dist);
  ExposureSet set =
      fixed ? *fixed : derive_exposures(ref, cfg.exposures, cfg.gamma, cfg.dark_percentile);
  set.validate();

  MetricResult result;
  result.metric = metric_name(kind);
  result.dynamic_range = 255.0;
  result.per_frame.resize(ref.size());
  parallel_for(ref.size(), cfg.threads, [&](std::size_t i) {
    std::vector<Plane> re = multi_exposure(ref[i], set);
    std::vector<Plane> de = multi_exposure(dist[i], set);
    std::vector<double> scores(re.size());
    for (std::size_t e = 0; e < re.size(); ++e)
      scores[e] = detail::run_metric(kind, re[e], de[e], 255.0, cfg.ssim);
    result.per_frame[i] = aggregate(scores);
  });
  result.sequence = aggregate(result.per_frame);
  return result;
}

}  // namespace hdrqa

#endif  // HDRQA_ADAPTERS_HPP
