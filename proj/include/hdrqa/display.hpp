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

// Dual-modulation display signal chain: a projector drives a low-resolution
// luminance field behind an LCD, and the emitted light is the product of the
// two modulations.
//
//   Y            normalized luminance of the input frame
//   Y_projector  sqrt(Y)                     (even split of dynamic range)
//   Y_lightfield Gaussian PSF of Y_projector (12x12, sigma 2)
//   RGB_LCD      Reinhard tone map of the input
//   LCD          clamp(RGB_LCD / Y_lightfield, 0, 1)
//   emitted      Y_lightfield * luminance(LCD), scaled to the display peak

#ifndef HDRQA_DISPLAY_HPP
#define HDRQA_DISPLAY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "hdrqa/adapters.hpp"
#include "hdrqa/convolve.hpp"
#include "hdrqa/error.hpp"
#include "hdrqa/frame.hpp"

namespace hdrqa {

inline constexpr double kReinhardLogDelta = 1e-6;
inline constexpr double kLcdDivisionGuard = 1e-4;
// Overshoot below this is round-off (drives are stored in single precision
// and a unit lightfield sums to 1 only up to rounding), not real clamping;
// the counter ignores it. Genuine clamping overshoots by >= 1e-3.
inline constexpr double kLcdClampCountSlack = 1e-6;

/// Global photographic tone map. The white point defaults to the scene
/// maximum (the brightest pixel lands exactly on 1); pass a key-scaled
/// luminance via `white_point` to override. RGB scales by L_display/L so
/// chromaticity is preserved; channels are clamped into [0,1] afterwards.
/// An all-black frame maps to all black.
inline HdrFrame reinhard_tonemap(const HdrFrame& frame, double key = 0.18,
                                 double white_point = 0.0) {
  require(key > 0.0, errc::usage, "reinhard_tonemap: key must be positive");
  LumaPlane luma = rgb_to_luminance(frame);

  double log_sum = 0.0;
  for (double l : luma.v) log_sum += std::log(kReinhardLogDelta + l);
  double log_avg = std::exp(log_sum / static_cast<double>(luma.v.size()));

  double l_white = white_point > 0.0 ? key * white_point / log_avg : 0.0;
  std::vector<double> scaled(luma.v.size());
  for (std::size_t i = 0; i < luma.v.size(); ++i) {
    scaled[i] = key * luma.v[i] / log_avg;
    if (white_point <= 0.0) l_white = std::max(l_white, scaled[i]);
  }

  HdrFrame out = frame;
  if (l_white <= 0.0) {  // no light anywhere
    for (float& s : out.data) s = 0.0f;
    return out;
  }
  const double lw2 = l_white * l_white;
  for (std::size_t i = 0; i < luma.v.size(); ++i) {
    double ls = scaled[i];
    double ld = ls * (1.0 + ls / lw2) / (1.0 + ls);
    double ratio = luma.v[i] > 0.0 ? ld / luma.v[i] : 0.0;
    for (int c = 0; c < 3; ++c) {
      double v = out.data[i * 3 + c] * ratio;
      out.data[i * 3 + c] = static_cast<float>(std::clamp(v, 0.0, 1.0));
    }
  }
  return out;
}

struct DisplaySignals {
  Plane luminance;    // Y, normalized to [0,1]
  Plane projector;    // Y^0.5, the projector drive
  Plane lightfield;   // projector drive through the PSF
  HdrFrame lcd;       // LCD drive, [0,1]
  LumaPlane emitted;  // filled by simulate_emitted
  std::size_t lcd_samples_clamped = 0;

  double clamp_fraction() const {
    std::size_t total = lcd.data.size();
    return total == 0 ? 0.0 : static_cast<double>(lcd_samples_clamped) / static_cast<double>(total);
  }
};

struct SplitOptions {
  int psf_size = 12;
  double psf_sigma = 2.0;
  double key = 0.18;
  double white_point = 0.0;    // 0: scene maximum
  double luminance_max = 0.0;  // 0: per-frame max; else a sequence-wide constant
};

/// Split a frame into projector and LCD drives. LCD samples that the
/// division pushes above 1 are clamped and counted.
inline DisplaySignals split_signal(const HdrFrame& frame, const SplitOptions& opt = {}) {
  require(opt.psf_size >= 1 && opt.psf_sigma > 0.0, errc::usage, "split_signal: bad PSF");
  DisplaySignals s;

  LumaPlane luma = rgb_to_luminance(frame);
  double m = opt.luminance_max > 0.0 ? opt.luminance_max : luma.max_value();
  s.luminance = Plane::zeros(frame.width, frame.height);
  if (m > 0.0)
    for (std::size_t i = 0; i < luma.v.size(); ++i)
      s.luminance.v[i] = std::min(luma.v[i] / m, 1.0);

  s.projector = s.luminance;
  for (double& y : s.projector.v) y = std::sqrt(y);

  s.lightfield = gaussian_blur_plane(s.projector, opt.psf_size, opt.psf_sigma);

  s.lcd = reinhard_tonemap(frame, opt.key, opt.white_point);
  for (std::size_t i = 0; i < s.lightfield.v.size(); ++i) {
    double denom = std::max(s.lightfield.v[i], kLcdDivisionGuard);
    for (int c = 0; c < 3; ++c) {
      double v = s.lcd.data[i * 3 + c] / denom;
      if (v > 1.0) {
        if (v > 1.0 + kLcdClampCountSlack) ++s.lcd_samples_clamped;
        v = 1.0;
      }
      s.lcd.data[i * 3 + c] = static_cast<float>(std::max(v, 0.0));
    }
  }
  return s;
}

/// Emitted light: lightfield times LCD luminance, scaled so the sequence
/// maximum hits the display peak, floored at the black level. Pass the
/// sequence-wide raw maximum via `raw_max` when processing multiple frames;
/// with raw_max == 0 the frame's own maximum is used. A zero maximum (black
/// input) yields the black level everywhere.
inline LumaPlane simulate_emitted(DisplaySignals& signals, const DisplayModel& model = {},
                                  double raw_max = 0.0) {
  model.validate();
  LumaPlane raw;
  raw.width = signals.lightfield.width;
  raw.height = signals.lightfield.height;
  raw.units = LumaUnits::absolute_cd_m2;
  raw.v.resize(signals.lightfield.v.size());
  for (std::size_t i = 0; i < raw.v.size(); ++i) {
    double lcd_luma = luminance_of(signals.lcd.data[i * 3 + 0], signals.lcd.data[i * 3 + 1],
                                   signals.lcd.data[i * 3 + 2]);
    raw.v[i] = signals.lightfield.v[i] * lcd_luma;
  }
  double m = raw_max > 0.0 ? raw_max : *std::max_element(raw.v.begin(), raw.v.end());
  const double black = model.black();
  for (double& x : raw.v) x = m > 0.0 ? std::max(x / m * model.peak, black) : black;
  signals.emitted = raw;
  return raw;
}

/// Raw (unscaled) emitted product; the sequence pre-pass uses its maximum.
inline double emitted_raw_max(const DisplaySignals& signals) {
  double m = 0.0;
  for (std::size_t i = 0; i < signals.lightfield.v.size(); ++i) {
    double lcd_luma = luminance_of(signals.lcd.data[i * 3 + 0], signals.lcd.data[i * 3 + 1],
                                   signals.lcd.data[i * 3 + 2]);
    m = std::max(m, signals.lightfield.v[i] * lcd_luma);
  }
  return m;
}

}  // namespace hdrqa

#endif  // HDRQA_DISPLAY_HPP
