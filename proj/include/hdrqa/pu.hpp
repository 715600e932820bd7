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

// Perceptually-uniform luminance encoding as a tabulated transfer: a strictly
// increasing map from log10 luminance (cd/m^2) to code values, interpolated
// piecewise-linearly. The shipped default derives from the SMPTE ST 2084
// perceptual quantizer (Barten CSF based), renormalized so the LDR range
// 0.1..80 cd/m^2 spans approximately 0..255. Any table with the same
// normalization convention can be substituted from a two-column text file.

#ifndef HDRQA_PU_HPP
#define HDRQA_PU_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hdrqa/error.hpp"
#include "hdrqa/frame.hpp"

namespace hdrqa {

struct PuEncodeStats {
  std::size_t below_domain = 0;
  std::size_t above_domain = 0;
};

struct PuTransfer {
  std::vector<double> log_lum;  // log10 cd/m^2, strictly increasing
  std::vector<double> value;    // code values, strictly increasing

  double domain_min() const { return std::pow(10.0, log_lum.front()); }
  double domain_max() const { return std::pow(10.0, log_lum.back()); }

  void validate() const {
    require(log_lum.size() == value.size(), errc::format, "pu table: column length mismatch");
    require(log_lum.size() >= 2, errc::format, "pu table: needs at least two nodes");
    for (std::size_t i = 1; i < log_lum.size(); ++i) {
      require(log_lum[i] > log_lum[i - 1], errc::format,
              "pu table: log-luminance column not strictly increasing at node " +
                  std::to_string(i));
      require(value[i] > value[i - 1], errc::format,
              "pu table: code column not strictly increasing at node " + std::to_string(i));
    }
  }

  /// Lookup in log10-luminance space; inputs outside the table clamp to the
  /// end nodes (callers count those through pu_encode's stats).
  double encode_log10(double lx) const {
    if (lx <= log_lum.front()) return value.front();
    if (lx >= log_lum.back()) return value.back();
    std::size_t hi = static_cast<std::size_t>(
        std::upper_bound(log_lum.begin(), log_lum.end(), lx) - log_lum.begin());
    std::size_t lo = hi - 1;
    double t = (lx - log_lum[lo]) / (log_lum[hi] - log_lum[lo]);
    return value[lo] + t * (value[hi] - value[lo]);
  }

  double encode(double luminance_cd_m2) const {
    return encode_log10(std::log10(std::max(luminance_cd_m2, 1e-300)));
  }
};

namespace detail {

inline double pq_inverse_eotf(double luminance_cd_m2) {
  constexpr double m1 = 0.1593017578125;
  constexpr double m2 = 78.84375;
  constexpr double c1 = 0.8359375;
  constexpr double c2 = 18.8515625;
  constexpr double c3 = 18.6875;
  double y = std::pow(std::max(luminance_cd_m2, 0.0) / 10000.0, m1);
  return std::pow((c1 + c2 * y) / (1.0 + c3 * y), m2);
}

}  // namespace detail

/// 261 log-spaced nodes over [1e-5, 1e8] cd/m^2 (20 per decade), anchored so
/// P(0.1) = 0 and P(80) = 255.
inline PuTransfer default_pu_transfer() {
  PuTransfer t;
  const double lo = detail::pq_inverse_eotf(0.1);
  const double hi = detail::pq_inverse_eotf(80.0);
  const double scale = 255.0 / (hi - lo);
  for (int i = 0; i <= 260; ++i) {
    double lx = -5.0 + i * 0.05;
    t.log_lum.push_back(lx);
    t.value.push_back((detail::pq_inverse_eotf(std::pow(10.0, lx)) - lo) * scale);
  }
  t.validate();
  return t;
}

/// Two whitespace-separated columns per line: log10 luminance, code value.
/// '#' starts a comment. Monotonicity is validated on load.
inline PuTransfer load_pu_transfer(const std::string& path) {
  std::ifstream f(path);
  require(f.good(), errc::io, "cannot open pu table '" + path + "'");
  PuTransfer t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    double lx, v;
    if (!(ss >> lx)) continue;  // blank line
    require(static_cast<bool>(ss >> v), errc::format,
            "pu table '" + path + "': line " + std::to_string(lineno) + " has a single column");
    double extra;
    require(!(ss >> extra), errc::format,
            "pu table '" + path + "': line " + std::to_string(lineno) + " has extra columns");
    t.log_lum.push_back(lx);
    t.value.push_back(v);
  }
  t.validate();
  return t;
}

inline void save_pu_transfer(const PuTransfer& t, const std::string& path) {
  std::ofstream f(path, std::ios::trunc);
  require(f.good(), errc::io, "cannot open '" + path + "' for writing");
  f << "# log10(cd/m^2)  code\n";
  char buf[80];
  for (std::size_t i = 0; i < t.log_lum.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.10g %.10g\n", t.log_lum[i], t.value[i]);
    f << buf;
  }
  require(f.good(), errc::io, "short write to '" + path + "'");
}

/// Per-pixel table lookup. Input must be absolute luminance; out-of-domain
/// pixels clamp to the end nodes and are counted in `stats`.
inline Plane pu_encode(const LumaPlane& luminance, const PuTransfer& transfer,
                       PuEncodeStats* stats = nullptr) {
  require(luminance.units == LumaUnits::absolute_cd_m2, errc::usage,
          "pu_encode: input must be absolute luminance (cd/m^2)");
  Plane out;
  out.width = luminance.width;
  out.height = luminance.height;
  out.v.resize(luminance.v.size());
  const double lo = transfer.log_lum.front();
  const double hi = transfer.log_lum.back();
  for (std::size_t i = 0; i < luminance.v.size(); ++i) {
    double lx = std::log10(std::max(luminance.v[i], 1e-300));
    if (stats) {
      if (lx < lo) ++stats->below_domain;
      if (lx > hi) ++stats->above_domain;
    }
    out.v[i] = transfer.encode_log10(lx);
  }
  return out;
}

}  // namespace hdrqa

#endif  // HDRQA_PU_HPP
