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

// Correlation reporting: per metric and per impairment category (the
// non-compression impairments, compression, and everything combined),
// Pearson/Spearman/RMSE of objective scores against MOS, plus scatter series
// and MOS-vs-bitrate series for plotting. Cells that are statistically
// undefined (fewer than 3 points, constant vectors) render blank rather than
// poisoning the rest of the report.

#ifndef HDRQA_REPORT_HPP
#define HDRQA_REPORT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hdrqa/csv.hpp"
#include "hdrqa/error.hpp"
#include "hdrqa/stats.hpp"

namespace hdrqa {

/// Canonical metric row order; HDR-VDP-2 is a reserved row fed by externally
/// computed scores. Unknown labels append after these.
inline const std::vector<std::string>& canonical_metric_labels() {
  static const std::vector<std::string> labels = {
      "HDR-VDP-2",
      "PSNR (PU encoding)",
      "SSIM (PU encoding)",
      "VIF (PU encoding)",
      "PSNR (MultiExposure)",
      "SSIM (MultiExposure)",
      "VIF (MultiExposure)",
  };
  return labels;
}

inline std::string adapter_metric_label(const std::string& metric, const std::string& adapter) {
  std::string upper = metric;
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (adapter == "pu") return upper + " (PU encoding)";
  if (adapter == "me") return upper + " (MultiExposure)";
  return upper + " (" + adapter + ")";
}

struct ClipMeta {
  std::string id;
  std::string sequence;
  std::string impairment;  // awgn, intensity_shift, salt_pepper, gaussian_lpf, compression
  ImpairmentCategory category = ImpairmentCategory::non_compression;
  std::optional<int> qp;
  std::optional<double> bitrate_kbps;
};

/// Objective scores keyed by display label then clip id.
struct ObjectiveScores {
  std::map<std::string, std::map<std::string, double>> by_metric;

  std::vector<std::string> ordered_metrics() const {
    std::vector<std::string> out;
    for (const std::string& l : canonical_metric_labels())
      if (by_metric.count(l)) out.push_back(l);
    for (const auto& [label, scores] : by_metric)
      if (std::find(out.begin(), out.end(), label) == out.end()) out.push_back(label);
    return out;
  }
};

enum class ReportCategory { non_compression = 0, compression = 1, all = 2 };

inline const char* report_category_name(ReportCategory c) {
  switch (c) {
    case ReportCategory::non_compression: return "non_compression";
    case ReportCategory::compression: return "compression";
    case ReportCategory::all: return "all";
  }
  return "?";
}

struct CorrelationCell {
  std::optional<double> pearson;
  std::optional<double> spearman;
  std::optional<double> rmse;
  std::optional<double> rmse_fitted;  // after objective->MOS linear fit, when requested
  int n = 0;
};

struct ScatterPoint {
  std::string clip;
  double objective = 0.0;
  double mos = 0.0;
  double ci = 0.0;
  ImpairmentCategory category = ImpairmentCategory::non_compression;
};

struct RatePoint {
  std::string sequence;
  std::string clip;
  int qp = 0;
  double bitrate_kbps = 0.0;
  double mos = 0.0;
  double ci = 0.0;
};

struct CorrelationReport {
  std::vector<std::string> metrics;  // row order
  std::map<std::string, std::array<CorrelationCell, 3>> cells;
  std::map<std::string, std::vector<ScatterPoint>> scatter;
  std::vector<RatePoint> rate_series;  // compression clips with bitrate metadata
};

/// Join MOS, objective scores and clip metadata. Every clip id present in an
/// objective table must exist in the MOS table and the metadata (and vice
/// versa for metadata/MOS); mismatches are reported by name.
inline CorrelationReport build_report(const MosResult& mos_result,
                                      const ObjectiveScores& objective,
                                      const std::vector<ClipMeta>& clips, bool fit_mos = false) {
  std::map<std::string, const MosEntry*> mos_by_clip;
  for (const MosEntry& e : mos_result.entries) mos_by_clip[e.clip] = &e;
  std::map<std::string, const ClipMeta*> meta_by_clip;
  for (const ClipMeta& c : clips) meta_by_clip[c.id] = &c;

  for (const MosEntry& e : mos_result.entries)
    require(meta_by_clip.count(e.clip), errc::format,
            "report: clip '" + e.clip + "' has scores but no metadata");
  for (const auto& [label, scores] : objective.by_metric)
    for (const auto& [clip, value] : scores)
      require(mos_by_clip.count(clip), errc::format,
              "report: clip '" + clip + "' in objective scores for '" + label +
                  "' has no MOS entry");

  CorrelationReport report;
  report.metrics = objective.ordered_metrics();

  for (const std::string& label : report.metrics) {
    const auto& scores = objective.by_metric.at(label);
    std::array<std::vector<double>, 3> obj, subj;
    std::vector<ScatterPoint> points;

    for (const MosEntry& e : mos_result.entries) {
      auto it = scores.find(e.clip);
      if (it == scores.end()) continue;
      const ClipMeta& meta = *meta_by_clip.at(e.clip);
      ScatterPoint p{e.clip, it->second, e.mos, e.ci95, meta.category};
      points.push_back(p);
      std::size_t cat = meta.category == ImpairmentCategory::compression ? 1 : 0;
      obj[cat].push_back(p.objective);
      subj[cat].push_back(p.mos);
      obj[2].push_back(p.objective);
      subj[2].push_back(p.mos);
    }

    std::array<CorrelationCell, 3> row;
    for (std::size_t cat = 0; cat < 3; ++cat) {
      CorrelationCell& cell = row[cat];
      cell.n = static_cast<int>(obj[cat].size());
      if (cell.n >= 3) {
        try {
          cell.pearson = pearson(obj[cat], subj[cat]);
          cell.spearman = spearman(obj[cat], subj[cat]);
        } catch (const Error&) {
          // constant vector: leave the correlation cells blank
        }
        cell.rmse = rmse(obj[cat], subj[cat]);
        if (fit_mos) {
          try {
            auto [a, b] = linear_fit(obj[cat], subj[cat]);
            std::vector<double> fitted(obj[cat].size());
            for (std::size_t i = 0; i < fitted.size(); ++i) fitted[i] = a * obj[cat][i] + b;
            cell.rmse_fitted = rmse(fitted, subj[cat]);
          } catch (const Error&) {
          }
        }
      }
    }
    report.cells[label] = row;
    report.scatter[label] = std::move(points);
  }

  for (const ClipMeta& c : clips) {
    if (c.category != ImpairmentCategory::compression || !c.qp || !c.bitrate_kbps) continue;
    auto it = mos_by_clip.find(c.id);
    if (it == mos_by_clip.end()) continue;
    report.rate_series.push_back(
        {c.sequence, c.id, *c.qp, *c.bitrate_kbps, it->second->mos, it->second->ci95});
  }
  std::sort(report.rate_series.begin(), report.rate_series.end(),
            [](const RatePoint& a, const RatePoint& b) {
              if (a.sequence != b.sequence) return a.sequence < b.sequence;
              return a.bitrate_kbps < b.bitrate_kbps;
            });
  return report;
}

// ---------------------------------------------------------------------------
// CSV emission

inline std::string opt_cell(const std::optional<double>& v, int precision = 6) {
  return v ? fmt_double(*v, precision) : std::string();
}

/// Wide layout with the three category column groups side by side.
inline std::string correlation_table_csv(const CorrelationReport& report, bool fitted = false) {
  std::string out =
      "metric,"
      "pcc_non_compression,scc_non_compression,rmse_non_compression,"
      "pcc_compression,scc_compression,rmse_compression,"
      "pcc_all,scc_all,rmse_all";
  if (fitted) out += ",rmse_fit_non_compression,rmse_fit_compression,rmse_fit_all";
  out += "\n";
  for (const std::string& label : report.metrics) {
    const auto& row = report.cells.at(label);
    out += label;
    for (const CorrelationCell& c : row)
      out += "," + opt_cell(c.pearson) + "," + opt_cell(c.spearman) + "," + opt_cell(c.rmse);
    if (fitted)
      for (const CorrelationCell& c : row) out += "," + opt_cell(c.rmse_fitted);
    out += "\n";
  }
  return out;
}

/// Long layout: one row per metric x category.
inline std::string correlation_long_csv(const CorrelationReport& report) {
  std::string out = "metric,category,pearson,spearman,rmse,n\n";
  for (const std::string& label : report.metrics) {
    const auto& row = report.cells.at(label);
    for (std::size_t cat = 0; cat < 3; ++cat) {
      const CorrelationCell& c = row[cat];
      out += label;
      out += ",";
      out += report_category_name(static_cast<ReportCategory>(cat));
      out += "," + opt_cell(c.pearson) + "," + opt_cell(c.spearman) + "," + opt_cell(c.rmse) +
             "," + std::to_string(c.n) + "\n";
    }
  }
  return out;
}

inline std::string mos_csv(const MosResult& m) {
  std::string out = "clip,mos,ci95,n\n";
  for (const MosEntry& e : m.entries)
    out += e.clip + "," + fmt_double(e.mos) + "," + fmt_double(e.ci95) + "," +
           std::to_string(e.n) + "\n";
  return out;
}

inline std::string screening_csv(const ScreeningResult& r) {
  std::string out = "subject,p,q,exceed_ratio,balance,rejected\n";
  for (const SubjectScreening& d : r.diagnostics)
    out += d.subject + "," + std::to_string(d.p) + "," + std::to_string(d.q) + "," +
           fmt_double(d.exceed_ratio) + "," + fmt_double(d.balance) + "," +
           (d.rejected ? "true" : "false") + "\n";
  return out;
}

inline std::string scatter_csv(const std::vector<ScatterPoint>& points) {
  std::string out = "clip,objective,mos,ci95,category\n";
  for (const ScatterPoint& p : points)
    out += p.clip + "," + fmt_double(p.objective) + "," + fmt_double(p.mos) + "," +
           fmt_double(p.ci) + "," + category_name(p.category) + "\n";
  return out;
}

inline std::string rate_series_csv(const std::vector<RatePoint>& points) {
  std::string out = "sequence,clip,qp,bitrate_kbps,mos,ci95\n";
  for (const RatePoint& p : points)
    out += p.sequence + "," + p.clip + "," + std::to_string(p.qp) + "," +
           fmt_double(p.bitrate_kbps) + "," + fmt_double(p.mos) + "," + fmt_double(p.ci) + "\n";
  return out;
}

inline std::string session_plan_csv(const SessionPlan& plan) {
  std::string out = "index,kind,seconds,clip,discard\n";
  for (std::size_t i = 0; i < plan.events.size(); ++i) {
    const SessionEvent& e = plan.events[i];
    out += std::to_string(i) + "," + session_event_name(e.kind) + "," + fmt_double(e.seconds) +
           "," + e.clip_id + "," + (e.discard ? "true" : "false") + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// SVG scatter plots (deterministic, no external plotting dependency)

namespace detail {

struct AxisRange {
  double lo = 0.0, hi = 1.0;
  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  static AxisRange of(const std::vector<double>& values, double pad_fraction = 0.05) {
    AxisRange r;
    if (values.empty()) return r;
    r.lo = r.hi = values.front();
    for (double v : values) {
      r.lo = std::min(r.lo, v);
      r.hi = std::max(r.hi, v);
    }
    double pad = (r.hi - r.lo) * pad_fraction;
    if (pad <= 0.0) pad = std::max(std::abs(r.hi), 1.0) * pad_fraction;
    r.lo -= pad;
    r.hi += pad;
    return r;
  }
  double map(double v, double px0, double px1) const {
    return px0 + (v - lo) / (hi - lo) * (px1 - px0);
  }
};

inline std::string svg_header(int w, int h, const std::string& title) {
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) + "\" height=\"" +
       std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) + " " + std::to_string(h) +
       "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + std::to_string(w / 2) +
       "\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" + title +
       "</text>\n";
  return s;
}

}  // namespace detail

/// Objective-vs-MOS scatter with 95% CI bars; compression points render as
/// squares, the rest as circles.
inline std::string scatter_svg(const std::vector<ScatterPoint>& points, const std::string& title,
                               const std::string& x_label) {
  const int W = 640, H = 480, L = 70, R = 20, T = 40, B = 50;
  std::vector<double> xs, ys;
  for (const ScatterPoint& p : points) {
    xs.push_back(p.objective);
    ys.push_back(p.mos - p.ci);
    ys.push_back(p.mos + p.ci);
  }
  detail::AxisRange xr = detail::AxisRange::of(xs);
  detail::AxisRange yr = detail::AxisRange::of(ys.empty() ? std::vector<double>{1, 10} : ys);

  std::string s = detail::svg_header(W, H, title);
  s += "<rect x=\"" + std::to_string(L) + "\" y=\"" + std::to_string(T) + "\" width=\"" +
       std::to_string(W - L - R) + "\" height=\"" + std::to_string(H - T - B) +
       "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    double px = xr.map(fx, L, W - R);
    s += "<line x1=\"" + fmt_double(px, 6) + "\" y1=\"" + std::to_string(H - B) + "\" x2=\"" +
         fmt_double(px, 6) + "\" y2=\"" + std::to_string(H - B + 5) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt_double(px, 6) + "\" y=\"" + std::to_string(H - B + 20) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
         fmt_double(fx, 4) + "</text>\n";
    double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    double py = yr.map(fy, H - B, T);
    s += "<line x1=\"" + std::to_string(L - 5) + "\" y1=\"" + fmt_double(py, 6) + "\" x2=\"" +
         std::to_string(L) + "\" y2=\"" + fmt_double(py, 6) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + std::to_string(L - 8) + "\" y=\"" + fmt_double(py + 4, 6) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + fmt_double(fy, 4) +
         "</text>\n";
  }
  s += "<text x=\"" + std::to_string((L + W - R) / 2) + "\" y=\"" + std::to_string(H - 12) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + x_label +
       "</text>\n";
  s += "<text x=\"16\" y=\"" + std::to_string((T + H - B) / 2) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 "
       "16 " +
       std::to_string((T + H - B) / 2) + ")\">MOS</text>\n";

  for (const ScatterPoint& p : points) {
    double px = xr.map(p.objective, L, W - R);
    double py = yr.map(p.mos, H - B, T);
    double py_lo = yr.map(p.mos - p.ci, H - B, T);
    double py_hi = yr.map(p.mos + p.ci, H - B, T);
    s += "<line x1=\"" + fmt_double(px, 6) + "\" y1=\"" + fmt_double(py_lo, 6) + "\" x2=\"" +
         fmt_double(px, 6) + "\" y2=\"" + fmt_double(py_hi, 6) + "\" stroke=\"steelblue\"/>\n";
    if (p.category == ImpairmentCategory::compression)
      s += "<rect x=\"" + fmt_double(px - 3, 6) + "\" y=\"" + fmt_double(py - 3, 6) +
           "\" width=\"6\" height=\"6\" fill=\"firebrick\"/>\n";
    else
      s += "<circle cx=\"" + fmt_double(px, 6) + "\" cy=\"" + fmt_double(py, 6) +
           "\" r=\"3.5\" fill=\"steelblue\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

/// One polyline per sequence, points ordered by bitrate.
inline std::string rate_svg(const std::vector<RatePoint>& points) {
  const int W = 640, H = 480, L = 70, R = 20, T = 40, B = 50;
  std::vector<double> xs, ys;
  for (const RatePoint& p : points) {
    xs.push_back(p.bitrate_kbps);
    ys.push_back(p.mos - p.ci);
    ys.push_back(p.mos + p.ci);
  }
  detail::AxisRange xr = detail::AxisRange::of(xs.empty() ? std::vector<double>{0, 1} : xs);
  detail::AxisRange yr = detail::AxisRange::of(ys.empty() ? std::vector<double>{1, 10} : ys);

  std::string s = detail::svg_header(W, H, "MOS vs bitrate");
  s += "<rect x=\"" + std::to_string(L) + "\" y=\"" + std::to_string(T) + "\" width=\"" +
       std::to_string(W - L - R) + "\" height=\"" + std::to_string(H - T - B) +
       "\" fill=\"none\" stroke=\"black\"/>\n";

  static const char* colors[] = {"steelblue", "firebrick", "seagreen", "darkorange", "purple"};
  std::vector<std::string> sequences;
  for (const RatePoint& p : points)
    if (std::find(sequences.begin(), sequences.end(), p.sequence) == sequences.end())
      sequences.push_back(p.sequence);

  for (std::size_t si = 0; si < sequences.size(); ++si) {
    const char* color = colors[si % 5];
    std::string poly;
    for (const RatePoint& p : points) {
      if (p.sequence != sequences[si]) continue;
      double px = xr.map(p.bitrate_kbps, L, W - R);
      double py = yr.map(p.mos, H - B, T);
      poly += fmt_double(px, 6) + "," + fmt_double(py, 6) + " ";
      double py_lo = yr.map(p.mos - p.ci, H - B, T);
      double py_hi = yr.map(p.mos + p.ci, H - B, T);
      s += "<line x1=\"" + fmt_double(px, 6) + "\" y1=\"" + fmt_double(py_lo, 6) + "\" x2=\"" +
           fmt_double(px, 6) + "\" y2=\"" + fmt_double(py_hi, 6) + "\" stroke=\"" + color +
           "\"/>\n";
      s += "<circle cx=\"" + fmt_double(px, 6) + "\" cy=\"" + fmt_double(py, 6) +
           "\" r=\"3.5\" fill=\"" + color + "\"/>\n";
    }
    if (!poly.empty())
      s += "<polyline points=\"" + poly + "\" fill=\"none\" stroke=\"" + color + "\"/>\n";
    s += "<text x=\"" + std::to_string(W - R - 8) + "\" y=\"" + std::to_string(T + 18 * (si + 1)) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + color +
         "\">" + sequences[si] + "</text>\n";
  }
  s += "<text x=\"" + std::to_string((L + W - R) / 2) + "\" y=\"" + std::to_string(H - 12) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">bitrate "
       "(kb/s)</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace hdrqa

#endif  // HDRQA_REPORT_HPP
