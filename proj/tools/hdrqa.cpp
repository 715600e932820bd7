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

// hdrqa command-line front end. Every run writes a machine-readable config
// echo (hdrqa_run.json) into the output directory; `hdrqa rerun <echo>`
// reproduces the run bit-exactly, independent of thread count.
//
// Exit codes: 0 success, 1 usage, 2 data/schema, 3 numeric failure.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hdrqa/adapters.hpp"
#include "hdrqa/csv.hpp"
#include "hdrqa/dataset.hpp"
#include "hdrqa/display.hpp"
#include "hdrqa/distortion.hpp"
#include "hdrqa/error.hpp"
#include "hdrqa/manifest.hpp"
#include "hdrqa/metrics.hpp"
#include "hdrqa/parallel.hpp"
#include "hdrqa/pu.hpp"
#include "hdrqa/report.hpp"
#include "hdrqa/rgbe.hpp"
#include "hdrqa/stats.hpp"
#include "hdrqa/yuv.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hdrqa;

namespace {

constexpr const char* kRunSchema = "hdrqa-run/1";
constexpr const char* kEchoName = "hdrqa_run.json";

struct GlobalOpts {
  std::uint64_t seed = 0;
  int threads = 0;  // 0: HDRQA_THREADS env or hardware count
  std::string out_dir = ".";

  int effective_threads() const { return threads > 0 ? threads : default_thread_count(); }
};

void to_json(json& j, const GlobalOpts& g) {
  j = json{{"seed", g.seed}, {"threads", g.threads}, {"out_dir", g.out_dir}};
}
void from_json(const json& j, GlobalOpts& g) {
  j.at("seed").get_to(g.seed);
  j.at("threads").get_to(g.threads);
  j.at("out_dir").get_to(g.out_dir);
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hash_hex(const std::string& s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(s)));
  return buf;
}

void write_echo(const GlobalOpts& g, const std::string& command, const json& options) {
  json echo{{"schema", kRunSchema}, {"command", command}, {"global", g}, {"options", options}};
  fs::create_directories(g.out_dir);
  write_text_file((fs::path(g.out_dir) / kEchoName).string(), echo.dump(2) + "\n");
}

std::string slug(const std::string& label) {
  std::string s;
  for (char c : label) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    else if (!s.empty() && s.back() != '_')
      s += '_';
  }
  while (!s.empty() && s.back() == '_') s.pop_back();
  return s;
}

// ---------------------------------------------------------------------------
// distort

struct DistortOpts {
  std::string manifest;
  std::string sequence;
  std::string kind = "awgn";
  double sigma = 0.002;
  double fraction = 0.02;
  int size = 8;
  double kernel_sigma = 8.0;
  int frames = 0;  // 0: all
};

void to_json(json& j, const DistortOpts& o) {
  j = json{{"manifest", o.manifest}, {"sequence", o.sequence},      {"kind", o.kind},
           {"sigma", o.sigma},       {"fraction", o.fraction},      {"size", o.size},
           {"kernel_sigma", o.kernel_sigma}, {"frames", o.frames}};
}
void from_json(const json& j, DistortOpts& o) {
  j.at("manifest").get_to(o.manifest);
  j.at("sequence").get_to(o.sequence);
  j.at("kind").get_to(o.kind);
  j.at("sigma").get_to(o.sigma);
  j.at("fraction").get_to(o.fraction);
  j.at("size").get_to(o.size);
  j.at("kernel_sigma").get_to(o.kernel_sigma);
  j.at("frames").get_to(o.frames);
}

int run_distort(const GlobalOpts& g, const DistortOpts& o) {
  DistortionKind kind = parse_distortion_kind(o.kind);
  if (kind == DistortionKind::compression)
    fail(errc::usage,
         "compression is produced by an external HEVC encoder (HM random-access main10, GOP 8, "
         "RDOQ on); feed the decoded 12-bit YUV back in through a manifest instead");

  DatasetManifest manifest = load_manifest(o.manifest);
  const SequenceManifest& seq = manifest.find(o.sequence);
  std::string base_dir = fs::path(o.manifest).parent_path().string();
  std::vector<HdrFrame> frames = load_sequence(seq, base_dir, o.frames);

  write_echo(g, "distort", json(o));

  DistortionSpec spec;
  spec.kind = kind;
  spec.sigma = o.sigma;
  spec.fraction = o.fraction;
  spec.kernel_size = o.size;
  spec.kernel_sigma = o.kernel_sigma;
  spec.seed = g.seed;
  spec.validate();

  std::vector<HdrFrame> out(frames.size());
  if (kind == DistortionKind::intensity_shift) {
    IntensityShiftResult r = intensity_shift(frames);
    if (r.all_black)
      std::cerr << "warning: sequence is all black; intensity shift is the identity\n";
    out = std::move(r.frames);
  } else {
    parallel_for(frames.size(), g.effective_threads(), [&](std::size_t i) {
      switch (kind) {
        case DistortionKind::awgn: out[i] = add_awgn(frames[i], o.sigma, g.seed, i); break;
        case DistortionKind::salt_pepper:
          out[i] = salt_pepper(frames[i], o.fraction, g.seed, i);
          break;
        case DistortionKind::gaussian_lpf:
          out[i] = gaussian_lowpass(frames[i], o.size, o.kernel_sigma);
          break;
        default: break;
      }
    });
  }

  std::string out_name = seq.name + "-" + o.kind;
  fs::path frames_dir = fs::path(g.out_dir) / "frames";
  fs::create_directories(frames_dir);
  std::string pattern = out_name + "_%04d.hdr";
  for (std::size_t i = 0; i < out.size(); ++i)
    write_rgbe_file((frames_dir / expand_frame_path(pattern, static_cast<int>(i))).string(),
                    out[i]);

  DistortionLineage lineage;
  lineage.kind = o.kind;
  lineage.params = spec.params();
  if (spec.stochastic()) lineage.seed = g.seed;
  if (kind == DistortionKind::salt_pepper)
    lineage.params["modified_pixels_per_frame"] = static_cast<double>(
        static_cast<std::size_t>(o.fraction * frames.front().pixel_count()));

  DatasetManifest derived;
  SequenceManifest ds = seq;
  ds.name = out_name;
  ds.frames = static_cast<int>(out.size());
  ds.format = SourceFormat::rgbe;
  ds.path = "frames/" + pattern;
  ds.lineage = lineage;
  ds.qp.reset();
  ds.bitrate_kbps.reset();
  derived.sequences.push_back(ds);
  save_manifest(derived, (fs::path(g.out_dir) / "manifest.json").string());

  std::cout << "distort: " << out.size() << " frame(s) of '" << seq.name << "' -> " << out_name
            << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// metric

struct MetricOpts {
  std::string manifest;
  std::string ref;
  std::string dist;
  std::vector<std::string> metrics = {"psnr", "ssim", "vif"};
  std::vector<std::string> adapters = {"pu", "me"};
  int frames = 0;
  double peak = 2700.0;
  double contrast = 2000.0;
  double black = 0.0;
  std::string pu_table;  // empty: built-in table
  int exposures = 5;
  double gamma = 2.2;
  double dark_percentile = 0.01;
};

void to_json(json& j, const MetricOpts& o) {
  j = json{{"manifest", o.manifest},
           {"ref", o.ref},
           {"dist", o.dist},
           {"metrics", o.metrics},
           {"adapters", o.adapters},
           {"frames", o.frames},
           {"peak", o.peak},
           {"contrast", o.contrast},
           {"black", o.black},
           {"pu_table", o.pu_table},
           {"exposures", o.exposures},
           {"gamma", o.gamma},
           {"dark_percentile", o.dark_percentile}};
}
void from_json(const json& j, MetricOpts& o) {
  j.at("manifest").get_to(o.manifest);
  j.at("ref").get_to(o.ref);
  j.at("dist").get_to(o.dist);
  j.at("metrics").get_to(o.metrics);
  j.at("adapters").get_to(o.adapters);
  j.at("frames").get_to(o.frames);
  j.at("peak").get_to(o.peak);
  j.at("contrast").get_to(o.contrast);
  j.at("black").get_to(o.black);
  j.at("pu_table").get_to(o.pu_table);
  j.at("exposures").get_to(o.exposures);
  j.at("gamma").get_to(o.gamma);
  j.at("dark_percentile").get_to(o.dark_percentile);
}

int run_metric(const GlobalOpts& g, const MetricOpts& o) {
  DatasetManifest manifest = load_manifest(o.manifest);
  std::string base_dir = fs::path(o.manifest).parent_path().string();
  std::vector<HdrFrame> ref = load_sequence(manifest.find(o.ref), base_dir, o.frames);
  std::vector<HdrFrame> dist = load_sequence(manifest.find(o.dist), base_dir, o.frames);

  write_echo(g, "metric", json(o));

  PuTransfer transfer = o.pu_table.empty() ? default_pu_transfer() : load_pu_transfer(o.pu_table);
  PuAdapterConfig pu_cfg;
  pu_cfg.display = {o.peak, o.contrast, o.black};
  pu_cfg.threads = g.effective_threads();
  MeAdapterConfig me_cfg;
  me_cfg.exposures = o.exposures;
  me_cfg.gamma = o.gamma;
  me_cfg.dark_percentile = o.dark_percentile;
  me_cfg.threads = g.effective_threads();

  const std::string params_hash = hash_hex(json(o).dump() + std::to_string(g.seed));

  std::string csv = "frame,metric,adapter,score,params_hash\n";
  for (const std::string& adapter : o.adapters) {
    require(adapter == "pu" || adapter == "me", errc::usage,
            "unknown adapter '" + adapter + "' (expected pu or me)");
    for (const std::string& metric : o.metrics) {
      MetricKind kind = parse_metric_kind(metric);
      MetricResult r = adapter == "pu" ? pu_metric(ref, dist, kind, transfer, pu_cfg)
                                       : me_metric(ref, dist, kind, me_cfg);
      for (std::size_t i = 0; i < r.per_frame.size(); ++i)
        csv += std::to_string(i) + "," + metric + "," + adapter + "," +
               fmt_double(r.per_frame[i], 12) + "," + params_hash + "\n";
      csv += "sequence," + metric + "," + adapter + "," + fmt_double(r.sequence, 12) + "," +
             params_hash + "\n";
      std::cout << adapter_metric_label(metric, adapter) << ": " << fmt_double(r.sequence, 8)
                << "\n";
    }
  }
  write_text_file((fs::path(g.out_dir) / "metrics.csv").string(), csv);
  return 0;
}

// ---------------------------------------------------------------------------
// display-sim

struct DisplaySimOpts {
  std::string manifest;
  std::string sequence;
  int frames = 0;
  int psf_size = 12;
  double psf_sigma = 2.0;
  double key = 0.18;
  double white_point = 0.0;  // 0: scene maximum
  double peak = 2700.0;
  double contrast = 2000.0;
  std::string normalization = "sequence";  // sequence | frame
};

void to_json(json& j, const DisplaySimOpts& o) {
  j = json{{"manifest", o.manifest},   {"sequence", o.sequence}, {"frames", o.frames},
           {"psf_size", o.psf_size},   {"psf_sigma", o.psf_sigma}, {"key", o.key},
           {"white_point", o.white_point}, {"peak", o.peak},     {"contrast", o.contrast},
           {"normalization", o.normalization}};
}
void from_json(const json& j, DisplaySimOpts& o) {
  j.at("manifest").get_to(o.manifest);
  j.at("sequence").get_to(o.sequence);
  j.at("frames").get_to(o.frames);
  j.at("psf_size").get_to(o.psf_size);
  j.at("psf_sigma").get_to(o.psf_sigma);
  j.at("key").get_to(o.key);
  j.at("white_point").get_to(o.white_point);
  j.at("peak").get_to(o.peak);
  j.at("contrast").get_to(o.contrast);
  j.at("normalization").get_to(o.normalization);
}

int run_display_sim(const GlobalOpts& g, const DisplaySimOpts& o) {
  DatasetManifest manifest = load_manifest(o.manifest);
  const SequenceManifest& seq = manifest.find(o.sequence);
  std::string base_dir = fs::path(o.manifest).parent_path().string();
  std::vector<HdrFrame> frames = load_sequence(seq, base_dir, o.frames);

  write_echo(g, "display-sim", json(o));
  require(o.normalization == "sequence" || o.normalization == "frame", errc::usage,
          "display-sim: --normalization must be 'sequence' or 'frame'");
  const bool per_sequence = o.normalization == "sequence";

  // Default pre-pass: shared luminance normalization across the sequence,
  // then the emitted scale that puts the sequence maximum at the display
  // peak. --normalization frame anchors each frame on its own maximum.
  double luma_max = 0.0;
  if (per_sequence)
    for (const HdrFrame& f : frames)
      luma_max = std::max(luma_max, (double)rgb_to_luminance(f).max_value());

  SplitOptions split_opt;
  split_opt.psf_size = o.psf_size;
  split_opt.psf_sigma = o.psf_sigma;
  split_opt.key = o.key;
  split_opt.white_point = o.white_point;
  split_opt.luminance_max = luma_max;  // 0 under per-frame normalization

  std::vector<DisplaySignals> signals(frames.size());
  parallel_for(frames.size(), g.effective_threads(),
               [&](std::size_t i) { signals[i] = split_signal(frames[i], split_opt); });

  double raw_max = 0.0;
  if (per_sequence)
    for (const DisplaySignals& s : signals) raw_max = std::max(raw_max, emitted_raw_max(s));

  DisplayModel model{o.peak, o.contrast, 0.0};
  parallel_for(frames.size(), g.effective_threads(),
               [&](std::size_t i) { simulate_emitted(signals[i], model, raw_max); });

  fs::path dir = fs::path(g.out_dir) / "frames";
  fs::create_directories(dir);
  std::string summary = "frame,clamp_fraction,emitted_max\n";
  double emitted_max = 0.0;
  for (std::size_t i = 0; i < signals.size(); ++i) {
    int idx = static_cast<int>(i);
    write_pfm_gray((dir / expand_frame_path("projector_%04d.pfm", idx)).string(),
                   signals[i].projector);
    write_pfm_rgb((dir / expand_frame_path("lcd_%04d.pfm", idx)).string(), signals[i].lcd);
    write_pfm_gray((dir / expand_frame_path("emitted_%04d.pfm", idx)).string(),
                   signals[i].emitted);
    double fmax = signals[i].emitted.max_value();
    emitted_max = std::max(emitted_max, fmax);
    summary += std::to_string(i) + "," + fmt_double(signals[i].clamp_fraction()) + "," +
               fmt_double(fmax) + "\n";
    std::cout << "frame " << i << ": clamp_fraction=" << fmt_double(signals[i].clamp_fraction(), 6)
              << " emitted_max=" << fmt_double(fmax, 8) << "\n";
  }
  write_text_file((fs::path(g.out_dir) / "display_summary.csv").string(), summary);
  std::cout << "sequence emitted max: " << fmt_double(emitted_max, 8) << " cd/m^2\n";
  return 0;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOpts {
  std::string scores;
  std::string clips;
  std::string objective;
  bool fit_mos = false;
  bool skip_screening = false;
};

void to_json(json& j, const AnalyzeOpts& o) {
  j = json{{"scores", o.scores},
           {"clips", o.clips},
           {"objective", o.objective},
           {"fit_mos", o.fit_mos},
           {"skip_screening", o.skip_screening}};
}
void from_json(const json& j, AnalyzeOpts& o) {
  j.at("scores").get_to(o.scores);
  j.at("clips").get_to(o.clips);
  j.at("objective").get_to(o.objective);
  j.at("fit_mos").get_to(o.fit_mos);
  j.at("skip_screening").get_to(o.skip_screening);
}

std::vector<ClipMeta> load_clip_meta(const std::string& path) {
  CsvTable t = read_csv(path);
  std::size_t c_id = t.column("clip"), c_seq = t.column("sequence"),
              c_imp = t.column("impairment"), c_cat = t.column("category"), c_qp = t.column("qp"),
              c_rate = t.column("bitrate_kbps");
  std::vector<ClipMeta> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    ClipMeta m;
    m.id = row[c_id];
    m.sequence = row[c_seq];
    m.impairment = row[c_imp];
    m.category = parse_category(row[c_cat]);
    if (!row[c_qp].empty()) m.qp = csv_int(row[c_qp], path, r, c_qp);
    if (!row[c_rate].empty()) m.bitrate_kbps = csv_double(row[c_rate], path, r, c_rate);
    out.push_back(std::move(m));
  }
  return out;
}

ScoreTable load_score_table(const std::string& path, const std::vector<ClipMeta>& meta) {
  CsvTable t = read_csv(path);
  require(t.header.size() >= 2 && t.header[0] == "subject", errc::format,
          path + ": expected header 'subject,<clip ids...>'");
  std::map<std::string, const ClipMeta*> by_id;
  for (const ClipMeta& m : meta) by_id[m.id] = &m;

  ScoreTable table;
  for (std::size_t c = 1; c < t.header.size(); ++c) {
    const std::string& id = t.header[c];
    auto it = by_id.find(id);
    require(it != by_id.end(), errc::format,
            path + ": clip '" + id + "' has no metadata in the clips file");
    table.clips.push_back({id, it->second->category, it->second->sequence});
  }
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    table.subjects.push_back(t.rows[r][0]);
    for (std::size_t c = 1; c < t.header.size(); ++c)
      table.scores.push_back(csv_int(t.rows[r][c], path, r, c));
  }
  table.validate();
  return table;
}

ObjectiveScores load_objective(const std::string& path) {
  CsvTable t = read_csv(path);
  std::size_t c_clip = t.column("clip"), c_metric = t.column("metric"),
              c_score = t.column("score");
  ObjectiveScores out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    out.by_metric[row[c_metric]][row[c_clip]] = csv_double(row[c_score], path, r, c_score);
  }
  return out;
}

int run_analyze(const GlobalOpts& g, const AnalyzeOpts& o) {
  std::vector<ClipMeta> meta = load_clip_meta(o.clips);
  ScoreTable table = load_score_table(o.scores, meta);
  ObjectiveScores objective = load_objective(o.objective);

  write_echo(g, "analyze", json(o));
  fs::path out(g.out_dir);

  ScreeningResult screening;
  if (!o.skip_screening) {
    screening = screen_outliers(table);
    write_text_file((out / "screening.csv").string(), screening_csv(screening));
    std::cout << screening.rejected.size() << " outlier(s) detected";
    if (!screening.rejected.empty()) {
      std::cout << ":";
      for (const std::string& s : screening.rejected) std::cout << " " << s;
    }
    std::cout << "\n";
    if (!screening.rejected.empty()) table = remove_subjects(table, screening.rejected);
  }

  MosResult mos_result = mos(table);
  write_text_file((out / "mos.csv").string(), mos_csv(mos_result));

  // Every metric present in the objective table must cover every scored clip.
  for (const auto& [label, scores] : objective.by_metric)
    for (const MosEntry& e : mos_result.entries)
      require(scores.count(e.clip), errc::format,
              "objective scores for '" + label + "' are missing clip '" + e.clip + "'");

  CorrelationReport report = build_report(mos_result, objective, meta, o.fit_mos);
  write_text_file((out / "correlation_table.csv").string(),
                  correlation_table_csv(report, o.fit_mos));
  write_text_file((out / "correlations.csv").string(), correlation_long_csv(report));
  for (const std::string& label : report.metrics) {
    const auto& points = report.scatter.at(label);
    write_text_file((out / ("scatter_" + slug(label) + ".csv")).string(), scatter_csv(points));
    write_text_file((out / ("scatter_" + slug(label) + ".svg")).string(),
                    scatter_svg(points, label + " vs MOS", label));
  }
  write_text_file((out / "mos_vs_bitrate.csv").string(), rate_series_csv(report.rate_series));
  write_text_file((out / "mos_vs_bitrate.svg").string(), rate_svg(report.rate_series));

  std::cout << "report: " << report.metrics.size() << " metric(s), "
            << mos_result.entries.size() << " clip(s), categories: non_compression, compression, "
               "all\n";
  return 0;
}

// ---------------------------------------------------------------------------
// session-plan

struct SessionPlanOpts {
  std::string clips;
  int dummies = 2;
};

void to_json(json& j, const SessionPlanOpts& o) {
  j = json{{"clips", o.clips}, {"dummies", o.dummies}};
}
void from_json(const json& j, SessionPlanOpts& o) {
  j.at("clips").get_to(o.clips);
  j.at("dummies").get_to(o.dummies);
}

int run_session_plan(const GlobalOpts& g, const SessionPlanOpts& o) {
  CsvTable t = read_csv(o.clips);
  std::size_t c_id = t.column("clip");
  std::vector<std::string> ids;
  for (const auto& row : t.rows) ids.push_back(row[c_id]);

  write_echo(g, "session-plan", json(o));
  SessionPlan plan = make_session_plan(ids, o.dummies, g.seed);
  write_text_file((fs::path(g.out_dir) / "session_plan.csv").string(), session_plan_csv(plan));
  double total = 0.0;
  for (const SessionEvent& e : plan.events) total += e.seconds;
  std::cout << "session plan: " << plan.events.size() << " events, " << plan.dummy_count
            << " dummy pair(s), " << fmt_double(total, 6) << " s total\n";
  return 0;
}

// ---------------------------------------------------------------------------
// manifest validate

int run_manifest_validate(const std::string& path) {
  DatasetManifest m = load_manifest(path);  // validates
  std::cout << "manifest ok: " << m.sequences.size() << " sequence(s)\n";
  for (const SequenceManifest& s : m.sequences)
    std::cout << "  " << s.name << ": " << s.frames << " frames @ " << s.width << "x" << s.height
              << " " << fmt_double(s.fps, 6) << " fps, " << source_format_name(s.format) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// rerun

int dispatch(const std::string& command, const GlobalOpts& g, const json& options);

int run_rerun(const std::string& echo_path) {
  std::ifstream f(echo_path);
  require(f.good(), errc::io, "cannot open config echo '" + echo_path + "'");
  json echo;
  try {
    f >> echo;
  } catch (const json::exception& e) {
    fail(errc::format, std::string("config echo: ") + e.what());
  }
  require(echo.value("schema", "") == kRunSchema, errc::format,
          "config echo: unsupported schema");
  GlobalOpts g = echo.at("global").get<GlobalOpts>();
  return dispatch(echo.at("command").get<std::string>(), g, echo.at("options"));
}

int dispatch(const std::string& command, const GlobalOpts& g, const json& options) {
  if (command == "distort") return run_distort(g, options.get<DistortOpts>());
  if (command == "metric") return run_metric(g, options.get<MetricOpts>());
  if (command == "display-sim") return run_display_sim(g, options.get<DisplaySimOpts>());
  if (command == "analyze") return run_analyze(g, options.get<AnalyzeOpts>());
  if (command == "session-plan") return run_session_plan(g, options.get<SessionPlanOpts>());
  fail(errc::format, "config echo: unknown command '" + command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hdrqa: objective HDR-video quality toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "seed for stochastic steps (recorded in the config echo)");
  app.add_option("--threads", g.threads, "worker threads (default: HDRQA_THREADS env or all cores)");
  app.add_option("--out-dir", g.out_dir, "output directory")->capture_default_str();
  app.fallthrough();  // global flags may follow the subcommand

  DistortOpts d;
  CLI::App* distort = app.add_subcommand("distort", "synthesize a distorted sequence");
  distort->add_option("--manifest", d.manifest, "dataset manifest")->required();
  distort->add_option("--sequence", d.sequence, "sequence name")->required();
  distort->add_option("--kind", d.kind,
                      "awgn | intensity_shift | salt_pepper | gaussian_lpf | compression")
      ->required();
  distort->add_option("--sigma", d.sigma, "awgn noise std dev")->capture_default_str();
  distort->add_option("--fraction", d.fraction, "salt & pepper pixel fraction")
      ->capture_default_str();
  distort->add_option("--size", d.size, "low-pass kernel size")->capture_default_str();
  distort->add_option("--kernel-sigma", d.kernel_sigma, "low-pass kernel sigma")
      ->capture_default_str();
  distort->add_option("--frames", d.frames, "frame cap (0 = all)")->capture_default_str();

  MetricOpts m;
  CLI::App* metric = app.add_subcommand("metric", "score a distorted sequence against a reference");
  metric->add_option("--manifest", m.manifest, "dataset manifest")->required();
  metric->add_option("--ref", m.ref, "reference sequence name")->required();
  metric->add_option("--dist", m.dist, "distorted sequence name")->required();
  metric->add_option("--metric", m.metrics, "psnr | ssim | vif (repeatable)")
      ->capture_default_str();
  metric->add_option("--adapter", m.adapters, "pu | me (repeatable)")->capture_default_str();
  metric->add_option("--frames", m.frames, "frame cap (0 = all)")->capture_default_str();
  metric->add_option("--peak", m.peak, "display peak, cd/m^2")->capture_default_str();
  metric->add_option("--contrast", m.contrast, "display contrast ratio")->capture_default_str();
  metric->add_option("--black", m.black, "explicit black level, cd/m^2 (0 = peak/contrast)")
      ->capture_default_str();
  metric->add_option("--pu-table", m.pu_table, "substitute PU transfer table (two-column text)");
  metric->add_option("--exposures", m.exposures, "multi-exposure count")->capture_default_str();
  metric->add_option("--gamma", m.gamma, "multi-exposure display gamma")->capture_default_str();
  metric->add_option("--dark-percentile", m.dark_percentile,
                     "nonzero-luminance percentile anchoring the brightest exposure")
      ->capture_default_str();

  DisplaySimOpts ds;
  CLI::App* display_sim = app.add_subcommand("display-sim", "simulate the dual-modulation display");
  display_sim->add_option("--manifest", ds.manifest, "dataset manifest")->required();
  display_sim->add_option("--sequence", ds.sequence, "sequence name")->required();
  display_sim->add_option("--frames", ds.frames, "frame cap (0 = all)")->capture_default_str();
  display_sim->add_option("--psf-size", ds.psf_size, "projector PSF size")->capture_default_str();
  display_sim->add_option("--psf-sigma", ds.psf_sigma, "projector PSF sigma")
      ->capture_default_str();
  display_sim->add_option("--key", ds.key, "tone map key")->capture_default_str();
  display_sim->add_option("--white-point", ds.white_point,
                          "tone map white-point luminance (0 = scene maximum)")
      ->capture_default_str();
  display_sim->add_option("--peak", ds.peak, "display peak, cd/m^2")->capture_default_str();
  display_sim->add_option("--contrast", ds.contrast, "display contrast ratio")
      ->capture_default_str();
  display_sim->add_option("--normalization", ds.normalization,
                          "luminance anchor: sequence (temporally stable) or frame")
      ->capture_default_str();

  AnalyzeOpts a;
  CLI::App* analyze = app.add_subcommand("analyze", "subjective statistics and correlation report");
  analyze->add_option("--scores", a.scores, "subject scores csv")->required();
  analyze->add_option("--clips", a.clips, "clip metadata csv")->required();
  analyze->add_option("--objective", a.objective, "objective scores csv")->required();
  analyze->add_flag("--fit-mos", a.fit_mos, "add RMSE after a linear objective->MOS fit");
  analyze->add_flag("--skip-screening", a.skip_screening, "skip BT.500 outlier screening");

  SessionPlanOpts sp;
  CLI::App* session = app.add_subcommand("session-plan", "generate a double-stimulus session plan");
  session->add_option("--clips", sp.clips, "clip metadata csv")->required();
  session->add_option("--dummies", sp.dummies, "dummy stabilization pairs")->capture_default_str();

  std::string manifest_path;
  CLI::App* manifest_cmd = app.add_subcommand("manifest", "manifest utilities");
  manifest_cmd->require_subcommand(1);
  CLI::App* validate = manifest_cmd->add_subcommand("validate", "check a manifest");
  validate->add_option("--manifest", manifest_path, "dataset manifest")->required();

  std::string echo_path;
  CLI::App* rerun = app.add_subcommand("rerun", "re-execute a run from its config echo");
  rerun->add_option("echo", echo_path, "path to hdrqa_run.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (distort->parsed()) return run_distort(g, d);
    if (metric->parsed()) return run_metric(g, m);
    if (display_sim->parsed()) return run_display_sim(g, ds);
    if (analyze->parsed()) return run_analyze(g, a);
    if (session->parsed()) return run_session_plan(g, sp);
    if (manifest_cmd->parsed()) return run_manifest_validate(manifest_path);
    if (rerun->parsed()) return run_rerun(echo_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case errc::usage: return 1;
      case errc::io:
      case errc::format: return 2;
      case errc::numeric: return 3;
    }
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
