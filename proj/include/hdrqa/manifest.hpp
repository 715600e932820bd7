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

// Dataset manifests: one JSON document per dataset describing each sequence
// (geometry, fps, environment/motion tags, pixel source) plus an optional
// distortion lineage with parameters and seed. Schema is versioned.

#ifndef HDRQA_MANIFEST_HPP
#define HDRQA_MANIFEST_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hdrqa/error.hpp"

namespace hdrqa {

inline constexpr const char* kManifestSchema = "hdrqa-manifest/1";

enum class Environment { indoor, outdoor };
enum class MotionLevel { slow, intermediate, fast };
enum class SourceFormat { rgbe, yuv12 };

inline const char* environment_name(Environment e) {
  return e == Environment::indoor ? "indoor" : "outdoor";
}
inline const char* motion_name(MotionLevel m) {
  switch (m) {
    case MotionLevel::slow: return "slow";
    case MotionLevel::intermediate: return "intermediate";
    case MotionLevel::fast: return "fast";
  }
  return "?";
}
inline const char* source_format_name(SourceFormat f) {
  return f == SourceFormat::rgbe ? "rgbe" : "yuv12";
}

inline Environment parse_environment(const std::string& s) {
  if (s == "indoor") return Environment::indoor;
  if (s == "outdoor") return Environment::outdoor;
  fail(errc::format, "manifest: unknown environment '" + s + "'");
}
inline MotionLevel parse_motion(const std::string& s) {
  if (s == "slow") return MotionLevel::slow;
  if (s == "intermediate") return MotionLevel::intermediate;
  if (s == "fast") return MotionLevel::fast;
  fail(errc::format, "manifest: unknown motion level '" + s + "'");
}
inline SourceFormat parse_source_format(const std::string& s) {
  if (s == "rgbe") return SourceFormat::rgbe;
  if (s == "yuv12") return SourceFormat::yuv12;
  fail(errc::format, "manifest: unknown source format '" + s + "'");
}

struct DistortionLineage {
  std::string kind;
  std::map<std::string, double> params;
  std::optional<std::uint64_t> seed;
};

struct SequenceManifest {
  std::string name;
  int frames = 0;
  double fps = 0.0;
  int width = 0;
  int height = 0;
  Environment environment = Environment::indoor;
  MotionLevel motion = MotionLevel::slow;
  SourceFormat format = SourceFormat::rgbe;
  // Pixel source, relative to the manifest: a printf-style frame pattern
  // ("frames/f_%04d.hdr") for rgbe, a single raw file for yuv12.
  std::string path;
  std::optional<DistortionLineage> lineage;
  std::optional<int> qp;
  std::optional<double> bitrate_kbps;

  void validate() const {
    require(!name.empty(), errc::format, "manifest: sequence with empty name");
    require(frames > 0, errc::format, "manifest: '" + name + "': frames must be > 0");
    require(fps > 0.0, errc::format, "manifest: '" + name + "': fps must be > 0");
    require(width > 0 && height > 0, errc::format, "manifest: '" + name + "': bad resolution");
    bool compressed = lineage && lineage->kind == "compression";
    require(qp.has_value() == compressed, errc::format,
            "manifest: '" + name + "': qp must be present exactly when lineage is compression");
  }
};

struct DatasetManifest {
  std::string schema = kManifestSchema;
  std::vector<SequenceManifest> sequences;

  void validate() const {
    require(schema == kManifestSchema, errc::format,
            "manifest: unsupported schema '" + schema + "'");
    for (const SequenceManifest& s : sequences) s.validate();
  }

  const SequenceManifest& find(const std::string& name) const {
    for (const SequenceManifest& s : sequences)
      if (s.name == name) return s;
    fail(errc::usage, "manifest: no sequence named '" + name + "'");
  }
};

namespace detail {

inline nlohmann::json lineage_to_json(const DistortionLineage& l) {
  nlohmann::json j;
  j["kind"] = l.kind;
  if (!l.params.empty()) j["params"] = l.params;
  if (l.seed) j["seed"] = *l.seed;
  return j;
}

inline DistortionLineage lineage_from_json(const nlohmann::json& j) {
  DistortionLineage l;
  l.kind = j.at("kind").get<std::string>();
  if (j.contains("params"))
    l.params = j.at("params").get<std::map<std::string, double>>();
  if (j.contains("seed")) l.seed = j.at("seed").get<std::uint64_t>();
  return l;
}

}  // namespace detail

inline nlohmann::json manifest_to_json(const DatasetManifest& m) {
  nlohmann::json j;
  j["schema"] = m.schema;
  j["sequences"] = nlohmann::json::array();
  for (const SequenceManifest& s : m.sequences) {
    nlohmann::json js;
    js["name"] = s.name;
    js["frames"] = s.frames;
    js["fps"] = s.fps;
    js["width"] = s.width;
    js["height"] = s.height;
    js["environment"] = environment_name(s.environment);
    js["motion"] = motion_name(s.motion);
    js["format"] = source_format_name(s.format);
    if (!s.path.empty()) js["path"] = s.path;
    if (s.lineage) js["lineage"] = detail::lineage_to_json(*s.lineage);
    if (s.qp) js["qp"] = *s.qp;
    if (s.bitrate_kbps) js["bitrate_kbps"] = *s.bitrate_kbps;
    j["sequences"].push_back(js);
  }
  return j;
}

inline DatasetManifest manifest_from_json(const nlohmann::json& j) {
  DatasetManifest m;
  try {
    m.schema = j.at("schema").get<std::string>();
    for (const nlohmann::json& js : j.at("sequences")) {
      SequenceManifest s;
      s.name = js.at("name").get<std::string>();
      s.frames = js.at("frames").get<int>();
      s.fps = js.at("fps").get<double>();
      s.width = js.at("width").get<int>();
      s.height = js.at("height").get<int>();
      s.environment = parse_environment(js.at("environment").get<std::string>());
      s.motion = parse_motion(js.at("motion").get<std::string>());
      s.format = parse_source_format(js.at("format").get<std::string>());
      if (js.contains("path")) s.path = js.at("path").get<std::string>();
      if (js.contains("lineage")) s.lineage = detail::lineage_from_json(js.at("lineage"));
      if (js.contains("qp")) s.qp = js.at("qp").get<int>();
      if (js.contains("bitrate_kbps")) s.bitrate_kbps = js.at("bitrate_kbps").get<double>();
      m.sequences.push_back(std::move(s));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(errc::format, std::string("manifest: ") + e.what());
  }
  m.validate();
  return m;
}

inline DatasetManifest load_manifest(const std::string& path) {
  std::ifstream f(path);
  require(f.good(), errc::io, "cannot open manifest '" + path + "'");
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(errc::format, "manifest '" + path + "': " + e.what());
  }
  return manifest_from_json(j);
}

inline void save_manifest(const DatasetManifest& m, const std::string& path) {
  std::ofstream f(path, std::ios::trunc);
  require(f.good(), errc::io, "cannot open '" + path + "' for writing");
  f << manifest_to_json(m).dump(2) << "\n";
  require(f.good(), errc::io, "short write to '" + path + "'");
}

}  // namespace hdrqa

#endif  // HDRQA_MANIFEST_HPP
