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

#include "hdrqa/csv.hpp"
#include "hdrqa/manifest.hpp"
#include "hdrqa/yuv.hpp"

using namespace hdrqa;

TEST_CASE("shipped dataset manifest parses and matches the published geometry") {
  DatasetManifest m = load_manifest(std::string(HDRQA_DATA_DIR) + "/dml_hdr_manifest.json");
  CHECK(m.sequences.size() == 4);
  const SequenceManifest& pg = m.find("Playground");
  CHECK(pg.frames == 222);
  CHECK(pg.width == 2048);
  CHECK(pg.height == 1080);
  CHECK(pg.motion == MotionLevel::fast);
  CHECK(pg.environment == Environment::outdoor);
  // one raw frame at this geometry: Y plane plus two quarter chroma planes
  CHECK(yuv12_frame_stride(pg.width, pg.height) == 2048u * 1080u * 2u + 2u * 1024u * 540u * 2u);
}

TEST_CASE("shipped bitrate table carries the encoder operating points") {
  CsvTable t = read_csv(std::string(HDRQA_DATA_DIR) + "/hevc_bitrates.csv");
  CHECK(t.rows.size() == 16);
  std::size_t c_seq = t.column("sequence"), c_qp = t.column("qp"), c_rate = t.column("bitrate_kbps");
  bool found = false;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (t.rows[r][c_seq] == "Playground" && t.rows[r][c_qp] == "22") {
      CHECK(t.rows[r][c_rate] == "4190.2659");
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("manifest round trip preserves fields") {
  DatasetManifest m;
  SequenceManifest s;
  s.name = "synthetic";
  s.frames = 5;
  s.fps = 24.0;
  s.width = 64;
  s.height = 32;
  s.environment = Environment::outdoor;
  s.motion = MotionLevel::slow;
  s.format = SourceFormat::yuv12;
  s.path = "synthetic.yuv";
  DistortionLineage lin;
  lin.kind = "compression";
  lin.params = {{"qp", 27.0}};
  s.lineage = lin;
  s.qp = 27;
  s.bitrate_kbps = 1784.2595;
  m.sequences.push_back(s);

  DatasetManifest back = manifest_from_json(manifest_to_json(m));
  const SequenceManifest& b = back.sequences.at(0);
  CHECK(b.name == "synthetic");
  CHECK(b.frames == 5);
  CHECK(b.fps == 24.0);
  CHECK(b.format == SourceFormat::yuv12);
  CHECK(b.lineage->kind == "compression");
  CHECK(*b.qp == 27);
  CHECK(*b.bitrate_kbps == doctest::Approx(1784.2595));
}

TEST_CASE("manifest invariants") {
  DatasetManifest m;
  SequenceManifest s;
  s.name = "x";
  s.frames = 1;
  s.fps = 30;
  s.width = 8;
  s.height = 8;
  m.sequences.push_back(s);
  CHECK_NOTHROW(m.validate());

  SUBCASE("frames must be positive") {
    m.sequences[0].frames = 0;
    CHECK_THROWS_AS(m.validate(), Error);
  }
  SUBCASE("fps must be positive") {
    m.sequences[0].fps = 0;
    CHECK_THROWS_AS(m.validate(), Error);
  }
  SUBCASE("qp without compression lineage") {
    m.sequences[0].qp = 22;
    CHECK_THROWS_AS(m.validate(), Error);
  }
  SUBCASE("compression lineage without qp") {
    DistortionLineage lin;
    lin.kind = "compression";
    m.sequences[0].lineage = lin;
    CHECK_THROWS_AS(m.validate(), Error);
  }
  SUBCASE("qp with compression lineage is fine") {
    DistortionLineage lin;
    lin.kind = "compression";
    m.sequences[0].lineage = lin;
    m.sequences[0].qp = 22;
    CHECK_NOTHROW(m.validate());
  }
  SUBCASE("unknown schema") {
    m.schema = "hdrqa-manifest/99";
    CHECK_THROWS_AS(m.validate(), Error);
  }
}

TEST_CASE("manifest parse errors carry context") {
  CHECK_THROWS_AS(manifest_from_json(nlohmann::json{{"schema", kManifestSchema}}), Error);
  nlohmann::json j{{"schema", kManifestSchema},
                   {"sequences",
                    {{{"name", "x"},
                      {"frames", 1},
                      {"fps", 30},
                      {"width", 8},
                      {"height", 8},
                      {"environment", "underwater"},
                      {"motion", "slow"},
                      {"format", "rgbe"}}}}};
  CHECK_THROWS_WITH_AS(manifest_from_json(j), doctest::Contains("environment"), Error);
}
