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

// Strict, minimal CSV: comma separated, no quoting (fields must not contain
// commas), rectangular. Parse errors carry row/column coordinates.

#ifndef HDRQA_CSV_HPP
#define HDRQA_CSV_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hdrqa/error.hpp"

namespace hdrqa {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column, or error naming the missing column.
  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    fail(errc::format, "csv: missing required column '" + name + "'");
  }
};

inline CsvTable parse_csv(const std::string& text, const std::string& origin = "<string>") {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) {
        cells.push_back(line.substr(start));
        break;
      }
      cells.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    if (t.header.empty()) {
      t.header = std::move(cells);
    } else {
      require(cells.size() == t.header.size(), errc::format,
              origin + ": row " + std::to_string(lineno) + " has " +
                  std::to_string(cells.size()) + " cells, expected " +
                  std::to_string(t.header.size()));
      t.rows.push_back(std::move(cells));
    }
  }
  require(!t.header.empty(), errc::format, origin + ": empty csv");
  return t;
}

inline CsvTable read_csv(const std::string& path) {
  std::ifstream f(path);
  require(f.good(), errc::io, "cannot open '" + path + "' for reading");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str(), path);
}

inline int csv_int(const std::string& cell, const std::string& origin, std::size_t row,
                   std::size_t col) {
  try {
    std::size_t used = 0;
    int v = std::stoi(cell, &used);
    require(used == cell.size(), errc::format, "");
    return v;
  } catch (...) {
    fail(errc::format, origin + ": row " + std::to_string(row + 2) + ", column " +
                           std::to_string(col + 1) + ": '" + cell + "' is not an integer");
  }
}

inline double csv_double(const std::string& cell, const std::string& origin, std::size_t row,
                         std::size_t col) {
  try {
    std::size_t used = 0;
    double v = std::stod(cell, &used);
    require(used == cell.size(), errc::format, "");
    return v;
  } catch (...) {
    fail(errc::format, origin + ": row " + std::to_string(row + 2) + ", column " +
                           std::to_string(col + 1) + ": '" + cell + "' is not a number");
  }
}

/// Compact, locale-independent float formatting for CSV output.
inline std::string fmt_double(double v, int precision = 10) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::trunc | std::ios::binary);
  require(f.good(), errc::io, "cannot open '" + path + "' for writing");
  f << text;
  require(f.good(), errc::io, "short write to '" + path + "'");
}

}  // namespace hdrqa

#endif  // HDRQA_CSV_HPP
