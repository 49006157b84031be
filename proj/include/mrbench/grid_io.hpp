// Copyright 2026 The mrbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Plain-text map format:
//
//   grid <width> <height> <resolution_m> <origin_x> <origin_y>
//   <row 0: width characters>      (minimum y)
//   ...
//   <row height-1>
//
// '.' Free, '#' Occupied, '?' Unknown.

#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include "mrbench/gridmap.hpp"

namespace mrbench {

inline char cell_char(CellState s) {
  switch (s) {
    case CellState::Free: return '.';
    case CellState::Occupied: return '#';
    case CellState::Unknown: return '?';
  }
  return '?';
}

inline void write_grid(std::ostream& os, const OccupancyGrid& grid) {
  const GridGeometry& g = grid.geometry();
  os << "grid " << g.width << ' ' << g.height << ' ' << format_number(g.resolution) << ' '
     << format_number(g.origin.x) << ' ' << format_number(g.origin.y) << '\n';
  std::string row(static_cast<std::size_t>(g.width), '.');
  for (int j = 0; j < g.height; ++j) {
    for (int i = 0; i < g.width; ++i) row[static_cast<std::size_t>(i)] = cell_char(grid.at(i, j));
    os << row << '\n';
  }
}

inline std::string grid_to_string(const OccupancyGrid& grid) {
  std::ostringstream os;
  write_grid(os, grid);
  return os.str();
}

inline OccupancyGrid read_grid(std::istream& is, const std::string& source = "<grid>") {
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(is, line)) return false;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };
  if (!next_line()) throw ParseError(source, 1, "empty file");
  std::istringstream header(line);
  std::string tag;
  GridGeometry g;
  if (!(header >> tag >> g.width >> g.height >> g.resolution >> g.origin.x >> g.origin.y) ||
      tag != "grid") {
    throw ParseError(source, lineno,
                     "expected 'grid <width> <height> <resolution> <origin_x> <origin_y>'");
  }
  std::string rest;
  if (header >> rest) throw ParseError(source, lineno, "trailing tokens in header");
  if (g.width < 1 || g.height < 1 || !(g.resolution > 0.0)) {
    throw ParseError(source, lineno, "width, height and resolution must be positive");
  }
  std::vector<CellState> cells;
  cells.reserve(g.size());
  for (int j = 0; j < g.height; ++j) {
    if (!next_line()) {
      throw ParseError(source, lineno + 1,
                       "expected " + std::to_string(g.height) + " rows, got " + std::to_string(j));
    }
    if (static_cast<int>(line.size()) != g.width) {
      throw ParseError(source, lineno,
                       "ragged row: expected " + std::to_string(g.width) + " cells, got " +
                           std::to_string(line.size()));
    }
    for (char c : line) {
      switch (c) {
        case '.': cells.push_back(CellState::Free); break;
        case '#': cells.push_back(CellState::Occupied); break;
        case '?': cells.push_back(CellState::Unknown); break;
        default:
          throw ParseError(source, lineno, std::string("invalid cell character '") + c + "'");
      }
    }
  }
  while (next_line()) {
    if (!line.empty()) throw ParseError(source, lineno, "unexpected content after last row");
  }
  return OccupancyGrid(g, std::move(cells));
}

inline OccupancyGrid load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open grid file: " + path);
  return read_grid(in, path);
}

inline void save_grid(const std::string& path, const OccupancyGrid& grid) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write grid file: " + path);
  write_grid(out, grid);
}

}  // namespace mrbench
