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

#pragma once

#include <algorithm>
#include <sstream>
#include <string>

#include "mrbench/harness.hpp"

namespace mrbench {

inline constexpr double kSvgViewport = 800.0;  // px, longer map side

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

/// Standalone SVG of a trial: map cells, agent tracks, robot path and the
/// start/goal markers. World y points up; the SVG is flipped accordingly.
inline std::string trajectory_svg(const TrialResult& r) {
  const OccupancyGrid& map = r.sensed_map;
  const GridGeometry& g = map.geometry();
  const double scale = kSvgViewport / std::max(g.size_x(), g.size_y());
  const double w = g.size_x() * scale;
  const double h = g.size_y() * scale;
  auto px = [&](double x) { return format_number((x - g.origin.x) * scale); };
  auto py = [&](double y) { return format_number(h - (y - g.origin.y) * scale); };
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number(w) << "\" height=\""
     << format_number(h) << "\" viewBox=\"0 0 " << format_number(w) << ' ' << format_number(h)
     << "\">\n";
  os << "<title>" << xml_escape(r.scenario) << " pair " << r.pair_index + 1 << ' '
     << xml_escape(r.planner) << ' ' << to_string(r.log.outcome) << "</title>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << format_number(w) << "\" height=\"" << format_number(h)
     << "\" fill=\"#ffffff\"/>\n";
  const double cell = g.resolution * scale;
  for (CellState s : {CellState::Occupied, CellState::Unknown}) {
    os << "<g fill=\"" << (s == CellState::Occupied ? "#222222" : "#b0b0b0") << "\">\n";
    for (int j = 0; j < g.height; ++j) {
      int i = 0;
      while (i < g.width) {
        if (map.at({i, j}) != s) {
          ++i;
          continue;
        }
        int e = i;
        while (e + 1 < g.width && map.at({e + 1, j}) == s) ++e;
        const double x0 = g.origin.x + i * g.resolution;
        const double y1 = g.origin.y + (j + 1) * g.resolution;
        os << "<rect x=\"" << px(x0) << "\" y=\"" << py(y1) << "\" width=\""
           << format_number((e - i + 1) * cell) << "\" height=\"" << format_number(cell) << "\"/>\n";
        i = e + 1;
      }
    }
    os << "</g>\n";
  }
  if (!r.agent_tracks.empty() && !r.agent_tracks.front().empty()) {
    const std::size_t n_agents = r.agent_tracks.front().size();
    for (std::size_t a = 0; a < n_agents; ++a) {
      os << "<polyline fill=\"none\" stroke=\"#e08020\" stroke-width=\"1.5\" points=\"";
      for (const auto& tick : r.agent_tracks) os << px(tick[a].x) << ',' << py(tick[a].y) << ' ';
      os << "\"/>\n";
    }
  }
  os << "<polyline fill=\"none\" stroke=\"#1060d0\" stroke-width=\"2\" points=\"";
  for (const LogRecord& rec : r.log.records) os << px(rec.x) << ',' << py(rec.y) << ' ';
  os << "\"/>\n";
  const double marker = std::max(3.0, 0.15 * scale);
  os << "<circle cx=\"" << px(r.start.x) << "\" cy=\"" << py(r.start.y) << "\" r=\""
     << format_number(marker) << "\" fill=\"#20a040\"/>\n";
  os << "<circle cx=\"" << px(r.goal.x) << "\" cy=\"" << py(r.goal.y) << "\" r=\""
     << format_number(marker) << "\" fill=\"#d02020\"/>\n";
  os << "</svg>\n";
  return os.str();
}

inline void emit_trajectory_svg(const TrialResult& r, const std::string& path) {
  text::write_file(path, trajectory_svg(r));
}

}  // namespace mrbench
