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

// Scene files (".scene"), one directive per line:
//
//   name <string>
//   map <path to .grid, relative to the scene file>
//   mask <x> <y> <w> <h>                          (optional, repeatable)
//   pair <sx> <sy> <s_theta> <gx> <gy> <g_theta>  (repeatable, radians)
//   agent <radius> <speed> <loop|ping-pong> <x1> <y1> <x2> <y2> [...]
//   scan <amin_deg> <amax_deg> <incr_deg> <rmin> <rmax>   (optional)

#pragma once

#include <filesystem>
#include <sstream>
#include <string>

#include "mrbench/grid_io.hpp"
#include "mrbench/text_io.hpp"
#include "mrbench/world.hpp"

namespace mrbench {

/// Parses a scene without touching the filesystem for the map: the caller
/// supplies a loader for the `map` directive. The result is validated.
template <typename MapLoader>
Scenario parse_scenario(std::istream& is, const std::string& source, MapLoader&& load_map,
                        double robot_radius = 0.17) {
  Scenario s;
  bool have_map = false;
  int map_line = 0;
  for (const text::Line& l : text::tokenize(is)) {
    const std::string& key = l.tokens[0];
    auto num = [&](std::size_t k) { return text::to_double(l.tokens[k], source, l.number); };
    if (key == "name") {
      text::expect_arity(l, 2, source);
      s.name = l.tokens[1];
    } else if (key == "map") {
      text::expect_arity(l, 2, source);
      s.map_path = l.tokens[1];
      s.map = load_map(s.map_path);
      have_map = true;
      map_line = l.number;
    } else if (key == "mask") {
      text::expect_arity(l, 5, source);
      s.masks.push_back({num(1), num(2), num(3), num(4)});
      if (!(s.masks.back().w > 0.0) || !(s.masks.back().h > 0.0)) {
        throw ParseError(source, l.number, "mask extent must be positive");
      }
    } else if (key == "pair") {
      text::expect_arity(l, 7, source);
      s.pairs.push_back({{num(1), num(2), num(3)}, {num(4), num(5), num(6)}});
    } else if (key == "agent") {
      if (l.tokens.size() < 8 || (l.tokens.size() - 4) % 2 != 0) {
        throw ParseError(source, l.number,
                         "agent expects <radius> <speed> <mode> followed by >= 2 x y waypoints");
      }
      AgentMode mode;
      if (l.tokens[3] == "loop") {
        mode = AgentMode::Loop;
      } else if (l.tokens[3] == "ping-pong") {
        mode = AgentMode::PingPong;
      } else {
        throw ParseError(source, l.number, "agent mode must be 'loop' or 'ping-pong'");
      }
      std::vector<Point2> pts;
      for (std::size_t k = 4; k + 1 < l.tokens.size(); k += 2) pts.push_back({num(k), num(k + 1)});
      try {
        s.agents.emplace_back(num(1), num(2), std::move(pts), mode);
      } catch (const ValidationError& e) {
        throw ParseError(source, l.number, e.what());
      }
    } else if (key == "scan") {
      text::expect_arity(l, 6, source);
      s.scan = {deg_to_rad(num(1)), deg_to_rad(num(2)), deg_to_rad(num(3)), num(4), num(5)};
    } else {
      throw ParseError(source, l.number, "unknown directive '" + key + "'");
    }
  }
  if (!have_map) throw ParseError(source, 0, "missing 'map' directive");
  try {
    apply_masks(s);
  } catch (const InputError& e) {
    throw ParseError(source, map_line, e.what());
  }
  validate_scenario(s, robot_radius);
  return s;
}

inline Scenario load_scenario(const std::string& path, double robot_radius = 0.17) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scene file: " + path);
  const std::filesystem::path dir = std::filesystem::path(path).parent_path();
  return parse_scenario(
      in, path, [&](const std::string& rel) { return load_grid((dir / rel).string()); },
      robot_radius);
}

/// Scene text for `s`. The map is referenced by `s.map_path`, or
/// "<name>.grid" when empty.
inline std::string scenario_to_string(const Scenario& s) {
  std::ostringstream os;
  auto n = [](double v) { return format_exact(v); };
  os << "name " << s.name << '\n';
  os << "map " << (s.map_path.empty() ? s.name + ".grid" : s.map_path) << '\n';
  for (const Rect& r : s.masks) {
    os << "mask " << n(r.x) << ' ' << n(r.y) << ' ' << n(r.w) << ' ' << n(r.h) << '\n';
  }
  for (const StartGoal& p : s.pairs) {
    os << "pair " << n(p.start.x) << ' ' << n(p.start.y) << ' ' << n(p.start.theta) << ' '
       << n(p.goal.x) << ' ' << n(p.goal.y) << ' ' << n(p.goal.theta) << '\n';
  }
  for (const DynamicAgent& a : s.agents) {
    os << "agent " << n(a.radius()) << ' ' << n(a.speed()) << ' ' << to_string(a.mode());
    for (const Point2& w : a.waypoints()) os << ' ' << n(w.x) << ' ' << n(w.y);
    os << '\n';
  }
  if (s.scan != ScanSpec{}) {
    os << "scan " << n(rad_to_deg(s.scan.angle_min)) << ' ' << n(rad_to_deg(s.scan.angle_max))
       << ' ' << n(rad_to_deg(s.scan.angle_increment)) << ' ' << n(s.scan.range_min) << ' '
       << n(s.scan.range_max) << '\n';
  }
  return os.str();
}

/// Writes the scene file and, next to it, its ground-truth map.
inline void save_scenario(const std::string& path, const Scenario& s) {
  const std::filesystem::path scene(path);
  const std::string rel = s.map_path.empty() ? s.name + ".grid" : s.map_path;
  Scenario copy = s;
  copy.map_path = rel;
  text::write_file(scene, scenario_to_string(copy));
  save_grid((scene.parent_path() / rel).string(), s.map);
}

}  // namespace mrbench
