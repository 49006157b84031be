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

// The standard benchmark suite: procedurally generated scenes grouped as
// static, partially_unknown and dynamic, written as .grid/.scene files plus
// a .suite manifest and default planner configs.

#pragma once

#include <cmath>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "mrbench/dwa.hpp"
#include "mrbench/global_planner.hpp"
#include "mrbench/scenario_io.hpp"
#include "mrbench/teb.hpp"
#include "mrbench/world_gen.hpp"

namespace mrbench {

struct SuiteScene {
  std::string group;
  Scenario scenario;
};

/// Scene names of the narrow-space archetypes.
inline bool is_narrow_scene(const std::string& name) {
  return name == "maze" || name == "corridor_u" || name == "corridor_acute";
}

namespace detail {

inline double path_heading(const GlobalPath& p, bool at_end, double span = 1.0) {
  if (p.size() < 2) return 0.0;
  Point2 a, b;
  if (at_end) {
    b = p.points.back();
    std::size_t k = p.size() - 1;
    while (k > 0 && p.cumulative.back() - p.cumulative[k] < span) --k;
    a = p.points[k];
  } else {
    a = p.points.front();
    std::size_t k = 1;
    while (k + 1 < p.size() && p.cumulative[k] < span) ++k;
    b = p.points[k];
  }
  return std::atan2(b.y - a.y, b.x - a.x);
}

struct PairRule {
  int count = 3;
  double min_length = 6.0;   // m of global path
  double max_length = 24.0;
  int attempts = 400;
  std::function<bool(Point2, Point2, const GlobalPath&)> accept = nullptr;  // optional extra filter
};

// Start/goal pairs drawn from the anchors, with yaws along the global path
// at both ends.
inline std::vector<StartGoal> pick_pairs(const OccupancyGrid& grid, const std::vector<Point2>& anchors,
                                         std::uint64_t seed, const PairRule& rule) {
  SeededStream rng(seed);
  const DistanceField field = distance_transform(grid, UnknownPolicy::AsFree);
  std::vector<StartGoal> out;
  const int n = static_cast<int>(anchors.size());
  for (int attempt = 0; attempt < rule.attempts && static_cast<int>(out.size()) < rule.count; ++attempt) {
    const int i = rng.below(n);
    const int j = rng.below(n);
    if (i == j) continue;
    GlobalPath path;
    try {
      path = plan_global(grid, anchors[i], anchors[j], 0.17, {}, &field);
    } catch (const Error&) {
      continue;
    }
    if (path.length() < rule.min_length || path.length() > rule.max_length) continue;
    if (rule.accept && !rule.accept(anchors[i], anchors[j], path)) continue;
    bool repeated = false;
    for (const StartGoal& p : out) {
      repeated = repeated || (p.start.position() == anchors[i] && p.goal.position() == anchors[j]);
    }
    if (repeated) continue;
    out.push_back({{anchors[i].x, anchors[i].y, path_heading(path, false)},
                   {anchors[j].x, anchors[j].y, path_heading(path, true)}});
  }
  if (static_cast<int>(out.size()) < rule.count) {
    throw InputError("standard suite: could not draw enough start/goal pairs");
  }
  return out;
}

inline Scenario make_scene(const std::string& name, const std::string& map_path, OccupancyGrid map,
                           std::vector<StartGoal> pairs) {
  Scenario s;
  s.name = name;
  s.map_path = map_path;
  s.map = std::move(map);
  s.pairs = std::move(pairs);
  apply_masks(s);
  return s;
}

}  // namespace detail

/// All scenes of the standard suite. Pure function of `seed`.
inline std::vector<SuiteScene> build_standard_suite(std::uint64_t seed = 1) {
  using detail::PairRule;
  using detail::pick_pairs;
  std::vector<SuiteScene> out;

  auto add = [&](const char* group, const char* name, const GeneratedWorld& w, std::uint64_t pair_seed,
                 const PairRule& rule) {
    out.push_back({group, detail::make_scene(name, std::string(name) + ".grid", w.grid,
                                             pick_pairs(w.grid, w.anchors, pair_seed, rule))});
  };

  const GeneratedWorld office = generate_world_with_anchors(WorldKind::Office, {}, seed);
  add("static", "office", office, seed + 11, {.count = 3, .min_length = 8.0, .max_length = 22.0});

  WorldParams house;
  house.width = 12.0;
  house.height = 9.0;
  house.obstacles = 14;
  const GeneratedWorld room = generate_world_with_anchors(WorldKind::OpenRoom, house, seed + 1);
  add("static", "house", room, seed + 12, {.count = 3, .min_length = 6.0, .max_length = 16.0});

  const GeneratedWorld maze = generate_world_with_anchors(WorldKind::Maze, {}, seed + 2);
  add("static", "maze", maze, seed + 13,
      {.count = 3, .min_length = 8.0, .max_length = 18.0, .attempts = 4000});

  const GeneratedWorld u = generate_world_with_anchors(WorldKind::CorridorU, {}, seed + 3);
  // Entry of leg 0 to the exits of legs 1, 2 and 3.
  std::vector<StartGoal> u_pairs;
  for (std::size_t leg : {1u, 2u, 3u}) {
    const Point2 a = u.anchors[0];
    const Point2 b = u.anchors[3 * leg + 2];
    const GlobalPath p = plan_global(u.grid, a, b, 0.17);
    u_pairs.push_back({{a.x, a.y, detail::path_heading(p, false)},
                       {b.x, b.y, detail::path_heading(p, true)}});
  }
  out.push_back({"static", detail::make_scene("corridor_u", "corridor_u.grid", u.grid, u_pairs)});

  const GeneratedWorld acute = generate_world_with_anchors(WorldKind::CorridorAcute, {}, seed + 4);
  // One-way: always from the first leg into the second.
  std::vector<StartGoal> a_pairs;
  for (int k = 0; k < 3; ++k) {
    const Point2 a = acute.anchors[static_cast<std::size_t>(k)];
    const Point2 b = acute.anchors[static_cast<std::size_t>(3 + k)];
    const GlobalPath p = plan_global(acute.grid, a, b, 0.17);
    a_pairs.push_back({{a.x, a.y, detail::path_heading(p, false)},
                       {b.x, b.y, detail::path_heading(p, true)}});
  }
  out.push_back({"static", detail::make_scene("corridor_acute", "corridor_acute.grid", acute.grid,
                                              a_pairs)});

  // Office with its central 13.0 x 7.7 m block blanked in the prior map.
  {
    const GridGeometry& g = office.grid.geometry();
    const Rect mask = Rect::centered({0.5 * g.size_x(), 0.5 * g.size_y()}, 13.0, 7.7);
    PairRule rule{.count = 3, .min_length = 10.0, .max_length = 28.0, .attempts = 2000};
    rule.accept = [mask](Point2 a, Point2 b, const GlobalPath& p) {
      bool crosses = false;
      for (const Point2& q : p.points) crosses = crosses || mask.contains(q);
      return crosses && !mask.contains(a) && !mask.contains(b);
    };
    Scenario s = detail::make_scene("office_masked", "office.grid", office.grid,
                                    pick_pairs(office.grid, office.anchors, seed + 14, rule));
    s.masks.push_back(mask);
    apply_masks(s);
    out.push_back({"partially_unknown", std::move(s)});
  }

  // Open space crossed by six walking people.
  {
    WorldParams open;
    open.width = 14.0;
    open.height = 10.0;
    const GeneratedWorld w = generate_world_with_anchors(WorldKind::OpenRoom, open, seed + 5);
    std::vector<StartGoal> pairs;
    const double ys[3][2] = {{2.0, 8.0}, {5.0, 5.0}, {8.0, 2.0}};
    for (const auto& y : ys) pairs.push_back({{1.0, y[0], 0.0}, {open.width - 1.0, y[1], 0.0}});
    Scenario s = detail::make_scene("crowd", "crowd.grid", w.grid, pairs);
    // Four people crossing the room vertically, one walking a loop.
    const double xs[4] = {4.0, 6.5, 9.0, 11.5};
    for (int k = 0; k < 4; ++k) {
      const double lo = 1.5 + 0.9 * k;
      s.agents.emplace_back(0.25, (20.0 + 3.0 * k) / 100.0,
                            std::vector<Point2>{{xs[k], lo}, {xs[k], open.height - 1.5}});
    }
    s.agents.emplace_back(0.25, 0.2, std::vector<Point2>{{3.0, 3.0}, {6.0, 7.5}, {10.5, 7.5}, {8.0, 2.5}},
                          AgentMode::Loop);
    out.push_back({"dynamic", std::move(s)});
  }

  // Office corridor with two people walking up and down it.
  {
    const GridGeometry& g = office.grid.geometry();
    const double cy = 0.5 * g.size_y();
    PairRule rule{.count = 3, .min_length = 8.0, .max_length = 22.0, .attempts = 2000};
    rule.accept = [cy](Point2 a, Point2 b, const GlobalPath&) {
      return std::abs(a.y - cy) > 1.5 || std::abs(b.y - cy) > 1.5;
    };
    Scenario s = detail::make_scene("office_people", "office.grid", office.grid,
                                    pick_pairs(office.grid, office.anchors, seed + 15, rule));
    s.agents.emplace_back(0.25, 0.4, std::vector<Point2>{{6.0, cy + 0.5}, {23.0, cy + 0.5}});
    s.agents.emplace_back(0.25, 0.35, std::vector<Point2>{{22.0, cy - 0.5}, {7.0, cy - 0.5}});
    out.push_back({"dynamic", std::move(s)});
  }

  for (const SuiteScene& sc : out) validate_scenario(sc.scenario);
  return out;
}

/// Manifest text for `scenes`, in their order, one `group` line per run of
/// scenes sharing a group.
inline std::string suite_manifest_text(const std::vector<SuiteScene>& scenes) {
  std::string out;
  std::string group;
  for (const SuiteScene& s : scenes) {
    if (s.group != group) {
      group = s.group;
      out += "group " + group + "\n";
    }
    out += "scene " + s.scenario.name + ".scene\n";
  }
  return out;
}

/// Writes scenes, maps, `standard.suite`, `dwa.cfg` and `teb.cfg` into
/// `dir`. Returns the manifest path.
inline std::string write_standard_suite(const std::filesystem::path& dir, std::uint64_t seed = 1) {
  std::filesystem::create_directories(dir);
  const std::vector<SuiteScene> scenes = build_standard_suite(seed);
  for (const SuiteScene& s : scenes) save_scenario((dir / (s.scenario.name + ".scene")).string(), s.scenario);
  text::write_file(dir / "standard.suite", suite_manifest_text(scenes));
  text::write_file(dir / "dwa.cfg", to_string(DwaConfig{}));
  text::write_file(dir / "teb.cfg", to_string(TebConfig{}));
  return (dir / "standard.suite").string();
}

}  // namespace mrbench
