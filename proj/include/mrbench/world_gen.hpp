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

// Procedural stand-ins for the benchmark's scenario archetypes. Every
// generator is a pure function of (kind, params, seed).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mrbench/gridmap.hpp"
#include "mrbench/world.hpp"

namespace mrbench {

enum class WorldKind { Office, Maze, CorridorU, CorridorAcute, OpenRoom };

inline const char* to_string(WorldKind k) {
  switch (k) {
    case WorldKind::Office: return "office";
    case WorldKind::Maze: return "maze";
    case WorldKind::CorridorU: return "corridor_u";
    case WorldKind::CorridorAcute: return "corridor_acute";
    case WorldKind::OpenRoom: return "open_room";
  }
  return "?";
}

inline WorldKind parse_world_kind(std::string_view s) {
  if (s == "office") return WorldKind::Office;
  if (s == "maze") return WorldKind::Maze;
  if (s == "corridor_u") return WorldKind::CorridorU;
  if (s == "corridor_acute") return WorldKind::CorridorAcute;
  if (s == "open_room") return WorldKind::OpenRoom;
  throw InputError("unknown world kind '" + std::string(s) + "'");
}

/// Generator parameters. Zero / negative values select the kind's default.
struct WorldParams {
  double width = 0.0;           // meters
  double height = 0.0;          // meters
  double passage_width = 0.0;   // corridor / maze passage / door width
  double wall_thickness = 0.2;
  double resolution = 0.1;
  int rooms_per_side = 0;       // office
  bool t_junction = false;      // office: vertical corridor off the main one
  double corridor_width = 0.0;  // office main corridor
  int obstacles = -1;           // office furniture per room, open-room pillars
  int legs = 0;                 // corridor_u
  double leg_length = 0.0;      // corridor_u / corridor_acute first leg
  double turn_deg = 135.0;      // corridor_acute heading change
};

struct GeneratedWorld {
  OccupancyGrid grid;
  std::vector<Point2> anchors;  // designated start/goal locations, all mutually connected
};

namespace detail {

// Portable seeded stream: raw mt19937_64 output mapped by hand so results do
// not depend on the standard library's distribution implementations.
class SeededStream {
 public:
  explicit SeededStream(std::uint64_t seed) : rng_(seed) {}
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int below(int n) {
    const int k = static_cast<int>(uniform() * n);
    return k < n ? k : n - 1;
  }

 private:
  std::mt19937_64 rng_;
};

inline OccupancyGrid blank_grid(double w, double h, double res, CellState fill) {
  const int nx = static_cast<int>(std::lround(w / res));
  const int ny = static_cast<int>(std::lround(h / res));
  return OccupancyGrid(nx, ny, res, {0.0, 0.0}, fill);
}

inline void outer_walls(OccupancyGrid& g, double t) {
  const double w = g.geometry().size_x();
  const double h = g.geometry().size_y();
  g.fill_box({0, 0}, {w, t}, CellState::Occupied);
  g.fill_box({0, h - t}, {w, h}, CellState::Occupied);
  g.fill_box({0, 0}, {t, h}, CellState::Occupied);
  g.fill_box({w - t, 0}, {w, h}, CellState::Occupied);
}

inline bool anchors_connected(const OccupancyGrid& grid, const std::vector<Point2>& anchors,
                              double radius) {
  if (anchors.empty()) return true;
  const DistanceField field = distance_transform(grid);
  const GridGeometry& g = grid.geometry();
  for (const Point2& a : anchors) {
    if (!g.contains(a) || grid.state_at(a) != CellState::Free) return false;
    if (distance_at(field, a.x, a.y) < radius) return false;
  }
  const std::vector<bool> reach = reachable_cells(field, g.cell_at(anchors.front()), radius);
  for (const Point2& a : anchors) {
    if (!reach[g.index(g.cell_at(a))]) return false;
  }
  return true;
}

// Places axis-aligned boxes inside `region`, rejecting any that would come
// within `keep_out` of a protected point or disconnect the anchors.
inline void scatter_boxes(OccupancyGrid& grid, SeededStream& rng, const Rect& region, int count,
                          double min_side, double max_side, const std::vector<Point2>& keep_clear,
                          double keep_out, const std::vector<Point2>& anchors,
                          double robot_radius, int attempts_per_box = 8) {
  for (int n = 0; n < count; ++n) {
    for (int attempt = 0; attempt < attempts_per_box; ++attempt) {
      const double sx = rng.uniform(min_side, max_side);
      const double sy = rng.uniform(min_side, max_side);
      if (region.w <= sx || region.h <= sy) break;
      const double x0 = rng.uniform(region.x, region.x + region.w - sx);
      const double y0 = rng.uniform(region.y, region.y + region.h - sy);
      bool blocked = false;
      for (const Point2& p : keep_clear) {
        const double dx = std::max({x0 - p.x, 0.0, p.x - (x0 + sx)});
        const double dy = std::max({y0 - p.y, 0.0, p.y - (y0 + sy)});
        if (std::hypot(dx, dy) < keep_out) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      OccupancyGrid trial = grid;
      trial.fill_box({x0, y0}, {x0 + sx, y0 + sy}, CellState::Occupied);
      if (!anchors_connected(trial, anchors, robot_radius + grid.resolution())) continue;
      grid = std::move(trial);
      break;
    }
  }
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InputError("generate_world: " + what);
}

inline GeneratedWorld generate_office(WorldParams p, std::uint64_t seed) {
  if (p.width <= 0) p.width = 29.4;
  if (p.height <= 0) p.height = 21.9;
  if (p.corridor_width <= 0) p.corridor_width = 2.0;
  if (p.passage_width <= 0) p.passage_width = 1.0;
  if (p.rooms_per_side <= 0) p.rooms_per_side = 5;
  if (p.obstacles < 0) p.obstacles = 3;
  const double t = p.wall_thickness;
  const double door = p.passage_width;
  require(door >= 0.6, "door width below 0.6 m");
  const double room_w = (p.width - 2 * t) / p.rooms_per_side;
  const double room_h = (p.height - 2 * t - p.corridor_width) / 2.0 - t;
  require(room_w >= door + 1.0 && room_h >= 2.0, "office extent too small for the room layout");

  SeededStream rng(seed);
  OccupancyGrid grid = blank_grid(p.width, p.height, p.resolution, CellState::Free);
  outer_walls(grid, t);
  const double cy0 = 0.5 * (p.height - p.corridor_width);  // corridor lower edge
  const double cy1 = cy0 + p.corridor_width;               // corridor upper edge
  // Corridor walls.
  grid.fill_box({0, cy0 - t}, {p.width, cy0}, CellState::Occupied);
  grid.fill_box({0, cy1}, {p.width, cy1 + t}, CellState::Occupied);

  std::vector<Point2> anchors;
  std::vector<Point2> keep_clear;
  struct Room {
    Rect interior;
    bool upper;
  };
  std::vector<Room> rooms;
  const int tee_room = p.t_junction ? p.rooms_per_side / 2 : -1;
  for (int side = 0; side < 2; ++side) {
    const bool upper = side == 1;
    const double y_lo = upper ? cy1 + t : t;
    const double y_hi = upper ? p.height - t : cy0 - t;
    for (int k = 0; k < p.rooms_per_side; ++k) {
      const double x_lo = t + k * room_w;
      const double x_hi = x_lo + room_w;
      if (k > 0) grid.fill_box({x_lo - 0.5 * t, y_lo}, {x_lo + 0.5 * t, y_hi}, CellState::Occupied);
      if (upper && k == tee_room) {
        // This slot becomes a corridor branch of the main corridor's width.
        const double cx = 0.5 * (x_lo + x_hi);
        const double half = 0.5 * p.corridor_width;
        grid.fill_box({x_lo, y_lo}, {x_hi, y_hi}, CellState::Occupied);
        grid.fill_box({cx - half, cy1 - 0.01}, {cx + half, y_hi}, CellState::Free);
        anchors.push_back({cx, 0.5 * (y_lo + y_hi)});
        anchors.push_back({cx, y_hi - 1.0});
        continue;
      }
      const double dx = rng.uniform(x_lo + 0.5 * t + 0.3, x_hi - 0.5 * t - 0.3 - door);
      const double wall_lo = upper ? cy1 : cy0 - t;
      grid.fill_box({dx, wall_lo - 0.01}, {dx + door, wall_lo + t + 0.01}, CellState::Free);
      const Point2 door_mid{dx + 0.5 * door, upper ? cy1 + t : cy0 - t};
      const Point2 inside{door_mid.x, upper ? door_mid.y + 0.8 : door_mid.y - 0.8};
      const Point2 outside{door_mid.x, upper ? cy1 - 0.7 : cy0 + 0.7};
      keep_clear.push_back(door_mid);
      keep_clear.push_back(inside);
      keep_clear.push_back(outside);
      const Point2 center{0.5 * (x_lo + x_hi), 0.5 * (y_lo + y_hi)};
      anchors.push_back(center);
      keep_clear.push_back(center);
      rooms.push_back({Rect{x_lo + 0.5 * t + 0.05, y_lo + 0.05, room_w - t - 0.1,
                            y_hi - y_lo - 0.1},
                       upper});
    }
  }
  const double cmid = 0.5 * (cy0 + cy1);
  for (double fx : {0.06, 0.3, 0.5, 0.7, 0.94}) anchors.push_back({fx * p.width, cmid});
  for (Point2 a : anchors) keep_clear.push_back(a);

  const double robot_radius = 0.17;
  for (const Room& r : rooms) {
    scatter_boxes(grid, rng, r.interior, p.obstacles, 0.4, 1.2, keep_clear, 0.9, anchors,
                  robot_radius);
  }
  return {std::move(grid), std::move(anchors)};
}

inline GeneratedWorld generate_maze(WorldParams p, std::uint64_t seed) {
  if (p.width <= 0) p.width = 23.7;
  if (p.height <= 0) p.height = 25.5;
  if (p.passage_width <= 0) p.passage_width = 1.0;
  const double t = p.wall_thickness;
  const double pw = p.passage_width;
  require(pw >= 2 * 0.17 + 2 * p.resolution, "maze passage narrower than the robot");
  const double pitch = pw + t;
  const int nx = static_cast<int>(std::floor((p.width - t) / pitch + 1e-9));
  const int ny = static_cast<int>(std::floor((p.height - t) / pitch + 1e-9));
  require(nx >= 2 && ny >= 2, "maze extent below two cells per axis");

  OccupancyGrid grid = blank_grid(p.width, p.height, p.resolution, CellState::Occupied);
  auto cell_box = [&](int a, int b) {
    const double x0 = t + a * pitch;
    const double y0 = t + b * pitch;
    return Rect{x0, y0, pw, pw};
  };
  auto carve = [&](const Rect& r) {
    grid.fill_box({r.x, r.y}, {r.x + r.w, r.y + r.h}, CellState::Free);
  };
  for (int b = 0; b < ny; ++b) {
    for (int a = 0; a < nx; ++a) carve(cell_box(a, b));
  }
  // Randomized depth-first carving yields a perfect maze.
  SeededStream rng(seed);
  std::vector<bool> visited(static_cast<std::size_t>(nx * ny), false);
  std::vector<std::pair<int, int>> stack{{0, 0}};
  visited[0] = true;
  while (!stack.empty()) {
    const auto [a, b] = stack.back();
    std::pair<int, int> options[4];
    int n = 0;
    const int da[4] = {1, -1, 0, 0};
    const int db[4] = {0, 0, 1, -1};
    for (int d = 0; d < 4; ++d) {
      const int na = a + da[d];
      const int nb = b + db[d];
      if (na < 0 || nb < 0 || na >= nx || nb >= ny) continue;
      if (visited[static_cast<std::size_t>(nb * nx + na)]) continue;
      options[n++] = {na, nb};
    }
    if (n == 0) {
      stack.pop_back();
      continue;
    }
    const auto [na, nb] = options[rng.below(n)];
    const Rect r0 = cell_box(a, b);
    const Rect r1 = cell_box(na, nb);
    const double x0 = std::min(r0.x, r1.x);
    const double y0 = std::min(r0.y, r1.y);
    carve({x0, y0, std::max(r0.x, r1.x) + pw - x0, std::max(r0.y, r1.y) + pw - y0});
    visited[static_cast<std::size_t>(nb * nx + na)] = true;
    stack.push_back({na, nb});
  }
  std::vector<Point2> anchors;
  for (int b = 0; b < ny; ++b) {
    for (int a = 0; a < nx; ++a) {
      const Rect r = cell_box(a, b);
      anchors.push_back({r.x + 0.5 * pw, r.y + 0.5 * pw});
    }
  }
  return {std::move(grid), std::move(anchors)};
}

inline double segment_distance(Point2 q, Point2 s0, Point2 s1) {
  const Point2 ab = s1 - s0;
  const double u = std::clamp(dot(q - s0, ab) / dot(ab, ab), 0.0, 1.0);
  return distance(q, s0 + u * ab);
}

// Frees every cell whose center lies within `half_width` of the polyline.
inline void carve_polyline(OccupancyGrid& grid, const std::vector<Point2>& line, double half_width) {
  const GridGeometry& g = grid.geometry();
  for (int j = 0; j < g.height; ++j) {
    for (int i = 0; i < g.width; ++i) {
      const Point2 q = g.center({i, j});
      for (std::size_t k = 0; k + 1 < line.size(); ++k) {
        if (segment_distance(q, line[k], line[k + 1]) <= half_width) {
          grid.set(i, j, CellState::Free);
          break;
        }
      }
    }
  }
}

// Legs are joined by semicircular turns around the rounded divider tips, so
// the passage keeps its width through every turn.
inline GeneratedWorld generate_corridor_u(WorldParams p, std::uint64_t) {
  if (p.passage_width <= 0) p.passage_width = 1.0;
  if (p.legs <= 0) p.legs = 4;
  if (p.leg_length <= 0) p.leg_length = 8.0;
  const double t = p.wall_thickness;
  const double pw = p.passage_width;
  require(pw >= 2 * 0.17 + 2 * p.resolution, "passage narrower than the robot");
  require(p.legs >= 2 && p.leg_length >= 2 * pw + 1.0, "need >= 2 legs longer than two passage widths");
  const double w = 2 * t + p.leg_length;
  const double h = 2 * t + p.legs * pw + (p.legs - 1) * t;
  OccupancyGrid grid = blank_grid(w, h, p.resolution, CellState::Occupied);
  const double turn_r = 0.5 * (pw + t);  // centerline radius of a turn
  const double x_lo = t + pw + 0.5 * t;  // turn centers
  const double x_hi = t + p.leg_length - pw - 0.5 * t;
  auto centerline_y = [&](int k) { return t + k * (pw + t) + 0.5 * pw; };
  auto dist = [&](Point2 q) {
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < p.legs; ++k) {
      const double y = centerline_y(k);
      // Leg k runs between turn centers; the outer ends of the first and
      // last leg are dead ends.
      const bool rightward = (k % 2) == 0;
      const double from = k == 0 ? t + 0.5 * pw : (rightward ? x_lo : x_hi);
      const double to = k + 1 == p.legs ? (rightward ? t + p.leg_length - 0.5 * pw : t + 0.5 * pw)
                                        : (rightward ? x_hi : x_lo);
      best = std::min(best, segment_distance(q, {from, y}, {to, y}));
      if (k + 1 < p.legs) {
        const Point2 c{rightward ? x_hi : x_lo, y + turn_r};
        if (rightward ? q.x >= c.x : q.x <= c.x) {
          best = std::min(best, std::abs(distance(q, c) - turn_r));
        }
      }
    }
    return best;
  };
  const GridGeometry& g = grid.geometry();
  for (int j = 0; j < g.height; ++j) {
    for (int i = 0; i < g.width; ++i) {
      if (dist(g.center({i, j})) <= 0.5 * pw) grid.set(i, j, CellState::Free);
    }
  }
  std::vector<Point2> anchors;
  for (int k = 0; k < p.legs; ++k) {
    // Entry end, middle, exit end of each leg, in travel order.
    const bool rightward = (k % 2) == 0;
    const double ya = centerline_y(k);
    const double xs = rightward ? t + 0.6 : t + p.leg_length - 0.6;
    const double xe = rightward ? t + p.leg_length - 0.6 - pw : t + 0.6 + pw;
    anchors.push_back({xs, ya});
    anchors.push_back({0.5 * (xs + xe), ya});
    anchors.push_back({xe, ya});
  }
  return {std::move(grid), std::move(anchors)};
}

inline GeneratedWorld generate_corridor_acute(WorldParams p, std::uint64_t) {
  if (p.passage_width <= 0) p.passage_width = 1.0;
  if (p.leg_length <= 0) p.leg_length = 8.0;
  const double pw = p.passage_width;
  const double t = p.wall_thickness;
  require(pw >= 2 * 0.17 + 2 * p.resolution, "passage narrower than the robot");
  require(p.leg_length >= 3.0, "leg length below 3 m");
  require(p.turn_deg > 0.0 && p.turn_deg < 180.0, "turn angle must lie in (0, 180) degrees");
  const double l1 = p.leg_length;
  const double l2 = 0.75 * p.leg_length;
  const double turn = deg_to_rad(p.turn_deg);
  const Point2 d2{std::cos(turn), std::sin(turn)};
  const double margin = t + 0.5 * pw;
  // Leg 1 runs along +x from A to C, leg 2 leaves C with heading `turn`.
  const double ax = margin + std::max(0.0, -(l1 + l2 * d2.x));
  const Point2 a{ax, margin};
  const Point2 c{ax + l1, margin};
  const Point2 b = c + l2 * d2;
  const double w = std::max(c.x, b.x) + margin;
  const double h = std::max(a.y, b.y) + margin;
  OccupancyGrid grid = blank_grid(w, h, p.resolution, CellState::Occupied);
  carve_polyline(grid, {a, c, b}, 0.5 * pw);
  std::vector<Point2> anchors;
  for (double f : {0.08, 0.25, 0.45}) anchors.push_back(a + f * (c - a));
  for (double f : {0.92, 0.75, 0.55}) anchors.push_back(c + f * (b - c));
  return {std::move(grid), std::move(anchors)};
}

inline GeneratedWorld generate_open_room(WorldParams p, std::uint64_t seed) {
  if (p.width <= 0) p.width = 10.0;
  if (p.height <= 0) p.height = 8.0;
  if (p.obstacles < 0) p.obstacles = 0;
  const double t = p.wall_thickness;
  require(p.width >= 3.0 && p.height >= 3.0, "room smaller than 3 x 3 m");
  OccupancyGrid grid = blank_grid(p.width, p.height, p.resolution, CellState::Free);
  outer_walls(grid, t);
  std::vector<Point2> anchors;
  for (double fy : {0.2, 0.5, 0.8}) {
    anchors.push_back({1.0, fy * p.height});
    anchors.push_back({p.width - 1.0, fy * p.height});
  }
  anchors.push_back({0.5 * p.width, 0.5 * p.height});
  SeededStream rng(seed);
  scatter_boxes(grid, rng, Rect{t + 0.6, t + 0.6, p.width - 2 * t - 1.2, p.height - 2 * t - 1.2},
                p.obstacles, 0.3, 0.9, anchors, 0.9, anchors, 0.17, 16);
  return {std::move(grid), std::move(anchors)};
}

}  // namespace detail

/// Builds a world of the given archetype. Throws InputError when the
/// parameters leave no room for a traversable layout.
inline GeneratedWorld generate_world_with_anchors(WorldKind kind, const WorldParams& params,
                                                  std::uint64_t seed) {
  detail::require(params.resolution > 0.0 && params.resolution <= 0.25,
                  "resolution must lie in (0, 0.25] m");
  detail::require(params.wall_thickness >= params.resolution, "walls thinner than one cell");
  switch (kind) {
    case WorldKind::Office: return detail::generate_office(params, seed);
    case WorldKind::Maze: return detail::generate_maze(params, seed);
    case WorldKind::CorridorU: return detail::generate_corridor_u(params, seed);
    case WorldKind::CorridorAcute: return detail::generate_corridor_acute(params, seed);
    case WorldKind::OpenRoom: return detail::generate_open_room(params, seed);
  }
  throw InputError("generate_world: unknown kind");
}

inline OccupancyGrid generate_world(WorldKind kind, const WorldParams& params, std::uint64_t seed) {
  return generate_world_with_anchors(kind, params, seed).grid;
}

}  // namespace mrbench
