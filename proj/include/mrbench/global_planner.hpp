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

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <queue>
#include <utility>
#include <vector>

#include "mrbench/common.hpp"
#include "mrbench/gridmap.hpp"

namespace mrbench {

class NoPathError : public Error {
 public:
  using Error::Error;
};

struct GlobalPath {
  std::vector<Point2> points;
  std::vector<double> cumulative;   // arc length at each point, starts at 0
  std::vector<double> cost_to_go;   // navigation-function value at each point

  bool empty() const { return points.empty(); }
  std::size_t size() const { return points.size(); }
  double length() const { return cumulative.empty() ? 0.0 : cumulative.back(); }

  void push_back(Point2 p, double cost) {
    cumulative.push_back(points.empty() ? 0.0 : cumulative.back() + distance(points.back(), p));
    points.push_back(p);
    cost_to_go.push_back(cost);
  }
};

struct GlobalPlannerConfig {
  double obstacle_weight = 5.0;    // w_obs
  double inflation_factor = 2.0;   // d_infl = factor * radius
  double unknown_penalty = 1.0;    // extra cost per meter through Unknown cells
  bool smooth = true;
};

namespace detail {

struct Neighbor {
  int di;
  int dj;
  double length;  // in cells
};

inline constexpr Neighbor kNeighbors[8] = {
    {1, 0, 1.0},  {-1, 0, 1.0},  {0, 1, 1.0},  {0, -1, 1.0},
    {1, 1, std::numbers::sqrt2}, {-1, 1, std::numbers::sqrt2},
    {1, -1, std::numbers::sqrt2}, {-1, -1, std::numbers::sqrt2}};

}  // namespace detail

/// Cost-to-go over the free space of a grid, computed outward from a goal.
class NavigationFunction {
 public:
  NavigationFunction(const OccupancyGrid& grid, const DistanceField& field, double radius,
                     const GlobalPlannerConfig& cfg = {})
      : grid_(&grid), field_(&field), radius_(radius), cfg_(cfg) {
    cost_.assign(grid.geometry().size(), std::numeric_limits<double>::infinity());
  }

  bool traversable(CellIndex c) const {
    return grid_->geometry().contains(c) && field_->value(c) >= radius_ &&
           grid_->at(c) != CellState::Occupied;
  }

  /// Whether a one-cell move from `c` by (di, dj) is allowed. Diagonal moves
  /// may not cut a blocked corner.
  bool can_move(CellIndex c, int di, int dj) const {
    if (!traversable({c.i + di, c.j + dj})) return false;
    if (di != 0 && dj != 0) {
      return traversable({c.i + di, c.j}) && traversable({c.i, c.j + dj});
    }
    return true;
  }

  double step_cost(CellIndex to, double cells) const {
    const double res = grid_->resolution();
    const double len = cells * res;
    const double inflation = cfg_.inflation_factor * radius_;
    double cost = len + cfg_.obstacle_weight * std::max(0.0, inflation - field_->value(to));
    if (grid_->at(to) == CellState::Unknown) cost += cfg_.unknown_penalty * len;
    return cost;
  }

  /// Dijkstra from `goal`, stopping once `stop_at` is settled.
  void compute(CellIndex goal, CellIndex stop_at) {
    const GridGeometry& g = grid_->geometry();
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    const std::size_t goal_idx = g.index(goal);
    cost_[goal_idx] = 0.0;
    open.push({0.0, goal_idx});
    std::vector<bool> done(g.size(), false);
    const std::size_t stop_idx = g.contains(stop_at) ? g.index(stop_at) : g.size();
    while (!open.empty()) {
      const auto [d, idx] = open.top();
      open.pop();
      if (done[idx]) continue;
      done[idx] = true;
      if (idx == stop_idx) break;
      const CellIndex c = g.cell_of(idx);
      for (const detail::Neighbor& n : detail::kNeighbors) {
        // Moves are symmetric, so expanding backwards uses the same test.
        if (!can_move(c, n.di, n.dj)) continue;
        const CellIndex m{c.i + n.di, c.j + n.dj};
        const std::size_t midx = g.index(m);
        if (done[midx]) continue;
        // Cost of moving m -> c, paid on entering c.
        const double nd = d + step_cost(c, n.length);
        if (nd < cost_[midx]) {
          cost_[midx] = nd;
          open.push({nd, midx});
        }
      }
    }
  }

  double cost(CellIndex c) const { return cost_[grid_->geometry().index(c)]; }

 private:
  const OccupancyGrid* grid_;
  const DistanceField* field_;
  double radius_;
  GlobalPlannerConfig cfg_;
  std::vector<double> cost_;
};

namespace detail {

inline bool segment_clear(const DistanceField& field, Point2 a, Point2 b, double clearance) {
  const double len = distance(a, b);
  const double step = 0.5 * field.geometry().resolution;
  const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
  for (int k = 0; k <= n; ++k) {
    const Point2 p = a + (static_cast<double>(k) / n) * (b - a);
    if (!field.geometry().contains(p)) return false;
    if (distance_at(field, p.x, p.y) < clearance) return false;
  }
  return true;
}

// Drops intermediate vertices where the straight chord keeps at least the
// clearance the dropped stretch already had (capped at the inflation
// distance), so centered corridor paths stay centered.
inline GlobalPath shortcut(const GlobalPath& path, const DistanceField& field, double radius,
                           double inflation) {
  if (path.size() <= 2) return path;
  std::vector<double> clear(path.size());
  for (std::size_t k = 0; k < path.size(); ++k) {
    clear[k] = distance_at(field, path.points[k].x, path.points[k].y);
  }
  GlobalPath out;
  std::size_t i = 0;
  out.push_back(path.points[0], path.cost_to_go[0]);
  while (i + 1 < path.size()) {
    std::size_t best = i + 1;
    double min_clear = std::min(clear[i], clear[i + 1]);
    for (std::size_t j = i + 2; j < path.size(); ++j) {
      min_clear = std::min(min_clear, clear[j]);
      const double need = std::max(radius, std::min(inflation, min_clear));
      if (!segment_clear(field, path.points[i], path.points[j], need)) break;
      best = j;
    }
    out.push_back(path.points[best], path.cost_to_go[best]);
    i = best;
  }
  return out;
}

}  // namespace detail

/// Grid navigation-function planner: Dijkstra cost-to-go with an
/// obstacle-proximity term, steepest-descent extraction, then shortcutting.
/// Unknown cells are traversable at extra cost. Throws InputError when the
/// start or goal is in collision and NoPathError when the goal is unreachable.
inline GlobalPath plan_global(const OccupancyGrid& grid, Point2 start, Point2 goal, double radius,
                              const GlobalPlannerConfig& cfg = {},
                              const DistanceField* precomputed = nullptr) {
  const GridGeometry& g = grid.geometry();
  DistanceField own;
  if (!precomputed) own = distance_transform(grid, UnknownPolicy::AsFree);
  const DistanceField& field = precomputed ? *precomputed : own;
  auto check = [&](Point2 p, const char* what) {
    if (!g.contains(p) || grid.state_at(p) == CellState::Occupied ||
        distance_at(field, p.x, p.y) < radius) {
      throw InputError(std::string("plan_global: ") + what + " in collision");
    }
  };
  check(start, "start");
  check(goal, "goal");
  GlobalPath path;
  if (distance(start, goal) == 0.0) {
    path.push_back(start, 0.0);
    return path;
  }
  const CellIndex sc = g.cell_at(start);
  const CellIndex gc = g.cell_at(goal);
  if (sc == gc) {
    path.push_back(start, distance(start, goal));
    path.push_back(goal, 0.0);
    return path;
  }
  NavigationFunction nav(grid, field, radius, cfg);
  if (!nav.traversable(sc) || !nav.traversable(gc)) {
    throw NoPathError("plan_global: start or goal cell is not traversable");
  }
  nav.compute(gc, sc);
  if (!std::isfinite(nav.cost(sc))) throw NoPathError("plan_global: no path to goal");

  GlobalPath raw;
  raw.push_back(start, nav.cost(sc));
  CellIndex c = sc;
  while (!(c == gc)) {
    CellIndex best = c;
    double best_cost = nav.cost(c);
    std::size_t best_idx = std::numeric_limits<std::size_t>::max();
    for (const detail::Neighbor& n : detail::kNeighbors) {
      if (!nav.can_move(c, n.di, n.dj)) continue;
      const CellIndex m{c.i + n.di, c.j + n.dj};
      const double mc = nav.cost(m);
      const std::size_t midx = g.index(m);
      if (mc < best_cost || (mc == best_cost && midx < best_idx && !(best == c))) {
        best = m;
        best_cost = mc;
        best_idx = midx;
      }
    }
    if (best == c) throw NoPathError("plan_global: descent stalled");
    c = best;
    raw.push_back(c == gc ? goal : g.center(c), best_cost);
  }
  if (!cfg.smooth) return raw;
  return detail::shortcut(raw, field, radius, cfg.inflation_factor * radius);
}

/// Inserts points so that no segment is longer than `spacing`.
inline GlobalPath densify(const GlobalPath& path, double spacing) {
  if (path.size() < 2) return path;
  GlobalPath out;
  out.push_back(path.points[0], path.cost_to_go[0]);
  for (std::size_t k = 1; k < path.size(); ++k) {
    const Point2 a = path.points[k - 1];
    const Point2 b = path.points[k];
    const int n = std::max(1, static_cast<int>(std::ceil(distance(a, b) / spacing)));
    for (int s = 1; s <= n; ++s) {
      const double t = static_cast<double>(s) / n;
      const double cost = path.cost_to_go[k - 1] + t * (path.cost_to_go[k] - path.cost_to_go[k - 1]);
      out.push_back(s == n ? b : a + t * (b - a), cost);
    }
  }
  return out;
}

/// Index of the path vertex closest to `p` among vertices within
/// `search_length` of arc length from the path start.
inline std::size_t closest_vertex(const GlobalPath& path, Point2 p,
                                  double search_length = std::numeric_limits<double>::infinity()) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (path.cumulative[k] > search_length && k > 0) break;
    const double d = distance(path.points[k], p);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

/// Sub-path from the vertex nearest `pose`, cut at arc length `horizon`.
inline GlobalPath extract_local_reference(
    const GlobalPath& path, Point2 pose, double horizon,
    double search_length = std::numeric_limits<double>::infinity()) {
  if (path.empty()) throw InputError("extract_local_reference: empty path");
  const std::size_t first = closest_vertex(path, pose, search_length);
  GlobalPath out;
  out.push_back(path.points[first], path.cost_to_go[first]);
  for (std::size_t k = first + 1; k < path.size(); ++k) {
    const double seg = distance(path.points[k - 1], path.points[k]);
    const double remaining = horizon - out.length();
    if (seg > remaining) {
      if (remaining > 1e-12) {
        const double t = remaining / seg;
        const Point2 a = path.points[k - 1];
        const double cost =
            path.cost_to_go[k - 1] + t * (path.cost_to_go[k] - path.cost_to_go[k - 1]);
        out.push_back(a + t * (path.points[k] - a), cost);
      }
      break;
    }
    out.push_back(path.points[k], path.cost_to_go[k]);
  }
  return out;
}

}  // namespace mrbench
