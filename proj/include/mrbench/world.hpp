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
#include <deque>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mrbench/common.hpp"
#include "mrbench/gridmap.hpp"

namespace mrbench {

enum class AgentMode { Loop, PingPong };

inline const char* to_string(AgentMode m) { return m == AgentMode::Loop ? "loop" : "ping-pong"; }

/// A disc moving at constant speed along a waypoint polyline. Its state is a
/// single phase (arc length along the traversal cycle), so any sequence of
/// steps summing to the same time lands on the same point.
class DynamicAgent {
 public:
  DynamicAgent(double radius, double speed, std::vector<Point2> waypoints,
               AgentMode mode = AgentMode::PingPong)
      : radius_(radius), speed_(speed), waypoints_(std::move(waypoints)), mode_(mode) {
    if (!(radius_ > 0.0)) throw ValidationError("agent: radius must be > 0");
    if (!(speed_ > 0.0)) throw ValidationError("agent: speed must be > 0");
    if (waypoints_.size() < 2) throw ValidationError("agent: needs at least 2 waypoints");
    for (std::size_t k = 0; k + 1 < waypoints_.size(); ++k) {
      if (waypoints_[k] == waypoints_[k + 1]) {
        throw ValidationError("agent: consecutive waypoints must be distinct");
      }
    }
    if (mode_ == AgentMode::Loop && waypoints_.back() == waypoints_.front()) {
      throw ValidationError("agent: loop closes on itself; drop the repeated waypoint");
    }
    cumulative_.push_back(0.0);
    for (std::size_t k = 0; k + 1 < waypoints_.size(); ++k) {
      cumulative_.push_back(cumulative_.back() + distance(waypoints_[k], waypoints_[k + 1]));
    }
    if (mode_ == AgentMode::Loop) {
      cumulative_.push_back(cumulative_.back() + distance(waypoints_.back(), waypoints_.front()));
    }
    position_ = waypoints_.front();
  }

  double radius() const { return radius_; }
  double speed() const { return speed_; }
  AgentMode mode() const { return mode_; }
  const std::vector<Point2>& waypoints() const { return waypoints_; }
  Point2 position() const { return position_; }
  double phase() const { return phase_; }

  /// Length of one traversal cycle (closed loop, or there-and-back).
  double period_length() const {
    return mode_ == AgentMode::Loop ? cumulative_.back() : 2.0 * cumulative_.back();
  }

  void advance(double dt) {
    phase_ = std::fmod(phase_ + speed_ * dt, period_length());
    if (phase_ < 0.0) phase_ += period_length();
    position_ = point_at(phase_);
  }

  /// Point at arc length `s` along the path (s within one cycle).
  Point2 point_at(double s) const {
    const double open_len = cumulative_.back();
    if (mode_ == AgentMode::PingPong && s > open_len) s = 2.0 * open_len - s;
    // Segment k spans [cumulative_[k], cumulative_[k+1]].
    std::size_t k = 0;
    while (k + 2 < cumulative_.size() && s > cumulative_[k + 1]) ++k;
    const Point2 a = waypoints_[k];
    const Point2 b = waypoints_[(k + 1) % waypoints_.size()];
    const double len = cumulative_[k + 1] - cumulative_[k];
    const double t = len > 0.0 ? std::clamp((s - cumulative_[k]) / len, 0.0, 1.0) : 0.0;
    return a + t * (b - a);
  }

  /// Distance from a point to the agent's path polyline.
  double distance_to_path(Point2 p) const {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t segments = cumulative_.size() - 1;
    for (std::size_t k = 0; k < segments; ++k) {
      const Point2 a = waypoints_[k];
      const Point2 b = waypoints_[(k + 1) % waypoints_.size()];
      const Point2 ab = b - a;
      const double t = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
      best = std::min(best, distance(p, a + t * ab));
    }
    return best;
  }

  friend bool operator==(const DynamicAgent& a, const DynamicAgent& b) {
    return a.radius_ == b.radius_ && a.speed_ == b.speed_ && a.waypoints_ == b.waypoints_ &&
           a.mode_ == b.mode_ && a.phase_ == b.phase_;
  }

 private:
  double radius_;
  double speed_;
  std::vector<Point2> waypoints_;
  AgentMode mode_;
  std::vector<double> cumulative_;
  double phase_ = 0.0;
  Point2 position_;
};

/// Stand-ins for the unspecified pedestrian parameters.
inline constexpr double kDefaultAgentRadius = 0.25;
inline constexpr double kDefaultAgentSpeed = 0.6;

inline std::vector<DynamicAgent> step_agents(std::vector<DynamicAgent> agents, double dt) {
  if (!(dt > 0.0)) throw InputError("step_agents: dt must be > 0");
  for (DynamicAgent& a : agents) a.advance(dt);
  return agents;
}

/// Copy of `grid` with every cell whose center lies inside an agent disc
/// marked Occupied.
inline OccupancyGrid stamp_agents(const OccupancyGrid& grid, std::span<const DynamicAgent> agents) {
  OccupancyGrid out = grid;
  const GridGeometry& g = grid.geometry();
  for (const DynamicAgent& a : agents) {
    const Point2 p = a.position();
    const double r = a.radius();
    const CellIndex lo = g.cell_at({p.x - r, p.y - r});
    const CellIndex hi = g.cell_at({p.x + r, p.y + r});
    for (int j = std::max(0, lo.j); j <= std::min(g.height - 1, hi.j); ++j) {
      for (int i = std::max(0, lo.i); i <= std::min(g.width - 1, hi.i); ++i) {
        const Point2 c = g.center({i, j});
        if (distance(c, p) <= r) out.set(i, j, CellState::Occupied);
      }
    }
  }
  return out;
}

struct StartGoal {
  Pose2 start;
  Pose2 goal;

  friend bool operator==(const StartGoal&, const StartGoal&) = default;
};

struct Scenario {
  std::string name;
  OccupancyGrid map;        // ground truth
  OccupancyGrid prior_map;  // what the planners are given
  std::vector<Rect> masks;  // regions blanked to Unknown in prior_map
  std::vector<StartGoal> pairs;
  std::vector<DynamicAgent> agents;
  ScanSpec scan;
  std::string map_path;  // as referenced by the scene file, if any

  bool partially_unknown() const { return !masks.empty(); }
  bool dynamic() const { return !agents.empty(); }

  friend bool operator==(const Scenario& a, const Scenario& b) {
    return a.name == b.name && a.map == b.map && a.prior_map == b.prior_map &&
           a.masks == b.masks && a.pairs == b.pairs && a.agents == b.agents && a.scan == b.scan;
  }
};

/// Builds prior_map from map and masks.
inline void apply_masks(Scenario& s) {
  s.prior_map = s.map;
  for (const Rect& r : s.masks) s.prior_map = mask_unknown_region(s.prior_map, r);
}

/// Cells reachable from `seed` through 8-connected cells whose clearance is
/// at least `radius`.
inline std::vector<bool> reachable_cells(const DistanceField& field, CellIndex seed, double radius) {
  const GridGeometry& g = field.geometry();
  std::vector<bool> seen(g.size(), false);
  if (!g.contains(seed)) return seen;
  std::deque<CellIndex> queue{seed};
  seen[g.index(seed)] = true;
  while (!queue.empty()) {
    const CellIndex c = queue.front();
    queue.pop_front();
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        const CellIndex n{c.i + di, c.j + dj};
        if ((di == 0 && dj == 0) || !g.contains(n)) continue;
        const std::size_t idx = g.index(n);
        if (seen[idx] || field.value(n) < radius) continue;
        seen[idx] = true;
        queue.push_back(n);
      }
    }
  }
  return seen;
}

/// Enforces the scenario invariants, throwing ValidationError naming the
/// first violation.
inline void validate_scenario(const Scenario& s, double robot_radius = 0.17) {
  if (s.name.empty()) throw ValidationError("scenario has no name");
  if (s.prior_map.geometry() != s.map.geometry()) {
    throw ValidationError("prior map geometry differs from ground-truth map");
  }
  validate(s.scan);
  if (s.pairs.empty()) throw ValidationError("scenario has no start/goal pairs");
  const DistanceField field = distance_transform(s.map, UnknownPolicy::AsFree);
  const GridGeometry& g = s.map.geometry();
  auto check_pose = [&](const Pose2& p, const std::string& what) {
    if (!g.contains(p.position())) throw ValidationError(what + " outside map");
    if (s.map.state_at(p.position()) != CellState::Free) throw ValidationError(what + " not free");
    if (distance_at(field, p.x, p.y) < robot_radius) {
      throw ValidationError(what + " clearance below robot radius");
    }
  };
  for (std::size_t k = 0; k < s.pairs.size(); ++k) {
    const std::string tag = s.pairs.size() > 1 ? " (pair " + std::to_string(k) + ")" : "";
    check_pose(s.pairs[k].start, "start" + tag);
    check_pose(s.pairs[k].goal, "goal" + tag);
    const std::vector<bool> reach =
        reachable_cells(field, g.cell_at(s.pairs[k].start.position()), robot_radius);
    if (!reach[g.index(g.cell_at(s.pairs[k].goal.position()))]) {
      throw ValidationError("start and goal not connected" + tag);
    }
  }
}

}  // namespace mrbench
