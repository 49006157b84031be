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
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mrbench/global_planner.hpp"
#include "mrbench/gridmap.hpp"
#include "mrbench/robot.hpp"

namespace mrbench {

struct TimedPose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double t = 0.0;

  Point2 position() const { return {x, y}; }
  Pose2 pose() const { return {x, y, theta}; }
};

struct LocalPlanRequest {
  OccupancyGrid local_map;  // robot-centered crop, agents stamped
  DistanceField local_field;
  RobotState robot;
  GlobalPath reference;  // local segment of the global path
  Pose2 goal;            // final navigation goal
  KinematicLimits limits;
  double dt_control = 0.2;
  double goal_tolerance = 0.1;  // position tolerance at which planners switch to aligning yaw

  /// Whether the reference ends on the final goal.
  bool goal_in_reference() const {
    return !reference.empty() && distance(reference.points.back(), goal.position()) <= 1e-6;
  }
};

enum class PlanStatus { Ok, Infeasible };

struct PlannerOutput {
  VelocityCommand cmd;
  std::vector<TimedPose> trajectory;  // starts at the robot pose
  long iterations = 0;                // deterministic work count
  PlanStatus status = PlanStatus::Ok;
};

class LocalPlanner {
 public:
  virtual ~LocalPlanner() = default;
  virtual std::string name() const = 0;
  virtual std::string describe() const = 0;  // config text, fingerprinted in run metadata
  virtual PlannerOutput plan(const LocalPlanRequest& req) const = 0;
};

/// Yaw error above which goal alignment still commands a rotation.
inline constexpr double kAlignedYaw = 1e-3;

/// Point `lookahead` meters of arc length beyond the reference vertex
/// nearest `from` (clamped to the reference end).
inline Point2 lookahead_point(const GlobalPath& ref, Point2 from, double lookahead) {
  const std::size_t k0 = closest_vertex(ref, from);
  const double target = ref.cumulative[k0] + lookahead;
  for (std::size_t k = k0 + 1; k < ref.size(); ++k) {
    if (ref.cumulative[k] >= target) {
      const double seg = ref.cumulative[k] - ref.cumulative[k - 1];
      const double t = seg > 0.0 ? (target - ref.cumulative[k - 1]) / seg : 1.0;
      return ref.points[k - 1] + t * (ref.points[k] - ref.points[k - 1]);
    }
  }
  return ref.points.back();
}

/// Heading the robot should have at `p`: toward the lookahead point, or the
/// goal yaw once `p` is inside the goal tolerance.
inline double reference_heading(const LocalPlanRequest& req, Point2 p, double lookahead) {
  if (req.goal_in_reference() && distance(p, req.goal.position()) <= req.goal_tolerance) {
    return req.goal.theta;
  }
  const Point2 target = lookahead_point(req.reference, p, lookahead);
  const Point2 d = target - p;
  if (norm(d) < 1e-9) {
    if (req.goal_in_reference()) return req.goal.theta;
    const std::size_t n = req.reference.size();
    if (n >= 2) {
      const Point2 t = req.reference.points[n - 1] - req.reference.points[n - 2];
      return std::atan2(t.y, t.x);
    }
    return req.robot.theta;
  }
  return std::atan2(d.y, d.x);
}

/// Rotation in place toward the reference heading at half the angular
/// limit; a stop when even rotating in place is in collision.
inline PlannerOutput recovery_output(const LocalPlanRequest& req, double lookahead, long iterations) {
  PlannerOutput out;
  out.status = PlanStatus::Infeasible;
  out.iterations = iterations;
  out.trajectory.push_back({req.robot.x, req.robot.y, req.robot.theta, 0.0});
  VelocityCommand want{0.0, 0.0};
  if (!collision_check(req.robot, req.local_field, req.limits.radius)) {
    const double err = wrap_angle(reference_heading(req, req.robot.position(), lookahead) -
                                  req.robot.theta);
    want.omega = (err >= 0.0 ? 0.5 * req.limits.omega_max : 0.5 * req.limits.omega_min);
  }
  out.cmd = clamp_command(want, req.robot.velocity(), req.limits, req.dt_control);
  return out;
}

/// When the robot is within the goal tolerance, rotate toward the goal yaw
/// instead of planning.
inline std::optional<PlannerOutput> goal_alignment_output(const LocalPlanRequest& req) {
  if (distance(req.robot.position(), req.goal.position()) > req.goal_tolerance) return std::nullopt;
  PlannerOutput out;
  out.iterations = 1;
  out.trajectory.push_back({req.robot.x, req.robot.y, req.robot.theta, 0.0});
  const double err = wrap_angle(req.goal.theta - req.robot.theta);
  VelocityCommand want{0.0, 0.0};
  if (std::abs(err) > kAlignedYaw) {
    want.omega = std::clamp(1.5 * err, req.limits.omega_min, req.limits.omega_max);
  }
  out.cmd = clamp_command(want, req.robot.velocity(), req.limits, req.dt_control);
  return out;
}

// ---------------------------------------------------------------------------
// Sampling planner configuration and scoring.

struct DwaConfig {
  int n_v = 11;
  int n_omega = 21;
  double sim_horizon = 1.6;
  double sim_dt = 0.1;
  double w_heading = 0.8;
  double w_clearance = 0.3;
  double w_velocity = 0.3;
  double lookahead = 1.0;      // heading target distance along the reference
  double clearance_cap = 0.34;  // clearance beyond this scores 1
};

inline void validate(const DwaConfig& c) {
  if (c.n_v < 3 || c.n_omega < 3) throw ValidationError("dwa: sample counts must be >= 3");
  if (!(c.sim_dt > 0.0) || !(c.sim_horizon > c.sim_dt)) {
    throw ValidationError("dwa: need sim_horizon > sim_dt > 0");
  }
  if (c.w_heading < 0 || c.w_clearance < 0 || c.w_velocity < 0 ||
      c.w_heading + c.w_clearance + c.w_velocity <= 0) {
    throw ValidationError("dwa: weights must be >= 0 and not all zero");
  }
  if (!(c.lookahead > 0.0) || !(c.clearance_cap > 0.0)) {
    throw ValidationError("dwa: lookahead and clearance_cap must be > 0");
  }
}

struct ScoreComponents {
  double heading = 0.0;
  double clearance = 0.0;
  double velocity = 0.0;
};

/// Normalized scoring terms of a forward-simulated trajectory driven by
/// `cmd`: alignment of the travel direction at the end (the yaw, reversed
/// when `cmd.v` < 0) with the reference, minimum clearance (capped), and
/// speed. Each lies in [0, 1].
inline ScoreComponents score_components(const std::vector<TimedPose>& trajectory,
                                        const VelocityCommand& cmd, const LocalPlanRequest& req,
                                        const DwaConfig& cfg) {
  if (trajectory.empty()) throw InputError("score_components: empty trajectory");
  ScoreComponents s;
  // A trajectory that enters the goal tolerance scores full heading: the
  // remaining yaw error is removed by rotating in place.
  bool reaches = false;
  if (req.goal_in_reference()) {
    for (const TimedPose& p : trajectory) {
      reaches = reaches || distance(p.position(), req.goal.position()) <= req.goal_tolerance;
    }
  }
  if (reaches) {
    s.heading = 1.0;
  } else {
    const TimedPose& end = trajectory.back();
    const double target = reference_heading(req, end.position(), cfg.lookahead);
    const double travel = cmd.v < 0.0 ? end.theta + std::numbers::pi : end.theta;
    s.heading = 0.5 * (1.0 + std::cos(wrap_angle(travel - target)));
  }
  double min_d = cfg.clearance_cap;
  for (const TimedPose& p : trajectory) {
    const double d = req.local_field.geometry().contains(p.position())
                         ? distance_at(req.local_field, p.x, p.y)
                         : 0.0;
    min_d = std::min(min_d, d);
  }
  s.clearance = std::clamp(min_d / cfg.clearance_cap, 0.0, 1.0);
  s.velocity = std::clamp(std::abs(cmd.v) / req.limits.v_max, 0.0, 1.0);
  return s;
}

}  // namespace mrbench
