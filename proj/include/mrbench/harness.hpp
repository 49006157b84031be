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

// Closed-loop trial runner. Every control tick:
//
//   1. raycast the ground truth (agents stamped) from the robot pose and
//      integrate the scan into the sensed map;
//   2. stamp the agents into the sensed map and measure clearance;
//   3. stop on goal, collision or timeout;
//   4. (re)plan the global path, crop the local map, call the local planner;
//   5. log the record, clamp the command and integrate robot and agents in
//      physics sub-steps.

#pragma once

#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mrbench/global_planner.hpp"
#include "mrbench/local_planner.hpp"
#include "mrbench/metrics.hpp"
#include "mrbench/navlog_io.hpp"
#include "mrbench/world.hpp"

namespace mrbench {

enum class CostMode { WallClock, Iterations };

inline const char* to_string(CostMode m) {
  return m == CostMode::WallClock ? "wallclock" : "iterations";
}

inline CostMode parse_cost_mode(std::string_view s) {
  if (s == "wallclock") return CostMode::WallClock;
  if (s == "iterations") return CostMode::Iterations;
  throw InputError("cost mode must be 'wallclock' or 'iterations'");
}

struct TrialConfig {
  double control_period = 0.2;  // s
  double physics_dt = 0.05;     // s
  double goal_pos_tol = 0.1;    // m
  double goal_yaw_tol = 0.25;   // rad
  double timeout = 300.0;       // s
  std::uint64_t seed = 0;
  CostMode cost_mode = CostMode::WallClock;
  int recovery_budget = 25;         // consecutive infeasible ticks
  double local_map_side = 5.5;      // m
  double reference_horizon = 2.75;  // m
  double path_spacing = 0.1;        // m, densified global path
  double progress_window = 1.5;     // m of path searched ahead of the last match
  KinematicLimits limits;
  GlobalPlannerConfig global;
  MetricsConfig metrics;
  bool record_trace = true;
};

inline int substeps(const TrialConfig& c) {
  return static_cast<int>(std::lround(c.control_period / c.physics_dt));
}

inline void validate(const TrialConfig& c) {
  if (!(c.control_period > 0.0) || !(c.physics_dt > 0.0)) {
    throw ValidationError("trial config: periods must be > 0");
  }
  const double ratio = c.control_period / c.physics_dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 || std::round(ratio) < 1.0) {
    throw ValidationError("trial config: physics_dt must divide control_period");
  }
  if (!(c.goal_pos_tol > 0.0) || !(c.goal_yaw_tol > 0.0)) {
    throw ValidationError("trial config: tolerances must be > 0");
  }
  if (!(c.timeout > 0.0)) throw ValidationError("trial config: timeout must be > 0");
  if (c.recovery_budget < 1) throw ValidationError("trial config: recovery_budget must be >= 1");
  if (!(c.local_map_side > 0.0) || !(c.reference_horizon > 0.0) || !(c.path_spacing > 0.0)) {
    throw ValidationError("trial config: local map side, horizon and spacing must be > 0");
  }
  validate(c.limits);
}

/// Per-tick bookkeeping beyond the log.
struct TickTrace {
  double t = 0.0;
  std::size_t unknown_cells = 0;  // in the sensed map after integration
  bool inside_mask = false;       // robot center inside any masked rectangle
  bool infeasible = false;
};

struct TrialResult {
  std::string scenario;
  std::string planner;
  std::size_t pair_index = 0;
  NavLog log;
  MetricsReport report;
  Metadata metadata;
  std::vector<TickTrace> trace;
  OccupancyGrid sensed_map;  // at the end of the trial
  Pose2 start;
  Pose2 goal;
  std::vector<std::vector<Point2>> agent_tracks;  // agent positions per tick
};

namespace detail {

inline GlobalPath tail_from(const GlobalPath& path, std::size_t first) {
  GlobalPath out;
  for (std::size_t k = first; k < path.size(); ++k) out.push_back(path.points[k], path.cost_to_go[k]);
  return out;
}

struct CachedField {
  OccupancyGrid grid;
  DistanceField field;
  bool valid = false;

  const DistanceField& get(const OccupancyGrid& g) {
    if (!valid || !(g == grid)) {
      grid = g;
      field = distance_transform(g, UnknownPolicy::AsFree);
      valid = true;
    }
    return field;
  }
};

}  // namespace detail

inline TrialResult run_trial(const Scenario& scenario, const LocalPlanner& planner,
                             std::size_t pair_index, const TrialConfig& cfg = {}) {
  validate(cfg);
  if (pair_index >= scenario.pairs.size()) {
    throw InputError("run_trial: pair index " + std::to_string(pair_index) + " out of range (" +
                     std::to_string(scenario.pairs.size()) + " pairs)");
  }
  validate_scenario(scenario, cfg.limits.radius);
  const StartGoal& pair = scenario.pairs[pair_index];
  const GridGeometry& geo = scenario.map.geometry();
  const bool replan_every_tick = scenario.partially_unknown() || scenario.dynamic();
  const int n_sub = substeps(cfg);

  TrialResult res;
  res.scenario = scenario.name;
  res.planner = planner.name();
  res.pair_index = pair_index;
  res.start = pair.start;
  res.goal = pair.goal;

  RobotState robot = RobotState::at(pair.start);
  std::vector<DynamicAgent> agents = scenario.agents;
  OccupancyGrid sensed = scenario.prior_map;
  detail::CachedField sensed_field;
  detail::CachedField truth_field;
  GlobalPath path;
  std::size_t progress = 0;
  int infeasible_run = 0;
  double wall_total = 0.0;

  for (long tick = 0;; ++tick) {
    const double t = static_cast<double>(tick) * cfg.control_period;
    const Point2 pos = robot.position();
    const bool in_bounds = geo.contains(pos);
    const OccupancyGrid world_now = stamp_agents(scenario.map, agents);
    if (in_bounds) {
      const LaserScan scan = raycast(world_now, robot.pose(), scenario.scan);
      sensed = integrate_scan(sensed, robot.pose(), scan, &scenario.prior_map);
    }
    const OccupancyGrid planning_map = stamp_agents(sensed, agents);
    const DistanceField& field = sensed_field.get(planning_map);
    const DistanceField& truth = truth_field.get(world_now);
    const double d = in_bounds ? distance_at(field, pos.x, pos.y) : 0.0;
    const double d_true = in_bounds ? distance_at(truth, pos.x, pos.y) : 0.0;

    if (cfg.record_trace) {
      TickTrace tr;
      tr.t = t;
      tr.unknown_cells = sensed.count(CellState::Unknown);
      for (const Rect& r : scenario.masks) tr.inside_mask = tr.inside_mask || r.contains(pos);
      res.trace.push_back(tr);
      std::vector<Point2> where;
      for (const DynamicAgent& a : agents) where.push_back(a.position());
      res.agent_tracks.push_back(std::move(where));
    }

    LogRecord rec{t, robot.x, robot.y, robot.theta, robot.v, robot.omega, d, 0.0, d_true};
    auto finish = [&](Outcome o) {
      res.log.records.push_back(rec);
      res.log.outcome = o;
    };
    const double yaw_err = wrap_angle(robot.theta - pair.goal.theta);
    if (distance(pos, pair.goal.position()) <= cfg.goal_pos_tol &&
        std::abs(yaw_err) <= cfg.goal_yaw_tol) {
      finish(Outcome::Success);
      break;
    }
    if (!in_bounds || std::min(d, d_true) < cfg.limits.radius) {
      finish(Outcome::Collision);
      break;
    }
    if (t >= cfg.timeout) {
      finish(Outcome::Timeout);
      break;
    }

    // Global guidance.
    bool guidance = true;
    if (path.empty() || replan_every_tick) {
      try {
        path = densify(plan_global(planning_map, pos, pair.goal.position(), cfg.limits.radius,
                                   cfg.global, &field),
                       cfg.path_spacing);
        progress = 0;
      } catch (const Error&) {
        path = GlobalPath{};
        guidance = false;
      }
    }

    VelocityCommand want{0.0, 0.0};
    bool infeasible = !guidance;
    if (guidance) {
      const GlobalPath ahead = detail::tail_from(path, progress);
      progress += closest_vertex(ahead, pos, cfg.progress_window);
      LocalPlanRequest req;
      req.reference = extract_local_reference(detail::tail_from(path, progress), pos,
                                              cfg.reference_horizon);
      req.local_map = crop_local(planning_map, pos, cfg.local_map_side);
      req.local_field = distance_transform(req.local_map, UnknownPolicy::AsOccupied);
      req.robot = robot;
      req.goal = pair.goal;
      req.limits = cfg.limits;
      req.dt_control = cfg.control_period;
      req.goal_tolerance = cfg.goal_pos_tol;
      const auto t0 = std::chrono::steady_clock::now();
      const PlannerOutput out = planner.plan(req);
      const auto t1 = std::chrono::steady_clock::now();
      const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      wall_total += ms;
      rec.c = cfg.cost_mode == CostMode::WallClock ? ms : static_cast<double>(out.iterations);
      want = out.cmd;
      infeasible = out.status == PlanStatus::Infeasible;
    }
    if (cfg.record_trace) res.trace.back().infeasible = infeasible;
    infeasible_run = infeasible ? infeasible_run + 1 : 0;
    if (infeasible_run >= cfg.recovery_budget) {
      finish(Outcome::PlannerFailure);
      break;
    }
    res.log.records.push_back(rec);

    const VelocityCommand cmd = clamp_command(want, robot.velocity(), cfg.limits, cfg.control_period);
    for (int s = 0; s < n_sub; ++s) {
      robot = step(robot, cmd, cfg.physics_dt);
      agents = step_agents(std::move(agents), cfg.physics_dt);
    }
  }

  res.sensed_map = sensed;
  res.report = compute_report(res.log, cfg.metrics);
  auto n = [](double v) { return format_number(v); };
  res.metadata = {
      {"scenario", scenario.name},
      {"planner", planner.name()},
      {"pair", std::to_string(pair_index)},
      {"outcome", to_string(res.log.outcome)},
      {"seed", std::to_string(cfg.seed)},
      {"cost_mode", to_string(cfg.cost_mode)},
      {"config_hash", hex64(fnv1a64(planner.describe()))},
      {"control_period", n(cfg.control_period)},
      {"physics_dt", n(cfg.physics_dt)},
      {"goal_pos_tol", n(cfg.goal_pos_tol)},
      {"goal_yaw_tol", n(cfg.goal_yaw_tol)},
      {"timeout", n(cfg.timeout)},
      {"recovery_budget", std::to_string(cfg.recovery_budget)},
      {"global_replan", replan_every_tick ? "every_tick" : "once"},
      {"d_safe", n(cfg.metrics.d_safe)},
      {"wall_planner_ms_total", n(wall_total)},
  };
  return res;
}

}  // namespace mrbench
