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
#include <sstream>
#include <string>
#include <vector>

#include "mrbench/local_planner.hpp"

namespace mrbench {

struct DynamicWindow {
  double v_lo, v_hi;
  double omega_lo, omega_hi;
};

/// Velocities reachable within one control period, intersected with the
/// velocity box.
inline DynamicWindow dynamic_window(const VelocityCommand& prev, const KinematicLimits& l,
                                    double dt) {
  constexpr double kBig = 1e300;
  const VelocityCommand lo = clamp_command({-kBig, -kBig}, prev, l, dt);
  const VelocityCommand hi = clamp_command({kBig, kBig}, prev, l, dt);
  return {lo.v, hi.v, lo.omega, hi.omega};
}

/// k-th of n evenly spaced samples over [lo, hi], endpoints included.
inline double lattice_value(double lo, double hi, int k, int n) {
  if (k == n - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
}

/// The command lattice in evaluation order (v-major).
inline std::vector<VelocityCommand> dwa_samples(const DynamicWindow& w, const DwaConfig& cfg) {
  std::vector<VelocityCommand> out;
  out.reserve(static_cast<std::size_t>(cfg.n_v) * cfg.n_omega);
  for (int a = 0; a < cfg.n_v; ++a) {
    for (int b = 0; b < cfg.n_omega; ++b) {
      out.push_back({lattice_value(w.v_lo, w.v_hi, a, cfg.n_v),
                     lattice_value(w.omega_lo, w.omega_hi, b, cfg.n_omega)});
    }
  }
  return out;
}

/// Exact-arc rollout of a constant command, including the start pose.
inline std::vector<TimedPose> rollout(const RobotState& start, const VelocityCommand& cmd,
                                      const DwaConfig& cfg) {
  const int steps = static_cast<int>(std::floor(cfg.sim_horizon / cfg.sim_dt + 1e-9));
  std::vector<TimedPose> out;
  out.reserve(steps + 1);
  RobotState s = start;
  out.push_back({s.x, s.y, s.theta, 0.0});
  for (int k = 1; k <= steps; ++k) {
    s = step(s, cmd, cfg.sim_dt);
    out.push_back({s.x, s.y, s.theta, k * cfg.sim_dt});
  }
  return out;
}

inline bool trajectory_collides(const std::vector<TimedPose>& traj, const DistanceField& field,
                                double radius) {
  for (const TimedPose& p : traj) {
    if (collision_check(p.position(), field, radius)) return true;
  }
  return false;
}

inline double dwa_score(const ScoreComponents& s, const DwaConfig& cfg) {
  return cfg.w_heading * s.heading + cfg.w_clearance * s.clearance + cfg.w_velocity * s.velocity;
}

/// Dynamic window approach: sample, simulate, discard collisions, return
/// the best-scoring command (first in lattice order on ties).
inline PlannerOutput dwa_plan(const LocalPlanRequest& req, const DwaConfig& cfg = {}) {
  if (req.reference.empty()) throw InputError("dwa_plan: empty reference path");
  if (auto aligned = goal_alignment_output(req)) return *aligned;
  const DynamicWindow w = dynamic_window(req.robot.velocity(), req.limits, req.dt_control);
  const std::vector<VelocityCommand> samples = dwa_samples(w, cfg);
  PlannerOutput best;
  double best_score = -1.0;
  bool found = false;
  for (const VelocityCommand& cmd : samples) {
    std::vector<TimedPose> traj = rollout(req.robot, cmd, cfg);
    if (trajectory_collides(traj, req.local_field, req.limits.radius)) continue;
    const double score = dwa_score(score_components(traj, cmd, req, cfg), cfg);
    if (!found || score > best_score) {
      found = true;
      best_score = score;
      best.cmd = cmd;
      best.trajectory = std::move(traj);
    }
  }
  const long work = static_cast<long>(samples.size());
  if (!found) return recovery_output(req, cfg.lookahead, work);
  best.iterations = work;
  best.status = PlanStatus::Ok;
  return best;
}

/// Config in ".cfg" syntax.
inline std::string to_string(const DwaConfig& c) {
  std::ostringstream os;
  auto n = [](double v) { return format_exact(v); };
  os << "planner dwa\n"
     << "n_v " << c.n_v << "\nn_omega " << c.n_omega << "\nsim_horizon " << n(c.sim_horizon)
     << "\nsim_dt " << n(c.sim_dt) << "\nw_heading " << n(c.w_heading) << "\nw_clearance "
     << n(c.w_clearance) << "\nw_velocity " << n(c.w_velocity) << "\nlookahead " << n(c.lookahead)
     << "\nclearance_cap " << n(c.clearance_cap) << '\n';
  return os.str();
}

class DwaPlanner final : public LocalPlanner {
 public:
  explicit DwaPlanner(DwaConfig cfg = {}) : cfg_(cfg) { validate(cfg_); }
  std::string name() const override { return "dwa"; }
  std::string describe() const override { return to_string(cfg_); }
  PlannerOutput plan(const LocalPlanRequest& req) const override { return dwa_plan(req, cfg_); }
  const DwaConfig& config() const { return cfg_; }

 private:
  DwaConfig cfg_;
};

}  // namespace mrbench
