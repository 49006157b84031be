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

// Independent re-implementations of the planner contracts.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mrbench/local_planner.hpp"

namespace mrbench::oracle {

struct DwaCandidate {
  VelocityCommand cmd;
  bool collides = false;
  double score = -std::numeric_limits<double>::infinity();
};

// Heading target: walk `lookahead` of arc length from the vertex nearest p.
inline double heading_target(const LocalPlanRequest& req, Point2 p, double lookahead) {
  const auto& pts = req.reference.points;
  const bool final_goal = distance(pts.back(), req.goal.position()) <= 1e-6;
  if (final_goal && distance(p, req.goal.position()) <= req.goal_tolerance) return req.goal.theta;
  std::size_t k0 = 0;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    if (distance(pts[k], p) < distance(pts[k0], p)) k0 = k;
  }
  double left = lookahead;
  Point2 target = pts.back();
  for (std::size_t k = k0 + 1; k < pts.size(); ++k) {
    const double seg = distance(pts[k - 1], pts[k]);
    if (seg >= left) {
      target = pts[k - 1] + (left / seg) * (pts[k] - pts[k - 1]);
      break;
    }
    left -= seg;
  }
  return std::atan2(target.y - p.y, target.x - p.x);
}

/// Exhaustive DWA: window bounds by hand, closed-form arcs evaluated at
/// each sample time, scores from the stated normalization.
inline std::vector<DwaCandidate> dwa_exhaustive(const LocalPlanRequest& req, int n_v, int n_w,
                                                double horizon, double sim_dt, double wh,
                                                double wc, double wv, double lookahead,
                                                double cap) {
  const KinematicLimits& l = req.limits;
  const double dt = req.dt_control;
  const double v_lo = std::max(l.v_min, req.robot.v + l.acc_min * dt);
  const double v_hi = std::min(l.v_max, req.robot.v + l.acc_max * dt);
  const double w_lo = std::max(l.omega_min, req.robot.omega + l.alpha_min * dt);
  const double w_hi = std::min(l.omega_max, req.robot.omega + l.alpha_max * dt);
  const int steps = static_cast<int>(std::round(horizon / sim_dt));
  std::vector<DwaCandidate> out;
  for (int a = 0; a < n_v; ++a) {
    for (int b = 0; b < n_w; ++b) {
      DwaCandidate c;
      c.cmd.v = a == n_v - 1 ? v_hi : v_lo + (v_hi - v_lo) * a / (n_v - 1);
      c.cmd.omega = b == n_w - 1 ? w_hi : w_lo + (w_hi - w_lo) * b / (n_w - 1);
      double min_d = std::numeric_limits<double>::infinity();
      double x = req.robot.x, y = req.robot.y, th = req.robot.theta;
      const bool final_goal = distance(req.reference.points.back(), req.goal.position()) <= 1e-6;
      bool reaches = false;
      for (int k = 0; k <= steps; ++k) {
        const double t = k * sim_dt;
        const double th0 = req.robot.theta;
        if (std::abs(c.cmd.omega) < 1e-9) {
          x = req.robot.x + c.cmd.v * t * std::cos(th0);
          y = req.robot.y + c.cmd.v * t * std::sin(th0);
        } else {
          const double r = c.cmd.v / c.cmd.omega;
          x = req.robot.x + r * (std::sin(th0 + c.cmd.omega * t) - std::sin(th0));
          y = req.robot.y - r * (std::cos(th0 + c.cmd.omega * t) - std::cos(th0));
        }
        th = th0 + c.cmd.omega * t;
        if (!req.local_field.geometry().contains(Point2{x, y})) {
          c.collides = true;
          break;
        }
        const double d = distance_at(req.local_field, x, y);
        if (d < l.radius) {
          c.collides = true;
          break;
        }
        min_d = std::min(min_d, d);
        if (final_goal && std::hypot(x - req.goal.x, y - req.goal.y) <= req.goal_tolerance) reaches = true;
      }
      if (!c.collides) {
        const double travel_sign = c.cmd.v < 0.0 ? -1.0 : 1.0;
        const double heading =
            reaches ? 1.0 : 0.5 * (1.0 + travel_sign * std::cos(th - heading_target(req, {x, y}, lookahead)));
        const double clearance = std::min(min_d, cap) / cap;
        const double velocity = std::abs(c.cmd.v) / l.v_max;
        c.score = wh * heading + wc * clearance + wv * velocity;
      }
      out.push_back(c);
    }
  }
  return out;
}

/// Central finite-difference Jacobian of residual i with respect to every
/// variable, for a residual function r(x) returning all residuals.
template <typename F>
std::vector<std::vector<double>> central_jacobian(F&& residuals, std::vector<double> x, double h) {
  const std::size_t m = residuals(x).size();
  std::vector<std::vector<double>> j(m, std::vector<double>(x.size(), 0.0));
  for (std::size_t v = 0; v < x.size(); ++v) {
    const double x0 = x[v];
    x[v] = x0 + h;
    const std::vector<double> rp = residuals(x);
    x[v] = x0 - h;
    const std::vector<double> rm = residuals(x);
    x[v] = x0;
    for (std::size_t i = 0; i < m; ++i) j[i][v] = (rp[i] - rm[i]) / (2 * h);
  }
  return j;
}

}  // namespace mrbench::oracle
