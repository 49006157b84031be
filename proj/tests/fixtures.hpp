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

// Request builders shared by the planner tests and the acceptance binary.

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "mrbench/local_planner.hpp"
#include "mrbench/teb.hpp"
#include "oracles.hpp"

namespace mrbench::fixture {

/// Request the way the harness builds it: 5.5 m crop around the robot,
/// Unknown treated as occupied for the local field.
inline LocalPlanRequest make_request(const OccupancyGrid& world, const RobotState& robot,
                                     const GlobalPath& reference, const Pose2& goal,
                                     const KinematicLimits& limits = {}) {
  LocalPlanRequest req;
  req.local_map = crop_local(world, robot.position(), 5.5);
  req.local_field = distance_transform(req.local_map, UnknownPolicy::AsOccupied);
  req.robot = robot;
  req.reference = reference;
  req.goal = goal;
  req.limits = limits;
  return req;
}

inline GlobalPath polyline(const std::vector<Point2>& v, double spacing = 0.1) {
  double total = 0.0;
  for (std::size_t k = 1; k < v.size(); ++k) total += distance(v[k - 1], v[k]);
  GlobalPath p;
  double done = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k > 0) done += distance(v[k - 1], v[k]);
    p.push_back(v[k], total - done);
  }
  return densify(p, spacing);
}

/// Open 8 x 8 m world with a few random boxes, robot near the middle with
/// random pose and velocity, and a random two-segment reference ahead.
inline LocalPlanRequest random_request(std::mt19937_64& rng, bool final_goal = true) {
  OccupancyGrid g(80, 80, 0.1, {0, 0});
  for (int b = 0; b < 6; ++b) {
    const double x = oracle::uniform(rng, 1.0, 7.0), y = oracle::uniform(rng, 1.0, 7.0);
    const double w = oracle::uniform(rng, 0.2, 0.8), h = oracle::uniform(rng, 0.2, 0.8);
    g.fill_box({x, y}, {x + w, y + h}, CellState::Occupied);
  }
  const DistanceField f = distance_transform(g);
  RobotState r;
  do {
    r.x = oracle::uniform(rng, 3.0, 5.0);
    r.y = oracle::uniform(rng, 3.0, 5.0);
  } while (distance_at(f, r.x, r.y) < 0.2);
  const KinematicLimits lim;
  r.theta = oracle::uniform(rng, -3.1, 3.1);
  r.v = oracle::uniform(rng, lim.v_min, lim.v_max);
  r.omega = oracle::uniform(rng, lim.omega_min, lim.omega_max);
  const double a0 = r.theta + oracle::uniform(rng, -1.0, 1.0);
  const Point2 m{r.x + 1.2 * std::cos(a0), r.y + 1.2 * std::sin(a0)};
  const double a1 = a0 + oracle::uniform(rng, -1.2, 1.2);
  const Point2 e{m.x + 1.4 * std::cos(a1), m.y + 1.4 * std::sin(a1)};
  const GlobalPath ref = polyline({r.position(), m, e});
  const Pose2 goal = final_goal ? Pose2{e.x, e.y, a1} : Pose2{e.x + 5.0, e.y, 0.0};
  return make_request(g, r, ref, goal);
}

struct Dense {
  std::vector<double> r;
  std::vector<std::vector<double>> j;
};

inline Dense analytic(const TebProblem& p, const TebBand& b) {
  Dense d;
  const int m = p.num_vars(b);
  teb_residuals(p, b, [&](TebTerm, const detail::Row& row) {
    d.r.push_back(row.r);
    d.j.emplace_back(m, 0.0);
    for (int e = 0; e < row.n; ++e) d.j.back()[row.idx[e]] += row.val[e];
  });
  return d;
}

inline std::vector<double> residual_values(const TebProblem& p, const TebBand& like,
                                           const std::vector<double>& x) {
  std::vector<double> r;
  teb_residuals(p, teb_unpack(like, x), [&](TebTerm, const detail::Row& row) { r.push_back(row.r); });
  return r;
}

// A band wandering near obstacles with short, uneven intervals, so that
// every hinge family is active somewhere.
inline TebBand random_band(std::mt19937_64& rng, const LocalPlanRequest& req, int n) {
  TebBand b;
  Pose2 s = req.robot.pose();
  b.poses.push_back(s);
  double heading = s.theta;
  for (int k = 1; k < n; ++k) {
    heading += oracle::uniform(rng, -0.5, 0.5);
    const double len = oracle::uniform(rng, 0.02, 0.2);
    s.x += len * std::cos(heading);
    s.y += len * std::sin(heading);
    s.theta = wrap_angle(heading + oracle::uniform(rng, -0.3, 0.3));
    b.poses.push_back(s);
    b.dt.push_back(oracle::uniform(rng, 0.05, 0.5));
  }
  return b;
}

}  // namespace mrbench::fixture
