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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "mrbench/dwa.hpp"
#include "planner_oracles.hpp"

namespace mrbench {
namespace {

OccupancyGrid open_room() { return OccupancyGrid(100, 100, 0.1, {0, 0}); }

TEST(Dwa, SymmetricStraightAhead) {
  const RobotState r = RobotState::at({5, 5, 0});
  const LocalPlanRequest req =
      fixture::make_request(open_room(), r, fixture::polyline({{5, 5}, {8, 5}}), {8, 5, 0});
  const PlannerOutput out = dwa_plan(req);
  EXPECT_EQ(out.status, PlanStatus::Ok);
  EXPECT_EQ(out.cmd.omega, 0.0);
  EXPECT_GT(out.cmd.v, 0.0);
  EXPECT_EQ(out.iterations, 11 * 21);
  ASSERT_FALSE(out.trajectory.empty());
  EXPECT_EQ(out.trajectory.front().position(), r.position());
  EXPECT_EQ(out.trajectory.size(), 17u);
}

// Walls 0.18 m from the robot center: any sampled translation, even the
// slowest one, brings the footprint within the 0.17 m radius, while turning
// in place stays clear.
TEST(Dwa, BoxedInRecovers) {
  OccupancyGrid g(300, 300, 0.01, {0, 0});
  const double c = 1.505;
  g.fill_box({0, 0}, {3, c - 0.18}, CellState::Occupied);
  g.fill_box({0, c + 0.18}, {3, 3}, CellState::Occupied);
  g.fill_box({0, 0}, {c - 0.18, 3}, CellState::Occupied);
  g.fill_box({c + 0.18, 0}, {3, 3}, CellState::Occupied);
  const RobotState r = RobotState::at({c, c, 0.0});
  const LocalPlanRequest req =
      fixture::make_request(g, r, fixture::polyline({{c, c}, {c, 2.9}}), {c, 2.9, 0});
  ASSERT_FALSE(collision_check(r, req.local_field, req.limits.radius));
  const PlannerOutput out = dwa_plan(req);
  EXPECT_EQ(out.status, PlanStatus::Infeasible);
  EXPECT_EQ(out.cmd.v, 0.0);
  EXPECT_GT(out.cmd.omega, 0.0);  // reference heading is +90 degrees
  EXPECT_NEAR(out.cmd.omega, 0.5 * req.limits.omega_max, 1e-12);
}

TEST(Dwa, RecoveryStopsWhenInCollision) {
  OccupancyGrid g = open_room();
  g.fill_box({5.05, 4.0}, {5.2, 6.0}, CellState::Occupied);
  const RobotState r = RobotState::at({5.0, 5.0, 0.0});
  const LocalPlanRequest req =
      fixture::make_request(g, r, fixture::polyline({{5, 5}, {8, 5}}), {8, 5, 0});
  const PlannerOutput out = dwa_plan(req);
  EXPECT_EQ(out.status, PlanStatus::Infeasible);
  EXPECT_EQ(out.cmd, (VelocityCommand{0.0, 0.0}));
}

TEST(Dwa, EmptyReferenceThrows) {
  LocalPlanRequest req =
      fixture::make_request(open_room(), RobotState::at({5, 5, 0}), {}, {8, 5, 0});
  EXPECT_THROW(dwa_plan(req), InputError);
}

TEST(Dwa, AlignsAtGoal) {
  const RobotState r = RobotState::at({5, 5, 0});
  const LocalPlanRequest req =
      fixture::make_request(open_room(), r, fixture::polyline({{5, 5}, {5.05, 5}}), {5.05, 5, 1.0});
  const PlannerOutput out = dwa_plan(req);
  EXPECT_EQ(out.cmd.v, 0.0);
  EXPECT_GT(out.cmd.omega, 0.0);
}

TEST(Dwa, ArgmaxOfExhaustiveRescoring) {
  std::mt19937_64 rng(101);
  DwaConfig cfg;
  cfg.n_v = 11;
  cfg.n_omega = 11;
  int near_ties = 0, infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const LocalPlanRequest req = fixture::random_request(rng, trial % 2 == 0);
    const PlannerOutput out = dwa_plan(req, cfg);
    const auto all = oracle::dwa_exhaustive(req, cfg.n_v, cfg.n_omega, cfg.sim_horizon, cfg.sim_dt,
                                            cfg.w_heading, cfg.w_clearance, cfg.w_velocity,
                                            cfg.lookahead, cfg.clearance_cap);
    ASSERT_EQ(all.size(), 121u);
    std::size_t best = all.size();
    for (std::size_t k = 0; k < all.size(); ++k) {
      if (!all[k].collides && (best == all.size() || all[k].score > all[best].score)) best = k;
    }
    if (best == all.size()) {
      EXPECT_EQ(out.status, PlanStatus::Infeasible);
      ++infeasible;
      continue;
    }
    ASSERT_EQ(out.status, PlanStatus::Ok);
    int within = 0;
    for (const auto& c : all) within += (!c.collides && c.score >= all[best].score - 1e-12);
    if (within > 1) {
      ++near_ties;
      bool listed = false;
      for (const auto& c : all) {
        listed |= (!c.collides && c.score >= all[best].score - 1e-12 && c.cmd == out.cmd);
      }
      EXPECT_TRUE(listed) << "trial " << trial;
    } else {
      EXPECT_EQ(out.cmd, all[best].cmd) << "trial " << trial;
    }
  }
  RecordProperty("near_ties", near_ties);
  RecordProperty("infeasible", infeasible);
}

TEST(Dwa, CommandInsideWindowAndTrajectoryClear) {
  std::mt19937_64 rng(202);
  const DwaConfig cfg;
  for (int trial = 0; trial < 300; ++trial) {
    const LocalPlanRequest req = fixture::random_request(rng, false);
    const PlannerOutput out = dwa_plan(req, cfg);
    const KinematicLimits& l = req.limits;
    EXPECT_LE(out.cmd.v, l.v_max);
    EXPECT_GE(out.cmd.v, l.v_min);
    EXPECT_LE(std::abs(out.cmd.v - req.robot.v), l.acc_max * req.dt_control + 1e-12);
    EXPECT_LE(std::abs(out.cmd.omega - req.robot.omega), l.alpha_max * req.dt_control + 1e-12);
    if (out.status == PlanStatus::Ok) {
      for (const TimedPose& p : out.trajectory) {
        EXPECT_FALSE(collision_check(p.position(), req.local_field, l.radius));
      }
    }
  }
}

TEST(Dwa, Deterministic) {
  std::mt19937_64 rng(5);
  const LocalPlanRequest req = fixture::random_request(rng);
  const PlannerOutput a = dwa_plan(req), b = dwa_plan(req);
  EXPECT_EQ(a.cmd, b.cmd);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(ScoreComponents, Bounds) {
  const RobotState r = RobotState::at({5, 5, 0});
  const LocalPlanRequest req =
      fixture::make_request(open_room(), r, fixture::polyline({{5, 5}, {9, 5}}), {9, 5, 0});
  const DwaConfig cfg;
  const auto traj = rollout(r, {0.3, 0.0}, cfg);
  const ScoreComponents s = score_components(traj, {0.3, 0.0}, req, cfg);
  EXPECT_DOUBLE_EQ(s.heading, 1.0);
  EXPECT_DOUBLE_EQ(s.clearance, 1.0);
  EXPECT_DOUBLE_EQ(s.velocity, 0.3 / 0.55);
  const ScoreComponents back = score_components(rollout(r, {-0.2, 0.0}, cfg), {-0.2, 0.0}, req, cfg);
  EXPECT_NEAR(back.heading, 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(back.velocity, 0.2 / 0.55);
  EXPECT_THROW(score_components({}, {}, req, cfg), InputError);
}

TEST(ScoreComponents, MatchesRecomputation) {
  std::mt19937_64 rng(303);
  const DwaConfig cfg;
  for (int trial = 0; trial < 200; ++trial) {
    const LocalPlanRequest req = fixture::random_request(rng, false);
    const VelocityCommand cmd{oracle::uniform(rng, -0.2, 0.55), oracle::uniform(rng, -1, 1)};
    const auto traj = rollout(req.robot, cmd, cfg);
    const ScoreComponents s = score_components(traj, cmd, req, cfg);
    const TimedPose& e = traj.back();
    const double sign = cmd.v < 0.0 ? -1.0 : 1.0;  // reversing travels against the yaw
    const double heading = 0.5 * (1.0 + sign * std::cos(e.theta - oracle::heading_target(
                                                          req, e.position(), cfg.lookahead)));
    double min_d = 1e300;
    for (const TimedPose& p : traj) {
      min_d = std::min(min_d, req.local_field.geometry().contains(p.position())
                                  ? distance_at(req.local_field, p.x, p.y)
                                  : 0.0);
    }
    EXPECT_NEAR(s.heading, heading, 1e-12);
    EXPECT_NEAR(s.clearance, std::min(min_d, 0.34) / 0.34, 1e-12);
    EXPECT_NEAR(s.velocity, std::abs(cmd.v) / 0.55, 1e-12);
    for (double c : {s.heading, s.clearance, s.velocity}) {
      EXPECT_GE(c, 0.0);
      EXPECT_LE(c, 1.0);
    }
  }
}

TEST(DwaConfig, Validation) {
  DwaConfig c;
  EXPECT_NO_THROW(validate(c));
  c.n_v = 2;
  EXPECT_THROW(validate(c), ValidationError);
  c = {};
  c.sim_dt = 2.0;
  EXPECT_THROW(validate(c), ValidationError);
  c = {};
  c.w_heading = c.w_clearance = c.w_velocity = 0.0;
  EXPECT_THROW(validate(c), ValidationError);
  c = {};
  c.w_velocity = -1;
  EXPECT_THROW(DwaPlanner{c}, ValidationError);
}

TEST(DynamicWindow, MatchesClampFormula) {
  const KinematicLimits l;
  const DynamicWindow w = dynamic_window({0.5, 0.9}, l, 0.2);
  EXPECT_DOUBLE_EQ(w.v_lo, 0.0);
  EXPECT_DOUBLE_EQ(w.v_hi, 0.55);
  EXPECT_NEAR(w.omega_lo, 0.26, 1e-12);
  EXPECT_DOUBLE_EQ(w.omega_hi, 1.0);
}

}  // namespace
}  // namespace mrbench
