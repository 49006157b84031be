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
#include <numbers>
#include <random>

#include "mrbench/robot.hpp"
#include "oracles.hpp"

namespace mrbench {
namespace {

const KinematicLimits kLimits;

TEST(ClampCommand, AccelerationBoundsForward) {
  EXPECT_DOUBLE_EQ(clamp_command({1.0, 0.0}, {0.0, 0.0}, kLimits, 0.2).v, 0.5);
}

TEST(ClampCommand, ReverseBoundWins) {
  EXPECT_DOUBLE_EQ(clamp_command({-1.0, 0.0}, {0.0, 0.0}, kLimits, 0.2).v, -0.2);
}

TEST(ClampCommand, FeasibleIsIdentity) {
  const VelocityCommand c{0.3, -0.4};
  EXPECT_EQ(clamp_command(c, c, kLimits, 0.2), c);
}

TEST(ClampCommand, AngularWindow) {
  const VelocityCommand c = clamp_command({0.0, 1.0}, {0.0, 0.0}, kLimits, 0.2);
  EXPECT_NEAR(c.omega, 0.64, 1e-12);
}

TEST(ClampCommand, RejectsNonPositiveDt) {
  EXPECT_THROW(clamp_command({}, {}, kLimits, 0.0), InputError);
}

TEST(ClampCommand, RandomInputsStayInBoxAndWindow) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 100000; ++k) {
    const VelocityCommand prev{oracle::uniform(rng, kLimits.v_min, kLimits.v_max),
                               oracle::uniform(rng, kLimits.omega_min, kLimits.omega_max)};
    const VelocityCommand want{oracle::uniform(rng, -3, 3), oracle::uniform(rng, -3, 3)};
    const double dt = oracle::uniform(rng, 0.01, 0.5);
    const VelocityCommand c = clamp_command(want, prev, kLimits, dt);
    ASSERT_GE(c.v, kLimits.v_min);
    ASSERT_LE(c.v, kLimits.v_max);
    ASSERT_GE(c.omega, kLimits.omega_min);
    ASSERT_LE(c.omega, kLimits.omega_max);
    ASSERT_LE(c.v - prev.v, kLimits.acc_max * dt + 1e-12);
    ASSERT_GE(c.v - prev.v, kLimits.acc_min * dt - 1e-12);
    ASSERT_LE(c.omega - prev.omega, kLimits.alpha_max * dt + 1e-12);
    ASSERT_GE(c.omega - prev.omega, kLimits.alpha_min * dt - 1e-12);
  }
}

TEST(ClampCommand, OutsideBoxMovesTowardIt) {
  const VelocityCommand c = clamp_command({0.9, 0.0}, {0.9, 0.0}, kLimits, 0.1);
  EXPECT_NEAR(c.v, 0.65, 1e-12);
}

TEST(Step, ZeroCommandIsIdentity) {
  const RobotState s{1, 2, 0.3, 0, 0};
  const RobotState n = step(s, {0, 0}, 0.7);
  EXPECT_EQ(n.pose(), s.pose());
}

TEST(Step, StraightLine) {
  const RobotState n = step({}, {1.0, 0.0}, 1.0);
  EXPECT_DOUBLE_EQ(n.x, 1.0);
  EXPECT_DOUBLE_EQ(n.y, 0.0);
  EXPECT_EQ(n.v, 1.0);
}

// Unit circle centered at (0, 1): after 1 rad the robot sits at (sin 1, 1 - cos 1).
TEST(Step, ClosedFormArc) {
  const RobotState n = step({}, {0.5, 0.5}, 2.0);
  EXPECT_NEAR(n.x, std::sin(1.0), 1e-12);
  EXPECT_NEAR(n.y, 1.0 - std::cos(1.0), 1e-12);
  EXPECT_NEAR(n.theta, 1.0, 1e-12);
}

TEST(Step, RandomArcsMatchCircleGeometry) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 100000; ++k) {
    const RobotState s{oracle::uniform(rng, -10, 10), oracle::uniform(rng, -10, 10),
                       oracle::uniform(rng, -3.14, 3.14), 0, 0};
    const VelocityCommand c{oracle::uniform(rng, -0.2, 0.55), oracle::uniform(rng, -1, 1)};
    const double dt = oracle::uniform(rng, 0.001, 2.0);
    const RobotState n = step(s, c, dt);
    double ex, ey;
    if (std::abs(c.omega) < 1e-9) {
      ex = s.x + c.v * dt * std::cos(s.theta);
      ey = s.y + c.v * dt * std::sin(s.theta);
    } else {
      // Rotate the start point about the instantaneous center.
      const double r = c.v / c.omega;
      const double cx = s.x - r * std::sin(s.theta);
      const double cy = s.y + r * std::cos(s.theta);
      const double a = c.omega * dt;
      const double px = s.x - cx, py = s.y - cy;
      ex = cx + std::cos(a) * px - std::sin(a) * py;
      ey = cy + std::sin(a) * px + std::cos(a) * py;
    }
    ASSERT_NEAR(n.x, ex, 1e-12 * std::max(1.0, std::abs(c.v / c.omega)) + 1e-12);
    ASSERT_NEAR(n.y, ey, 1e-12 * std::max(1.0, std::abs(c.v / c.omega)) + 1e-12);
    ASSERT_NEAR(wrap_angle(n.theta - (s.theta + c.omega * dt)), 0.0, 1e-12);
    ASSERT_GT(n.theta, -std::numbers::pi);
    ASSERT_LE(n.theta, std::numbers::pi);
  }
}

TEST(Step, SubstepsMatchSingleStep) {
  const RobotState s{0.5, -0.2, 2.9, 0, 0};
  const VelocityCommand c{0.4, 0.9};
  const RobotState once = step(s, c, 2.0);
  for (int n : {2, 4, 10, 40}) {
    RobotState r = s;
    for (int k = 0; k < n; ++k) r = step(r, c, 2.0 / n);
    EXPECT_NEAR(r.x, once.x, 1e-12);
    EXPECT_NEAR(r.y, once.y, 1e-12);
    EXPECT_NEAR(wrap_angle(r.theta - once.theta), 0.0, 1e-12);
  }
}

TEST(Step, RejectsNonPositiveDt) { EXPECT_THROW(step({}, {}, -1.0), InputError); }

DistanceField wall_field() {
  OccupancyGrid g(60, 20, 0.05, {0, 0});
  for (int j = 0; j < 20; ++j) g.set(0, j, CellState::Occupied);
  return distance_transform(g);
}

TEST(CollisionCheck, Threshold) {
  const DistanceField f = wall_field();
  const double x0 = 0.025;  // center of the wall column
  EXPECT_FALSE(collision_check(Point2{x0 + 0.5, 0.5}, f, 0.17));
  EXPECT_TRUE(collision_check(Point2{x0 + 0.16, 0.5}, f, 0.17));
}

TEST(CollisionCheck, FlipsAtRadius) {
  const DistanceField f = wall_field();
  double lo = 0.05, hi = 1.0;
  for (int k = 0; k < 60; ++k) {
    const double mid = 0.5 * (lo + hi);
    (collision_check(Point2{mid, 0.5}, f, 0.17) ? lo : hi) = mid;
  }
  EXPECT_NEAR(distance_at(f, hi, 0.5), 0.17, 1e-9);
}

TEST(CollisionCheck, OutsideIsCollision) {
  EXPECT_TRUE(collision_check(Point2{-1, 0.5}, wall_field(), 0.17));
}

TEST(KinematicLimits, DefaultsAndValidation) {
  EXPECT_EQ(kLimits.v_max, 0.55);
  EXPECT_EQ(kLimits.v_min, -0.2);
  EXPECT_EQ(kLimits.acc_max, 2.5);
  EXPECT_EQ(kLimits.alpha_max, 3.2);
  EXPECT_EQ(kLimits.radius, 0.17);
  EXPECT_NO_THROW(validate(kLimits));
  KinematicLimits bad = kLimits;
  bad.v_min = 1.0;
  EXPECT_THROW(validate(bad), ValidationError);
  bad = kLimits;
  bad.radius = 0;
  EXPECT_THROW(validate(bad), ValidationError);
}

}  // namespace
}  // namespace mrbench
