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

#include "mrbench/common.hpp"
#include "mrbench/gridmap.hpp"

namespace mrbench {

struct VelocityCommand {
  double v = 0.0;      // m/s
  double omega = 0.0;  // rad/s

  friend bool operator==(const VelocityCommand&, const VelocityCommand&) = default;
};

struct RobotState {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // (-pi, pi]
  double v = 0.0;
  double omega = 0.0;

  Pose2 pose() const { return {x, y, theta}; }
  Point2 position() const { return {x, y}; }
  VelocityCommand velocity() const { return {v, omega}; }
  static RobotState at(const Pose2& p) { return {p.x, p.y, wrap_angle(p.theta), 0.0, 0.0}; }

  friend bool operator==(const RobotState&, const RobotState&) = default;
};

/// Differential-drive bounds. Defaults are the common evaluation limits.
struct KinematicLimits {
  double v_max = 0.55;
  double v_min = -0.2;
  double omega_max = 1.0;
  double omega_min = -1.0;
  double acc_max = 2.5;
  double acc_min = -2.5;
  double alpha_max = 3.2;
  double alpha_min = -3.2;
  double radius = 0.17;

  friend bool operator==(const KinematicLimits&, const KinematicLimits&) = default;
};

inline void validate(const KinematicLimits& l) {
  if (!(l.v_max > l.v_min) || !(l.omega_max > l.omega_min) || !(l.acc_max > l.acc_min) ||
      !(l.alpha_max > l.alpha_min)) {
    throw ValidationError("kinematic limits: every max must exceed its min");
  }
  if (!(l.radius > 0.0)) throw ValidationError("kinematic limits: radius must be > 0");
}

/// Restricts `desired` to the velocity box intersected with what the
/// acceleration bounds allow from `prev` within `dt`.
inline VelocityCommand clamp_command(const VelocityCommand& desired, const VelocityCommand& prev,
                                     const KinematicLimits& limits, double dt) {
  if (!(dt > 0.0)) throw InputError("clamp_command: dt must be > 0");
  auto window = [dt](double want, double last, double lo, double hi, double dlo, double dhi) {
    double a = std::max(lo, last + dlo * dt);
    double b = std::min(hi, last + dhi * dt);
    if (a > b) {
      // `last` itself lies outside the box: move toward the box as fast as allowed.
      a = b = (last > hi) ? std::max(hi, last + dlo * dt) : std::min(lo, last + dhi * dt);
    }
    return std::clamp(want, a, b);
  };
  return {window(desired.v, prev.v, limits.v_min, limits.v_max, limits.acc_min, limits.acc_max),
          window(desired.omega, prev.omega, limits.omega_min, limits.omega_max, limits.alpha_min,
                 limits.alpha_max)};
}

/// Exact unicycle integration of a constant command over `dt`.
inline RobotState step(const RobotState& state, const VelocityCommand& cmd, double dt) {
  if (!(dt > 0.0)) throw InputError("step: dt must be > 0");
  RobotState next = state;
  const double th = state.theta;
  if (std::abs(cmd.omega) < 1e-9) {
    next.x += cmd.v * dt * std::cos(th);
    next.y += cmd.v * dt * std::sin(th);
  } else {
    const double r = cmd.v / cmd.omega;
    next.x += r * (std::sin(th + cmd.omega * dt) - std::sin(th));
    next.y += -r * (std::cos(th + cmd.omega * dt) - std::cos(th));
  }
  next.theta = wrap_angle(th + cmd.omega * dt);
  next.v = cmd.v;
  next.omega = cmd.omega;
  return next;
}

/// Circular footprint test against a clearance field: a collision is any
/// center clearance below `radius`, or a query outside the field.
inline bool collision_check(Point2 p, const DistanceField& field, double radius) {
  if (!field.geometry().contains(p)) return true;
  return distance_at(field, p.x, p.y) < radius;
}

inline bool collision_check(const RobotState& state, const DistanceField& field, double radius) {
  return collision_check(state.position(), field, radius);
}

}  // namespace mrbench
