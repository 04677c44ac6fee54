// Copyright 2026 The Corridor Crossing Authors
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

#include "crossing/kinematics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crossing {

namespace {
// Below this rate the arc is integrated as a straight segment.
constexpr double kStraightOmega = 1e-12;
}  // namespace

Twist2 BodyToWorld(const Twist2& body, double heading) {
  const Vec2 v = Rotate(body.linear(), heading);
  return {v.x, v.y, body.omega};
}

Twist2 WorldToBody(const Twist2& world, double heading) {
  const Vec2 v = Rotate(world.linear(), -heading);
  return {v.x, v.y, world.omega};
}

Twist2 RobotState::BodyTwist() const { return WorldToBody(twist, pose.heading); }

Twist2 ClampCommand(const Twist2& desired, const Twist2& current,
                    const KinematicLimits& limits, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("ClampCommand: dt must be > 0");
  if (!desired.IsFinite()) {
    throw std::invalid_argument("ClampCommand: non-finite desired twist");
  }

  Vec2 target = desired.linear();
  const double speed = target.Norm();
  if (speed > limits.v_max) target = target * (limits.v_max / speed);
  const double target_omega =
      std::clamp(desired.omega, -limits.omega_max, limits.omega_max);

  Vec2 delta = target - current.linear();
  const double max_dv = limits.a_max * dt;
  const double dv = delta.Norm();
  if (dv > max_dv) delta = delta * (max_dv / dv);

  const double max_dw = limits.alpha_max * dt;
  const double dw = std::clamp(target_omega - current.omega, -max_dw, max_dw);

  const Vec2 out = current.linear() + delta;
  return {out.x, out.y, current.omega + dw};
}

RobotState Integrate(const RobotState& state, const Twist2& command,
                     double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("Integrate: dt must be > 0");
  if (!command.IsFinite()) {
    throw std::invalid_argument("Integrate: non-finite command");
  }
  if (command.Speed() > state.limits.v_max + kLimitSlack ||
      std::abs(command.omega) > state.limits.omega_max + kLimitSlack) {
    throw std::invalid_argument("Integrate: command exceeds velocity limits");
  }

  const double theta0 = state.pose.heading;
  const double w = command.omega;
  double dx = 0.0;
  double dy = 0.0;
  if (std::abs(w) < kStraightOmega) {
    const Vec2 d = Rotate(command.linear(), theta0) * dt;
    dx = d.x;
    dy = d.y;
  } else {
    const double theta1 = theta0 + w * dt;
    // Integrals of cos and sin of the heading over the step.
    const double ic = (std::sin(theta1) - std::sin(theta0)) / w;
    const double is = (std::cos(theta0) - std::cos(theta1)) / w;
    dx = command.vx * ic - command.vy * is;
    dy = command.vx * is + command.vy * ic;
  }

  RobotState next = state;
  next.pose = Pose2(state.pose.x + dx, state.pose.y + dy, theta0 + w * dt);
  next.twist = BodyToWorld(command, next.pose.heading);
  return next;
}

void Wobble::Validate() const {
  if (amplitude < 0.0 || !(period > 0.0)) {
    throw std::invalid_argument("wobble: need amplitude >= 0 and period > 0");
  }
}

Twist2 WobbleVelocity(const Wobble& wobble, double time) {
  const double w = 2.0 * kPi / wobble.period;
  return {0.0, wobble.amplitude * w * std::cos(w * time), 0.0};
}

KinematicLimits WobbleHeadroom(const Wobble& wobble, const KinematicLimits& limits) {
  const double w = 2.0 * kPi / wobble.period;
  const double peak_speed = wobble.amplitude * w;
  // Sway curvature, the base turning the sway direction, and the one-period
  // fade-in after an emergency stop.
  const double peak_accel =
      peak_speed * (w + limits.omega_max + 1.0 / wobble.period);
  KinematicLimits out = limits;
  out.v_max -= peak_speed;
  out.a_max -= peak_accel;
  if (!(out.v_max > 0.0 && out.a_max > 0.0)) {
    throw std::invalid_argument("wobble: sway exceeds the base limits");
  }
  return out;
}

}  // namespace crossing
