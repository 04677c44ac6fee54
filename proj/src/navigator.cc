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

#include "crossing/navigator.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crossing {

namespace {
// Settles at half the tolerance and lets go at 110% of it.
constexpr double kGoalCapture = 0.5;
constexpr double kGoalHysteresis = 1.1;
constexpr double kIntegralCap = 1.0;  // m*s
// Fraction of a_max used for the minimum approach speed. A bare P term
// decays exponentially and creeps for a second or more near the goal.
constexpr double kSettleDecelFraction = 0.5;
}  // namespace

void NavigatorGains::Validate(double robot_radius) const {
  if (kp_lin < 0.0 || ki_lin < 0.0 || kd_lin < 0.0 || kp_ang < 0.0 ||
      integral_gate_radius < 0.0 || goal_tolerance < 0.0 ||
      heading_tolerance < 0.0) {
    throw std::invalid_argument("navigator: gains must be >= 0");
  }
  if (!(stop_distance > robot_radius)) {
    throw std::invalid_argument("navigator: stop_distance must exceed radius");
  }
}

void Navigator::Reset() {
  integral_ = 0.0;
  converged_ = false;
  emergency_stop_ = false;
}

Twist2 Navigator::Command(const Path& path, const RobotState& robot,
                          std::span<const Obstacle> obstacles, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("Navigator: dt <= 0");
  const Vec2 position = robot.pose.position();

  emergency_stop_ = std::any_of(
      obstacles.begin(), obstacles.end(), [&](const Obstacle& o) {
        return Distance(o.center, position) < gains_.stop_distance;
      });
  if (emergency_stop_) {
    integral_ = 0.0;
    return {};
  }

  // The first path point is the pose the plan was made from.
  const auto points = path.points();
  std::size_t index = points.size() > 1 ? 1 : 0;
  while (index + 1 < points.size() &&
         Distance(points[index].pose.position(), position) <
             gains_.goal_tolerance) {
    ++index;
  }
  const Pose2& target = points[index].pose;
  const Vec2 error = target.position() - position;
  const double distance = error.Norm();

  if (converged_) {
    converged_ = distance < kGoalHysteresis * gains_.goal_tolerance;
  } else {
    // Capture only once braking from here still ends inside the tolerance.
    const double speed = robot.twist.Speed();
    const double coast =
        speed * speed / (2.0 * robot.limits.a_max) + speed * dt;
    converged_ = distance < kGoalCapture * gains_.goal_tolerance &&
                 distance + coast < gains_.goal_tolerance;
  }

  Vec2 linear;
  if (!converged_ && distance > 0.0) {
    const Vec2 direction = error / distance;
    if (distance < gains_.integral_gate_radius) {
      integral_ = std::min(integral_ + distance * dt, kIntegralCap);
    } else {
      integral_ = 0.0;
    }
    const double along_speed = Dot(robot.twist.linear(), direction);
    double speed = gains_.kp_lin * distance + gains_.ki_lin * integral_ -
                   gains_.kd_lin * along_speed;
    speed = std::max(speed, std::sqrt(2.0 * kSettleDecelFraction *
                                      robot.limits.a_max * distance));
    const double cap =
        std::min({path.max_speed(), robot.limits.v_max,
                  std::sqrt(2.0 * robot.limits.a_max * distance)});
    speed = std::clamp(speed, 0.0, cap);
    linear = direction * speed;
  } else {
    integral_ = 0.0;
  }

  const double heading_error = NormalizeAngle(target.heading - robot.pose.heading);
  const double omega_cap =
      std::min(robot.limits.omega_max,
               std::sqrt(2.0 * robot.limits.alpha_max * std::abs(heading_error)));
  const double omega =
      std::clamp(gains_.kp_ang * heading_error, -omega_cap, omega_cap);

  // Acceleration limits hold in the world frame; clamping body-frame values
  // would drag the velocity round with the heading while the base turns.
  const Twist2 world = ClampCommand({linear.x, linear.y, omega}, robot.twist,
                                    robot.limits, dt);
  // Integrate stores the command rotated by the end-of-step heading, so use
  // that heading here to land exactly on the clamped world velocity.
  return WorldToBody(world, robot.pose.heading + world.omega * dt);
}

bool GoalReached(const Path& path, const RobotState& robot,
                 const NavigatorGains& gains) {
  const Pose2& goal = path.back().pose;
  return Distance(goal.position(), robot.pose.position()) < gains.goal_tolerance &&
         std::abs(NormalizeAngle(goal.heading - robot.pose.heading)) <
             gains.heading_tolerance;
}

}  // namespace crossing
