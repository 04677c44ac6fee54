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

#ifndef CROSSING_NAVIGATOR_H_
#define CROSSING_NAVIGATOR_H_

#include <span>

#include "crossing/kinematics.h"
#include "crossing/world.h"

namespace crossing {

struct NavigatorGains {
  double kp_lin = 2.5;               // 1/s
  double ki_lin = 0.3;               // 1/s^2
  double kd_lin = 0.1;               // dimensionless, on measured speed
  double kp_ang = 8.0;               // 1/s
  double integral_gate_radius = 0.5;  // m
  double stop_distance = 0.45;        // m
  double goal_tolerance = 0.005;      // m
  double heading_tolerance = 0.05;    // rad

  void Validate(double robot_radius) const;
};

struct Obstacle {
  Vec2 center;
  double radius = 0.0;
};

// Path follower. The translational command points at the first unreached
// path point and its magnitude comes from one scalar PID on the distance to
// that point, so x and y stay coupled and the robot moves on straight lines.
// The integral acts only inside `integral_gate_radius`. Speeds are bounded by
// the path speed cap, the velocity limits and a braking curve, then passed
// through ClampCommand. Any obstacle center closer than `stop_distance`
// yields an immediate zero command.
class Navigator {
 public:
  explicit Navigator(const NavigatorGains& gains) : gains_(gains) {}

  // Body-frame velocity command. Throws on an empty path (impossible by
  // construction of Path) or dt <= 0.
  Twist2 Command(const Path& path, const RobotState& robot,
                 std::span<const Obstacle> obstacles, double dt);

  void Reset();
  bool emergency_stop() const { return emergency_stop_; }
  const NavigatorGains& gains() const { return gains_; }

 private:
  NavigatorGains gains_;
  double integral_ = 0.0;
  bool converged_ = false;
  bool emergency_stop_ = false;
};

bool GoalReached(const Path& path, const RobotState& robot,
                 const NavigatorGains& gains);

}  // namespace crossing

#endif  // CROSSING_NAVIGATOR_H_
