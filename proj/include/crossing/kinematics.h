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

#ifndef CROSSING_KINEMATICS_H_
#define CROSSING_KINEMATICS_H_

#include "crossing/geometry.h"
#include "crossing/world.h"

namespace crossing {

// Omni-directional base state. `twist` is the world-frame velocity the base
// had at the end of the last integration step.
struct RobotState {
  Pose2 pose;
  Twist2 twist;
  KinematicLimits limits;

  // Current velocity expressed in the body frame.
  Twist2 BodyTwist() const;
};

inline constexpr double kLimitSlack = 1e-9;

Twist2 BodyToWorld(const Twist2& body, double heading);
Twist2 WorldToBody(const Twist2& world, double heading);

// Brings `desired` within the velocity limits (scaling the linear part so its
// direction is kept) and then within the acceleration limits relative to
// `current`: the linear change is bounded by a_max * dt in norm and the
// angular change by alpha_max * dt. Both twists share one frame.
Twist2 ClampCommand(const Twist2& desired, const Twist2& current,
                    const KinematicLimits& limits, double dt);

// Advances `state` by holding the body-frame `command` constant over `dt`
// (exact arc integration). Throws when the command exceeds the velocity
// limits or dt <= 0.
RobotState Integrate(const RobotState& state, const Twist2& command,
                     double dt);

// Optional sideways sway of the base while it drives, for probing how
// sensitive people are to small lateral wobbles. Off by default.
struct Wobble {
  double amplitude = 0.0;  // m, peak lateral offset
  double period = 2.0;     // s

  bool enabled() const { return amplitude > 0.0; }
  // Throws std::invalid_argument on a negative amplitude or period <= 0.
  void Validate() const;
};

// Body-frame lateral velocity whose time integral from 0 is
// amplitude * sin(2 pi t / period).
Twist2 WobbleVelocity(const Wobble& wobble, double time);

// Limits left for the controller once the sway's peak speed and
// acceleration (including the turn of the sway direction at omega_max and a
// fade-in over one period) are set aside, so controller output plus sway never exceeds `limits`. Throws
// std::invalid_argument when the sway alone would use them up.
KinematicLimits WobbleHeadroom(const Wobble& wobble, const KinematicLimits& limits);

}  // namespace crossing

#endif  // CROSSING_KINEMATICS_H_
