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

#ifndef CROSSING_PEDESTRIAN_H_
#define CROSSING_PEDESTRIAN_H_

#include <string_view>
#include <vector>

#include "crossing/geometry.h"
#include "crossing/kinematics.h"
#include "crossing/world.h"

namespace crossing {

enum class Behaviour { kSocialForce, kScriptedWaypoints, kSameSideBlocker };

std::string_view ToString(Behaviour b);
// Accepts "social_force", "scripted_waypoints", "same_side_blocker".
Behaviour ParseBehaviour(std::string_view name);

struct TimedWaypoint {
  double time = 0.0;
  Vec2 position;
};

enum class BlockerPhase { kMirror, kDwell, kPass };

struct PedestrianState {
  Vec2 position;
  Vec2 velocity;
  Vec2 goal;
  double desired_speed = 1.2;
  double radius = 0.18;
  Behaviour behaviour = Behaviour::kSocialForce;

  // kScriptedWaypoints: positions at absolute times, sorted by time.
  std::vector<TimedWaypoint> waypoints;
  double elapsed = 0.0;

  // kSameSideBlocker bookkeeping.
  BlockerPhase blocker_phase = BlockerPhase::kMirror;
  double phase_elapsed = 0.0;
  double pass_lateral = 0.0;

  // Number of times the hard wall projection had to correct the position.
  int projection_fallbacks = 0;
  // Number of coincident-center events resolved by the fallback direction.
  int coincidence_warnings = 0;

  void Validate() const;
};

// Helbing-style model. The robot term is evaluated at the predicted point of
// closest approach within `anticipation_horizon`, so that a walker reacts to
// an oncoming robot before contact range.
struct SocialForceParams {
  double tau = 0.5;                   // s, velocity relaxation time
  double a = 2.0;                     // m/s^2, robot repulsion strength
  double b = 0.3;                     // m, robot repulsion range
  double wall_a = 2.5;                // m/s^2
  double wall_b = 0.1;                // m
  double anticipation_horizon = 1.5;  // s
  double speed_cap_factor = 1.3;
  double arrival_radius = 0.1;  // m, walker stops inside this goal radius
  double wall_cutoff = 3.0;     // m, walls further away are ignored
  // Inside an aisle the walker keeps its lane and only heads straight for the
  // goal once this close to it along the aisle.
  double lane_keep_distance = 1.0;  // m

  void Validate() const;
};

// Same-side blocker script: mirror the robot's lateral position, halt once
// within `commit_distance`, wait `dwell_time`, then pass on the free side.
struct BlockerParams {
  double commit_distance = 1.0;
  double dwell_time = 1.5;
  double lateral_speed = 0.6;
  double lateral_gain = 4.0;
  double wall_margin = 0.02;
  double pass_forward_factor = 0.3;
};

// Social-force acceleration acting on `ped` (relaxation excluded).
Vec2 RepulsiveAcceleration(const PedestrianState& ped, const RobotState& robot,
                           const CorridorWorld& world,
                           const SocialForceParams& params,
                           int* coincidence_warnings = nullptr);

PedestrianState SocialForceStep(const PedestrianState& ped,
                                const RobotState& robot,
                                const CorridorWorld& world,
                                const SocialForceParams& params, double dt);

PedestrianState ScriptedStep(const PedestrianState& ped,
                             const RobotState& robot,
                             const CorridorWorld& world,
                             const BlockerParams& params, double dt);

// Dispatches on `ped.behaviour`.
PedestrianState StepPedestrian(const PedestrianState& ped,
                               const RobotState& robot,
                               const CorridorWorld& world,
                               const SocialForceParams& social,
                               const BlockerParams& blocker, double dt);

}  // namespace crossing

#endif  // CROSSING_PEDESTRIAN_H_
