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

#ifndef CROSSING_PLANNER_H_
#define CROSSING_PLANNER_H_

#include <optional>
#include <span>
#include <string_view>

#include "crossing/kinematics.h"
#include "crossing/perception.h"
#include "crossing/world.h"

namespace crossing {

// Step-slide-rotate crossing planner.
//
// Free navigation heads straight for the goal. When a tracked person is on
// the way and closer than `step_trigger_distance`, the planner commits to a
// side and steps diagonally toward the wall (Step), then follows the wall
// with a moving sub-goal while deciding when to turn its body toward the
// oncoming person (SlideRotate). The episode ends when the person is behind
// the robot. Rotation and sliding can be disabled independently.

enum class PlannerMode { kFreeNavigation, kStep, kSlideRotate };
enum class Side { kNone, kLeft, kRight };

std::string_view ToString(PlannerMode mode);
std::string_view ToString(Side side);
// +1 for left, -1 for right, 0 for none.
int SideSign(Side side);

struct PlannerConfig {
  double step_trigger_distance = 4.0;  // m
  double rotate_time_threshold = 1.8;  // s
  double rotate_angle = kPi / 3.0;     // rad
  double slide_lookahead = 0.5;        // m
  double wall_offset = 0.28;           // m, robot center to wall
  bool rotation_enabled = true;
  bool slide_enabled = true;
  double rotate_back_clearance = 0.5;  // m
  double nominal_speed = 0.5;          // m/s, cruise speed
  double step_speed_factor = 0.5;      // forward speed during the diagonal
  double step_lateral_tolerance = 0.05;  // m
  double blocked_stop_distance = 1.0;    // m
  double min_closing_speed = 0.05;       // m/s
  double closing_window = 0.5;           // s
  double side_tie_band = 0.05;           // m

  // Throws when the rotation cannot complete within the time threshold at
  // `omega_max` or the wall offset is smaller than `robot_radius`.
  void Validate(double omega_max, double robot_radius) const;
};

struct PlannerState {
  PlannerMode mode = PlannerMode::kFreeNavigation;
  Side committed_side = Side::kNone;
  bool rotating = false;
  std::optional<int> target_person_id;
  // Diagnostics from the last call.
  std::optional<double> last_t_cross;
  double target_heading = 0.0;
  bool blocked = false;
};

struct PlanResult {
  Path path;
  PlannerState state;
};

PlanResult Plan(const RobotState& robot, std::span<const TrackedPerson> tracks,
                const Vec2& goal, const CorridorWorld& world,
                const PlannerConfig& config, const PlannerState& state);

// Whether `track` stands between the robot and its goal in the robot's aisle.
bool PersonOnWay(const RobotState& robot, const TrackedPerson& track,
                 const Vec2& goal, const CorridorWorld& world,
                 const PlannerConfig& config);

// Side opposite the person's lateral offset; ties go to the robot's own side,
// then to the right.
Side ChooseStepSide(const RobotState& robot, const TrackedPerson& track,
                    const CorridorFrame& frame, const PlannerConfig& config);

// Signed lateral position of the robot center when `wall_offset` from the
// wall on `side`.
double SideLaneLateral(Side side, const CorridorFrame& frame,
                       const PlannerConfig& config);

Path StepPhasePath(const RobotState& robot, Side side,
                   const CorridorFrame& frame, const PlannerConfig& config);

// Moving sub-goal along the wall on `side`, `slide_lookahead` ahead of the
// robot and clamped to the aisle. With sliding disabled this is the robot's
// own position.
Vec2 SlideGoal(const RobotState& robot, Side side, const CorridorFrame& frame,
               const PlannerConfig& config);

// d_p / v_r, or empty ("no crossing predicted") when v_r <= epsilon. Throws on
// negative or non-finite distance.
std::optional<double> CrossingTime(double distance, double closing_speed,
                                   double epsilon = 0.05);

struct RotationDecision {
  double target_heading = 0.0;
  bool rotating = false;
};

// Body heading for the slide-rotate phase. `person_side_sign` is +1 when the
// person passes on the robot's left. Once rotating, stays rotating.
RotationDecision RotateDecision(std::optional<double> t_cross,
                                int person_side_sign, bool already_rotating,
                                const CorridorFrame& frame,
                                const PlannerConfig& config);

// True once the person is behind the robot by at least the clearance.
bool RotateBack(const RobotState& robot, const TrackedPerson& track,
                const CorridorFrame& frame, const PlannerConfig& config);

// True when the person is ahead, on the robot's committed side of the aisle
// and within `blocked_stop_distance`.
bool BlockedStop(const RobotState& robot, const TrackedPerson& track,
                 Side committed_side, const CorridorFrame& frame,
                 const PlannerConfig& config);

}  // namespace crossing

#endif  // CROSSING_PLANNER_H_
