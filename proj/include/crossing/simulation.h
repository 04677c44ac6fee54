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

#ifndef CROSSING_SIMULATION_H_
#define CROSSING_SIMULATION_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "crossing/planner.h"
#include "crossing/scenario.h"

namespace crossing {

// State at the start of one physics tick and the command applied over it.
struct TraceRow {
  std::int64_t tick = 0;
  double time = 0.0;
  Pose2 robot_pose;
  Twist2 robot_twist;  // world frame
  PlannerMode mode = PlannerMode::kFreeNavigation;
  bool rotating = false;
  Side side = Side::kNone;
  double target_heading = 0.0;
  std::optional<double> t_cross;
  bool blocked = false;
  std::vector<Vec2> pedestrian_positions;
  std::vector<Vec2> pedestrian_velocities;
  int track_count = 0;
  // Planner target track, or the nearest track outside an episode.
  std::optional<TrackedPerson> track;
  Twist2 command;  // body frame
  double min_clearance = 0.0;
  bool emergency_stop = false;
};

struct SimTrace {
  CorridorWorld world;
  KinematicLimits limits;
  double dt_physics = 0.01;
  Pose2 robot_start;
  Vec2 robot_goal;
  std::vector<double> pedestrian_radii;
  std::vector<TraceRow> rows;
  bool goal_reached = false;
};

enum class Outcome { kGoalReached, kTimeout };
std::string_view ToString(Outcome outcome);

// Heading within this of the rotation target counts as rotation complete.
inline constexpr double kRotationCompleteTolerance = 2.0 * kPi / 180.0;
// Speed below which the robot counts as stopped.
inline constexpr double kStoppedSpeed = 0.01;
// Window ahead of the robot, in meters, used for stop checks.
inline constexpr double kCrossingWindow = 1.5;

struct CrossingMetrics {
  Outcome outcome = Outcome::kTimeout;
  bool collision = false;
  double min_clearance = 0.0;
  std::optional<std::int64_t> crossing_tick;
  std::optional<std::int64_t> rotation_trigger_tick;
  std::optional<std::int64_t> rotation_complete_tick;
  std::optional<double> rotation_lead;  // s
  double traversal_time = 0.0;          // s
  bool robot_stopped_during_crossing = false;
  int limit_violations = 0;
  int wall_penetrations = 0;
  bool step_performed = false;
  std::optional<double> step_trigger_distance;  // m, true distance
};

struct RunResult {
  SimTrace trace;
  CrossingMetrics metrics;
  int projection_fallbacks = 0;
};

// Runs a resolved or unresolved scenario to goal or timeout. Deterministic
// for a given scenario (seed included).
RunResult RunScenario(const Scenario& scenario);

CrossingMetrics ComputeMetrics(const SimTrace& trace);

}  // namespace crossing

#endif  // CROSSING_SIMULATION_H_
