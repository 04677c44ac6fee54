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

#include "crossing/planner.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace crossing {

namespace {

// Robot lateral offsets below this count as centered for tie-breaking.
constexpr double kCenteredRobot = 1e-3;
// Extra lateral gap required before a blocked robot moves on.
constexpr double kLaneClearMargin = 0.01;

const TrackedPerson* FindTrack(std::span<const TrackedPerson> tracks,
                               std::optional<int> id) {
  if (!id) return nullptr;
  for (const TrackedPerson& t : tracks) {
    if (t.id == *id) return &t;
  }
  return nullptr;
}

// Settles onto the committed lane at the current along-position and waits.
Path LaneHoldPath(const RobotState& robot, Side side, double heading,
                  const CorridorFrame& frame, const PlannerConfig& config) {
  const Vec2 position = robot.pose.position();
  const Pose2 target(
      frame.PointAt(frame.Along(position), SideLaneLateral(side, frame, config)),
      heading);
  return Path::TwoPoint(robot.pose, target,
                        config.step_speed_factor * config.nominal_speed);
}

PlannerState EndEpisode(const PlannerState& state) {
  PlannerState next = state;
  next.mode = PlannerMode::kFreeNavigation;
  next.committed_side = Side::kNone;
  next.rotating = false;
  next.target_person_id.reset();
  next.blocked = false;
  return next;
}

// Once blocked, the robot keeps waiting until the person's footprint has
// cleared its lane or the person is no longer ahead.
bool Blocked(const RobotState& robot, const TrackedPerson& track,
             const PlannerState& state, const CorridorFrame& frame,
             const CorridorWorld& world, const PlannerConfig& config) {
  if (BlockedStop(robot, track, state.committed_side, frame, config)) return true;
  if (!state.blocked) return false;
  const Vec2 person = track.position_estimate;
  if (frame.Along(person) <= frame.Along(robot.pose.position())) return false;
  const double lane = SideLaneLateral(state.committed_side, frame, config);
  return std::abs(frame.Lateral(person) - lane) <
         world.robot_radius + world.person_radius + kLaneClearMargin;
}

}  // namespace

std::string_view ToString(PlannerMode mode) {
  switch (mode) {
    case PlannerMode::kFreeNavigation:
      return "free";
    case PlannerMode::kStep:
      return "step";
    case PlannerMode::kSlideRotate:
      return "slide_rotate";
  }
  return "unknown";
}

std::string_view ToString(Side side) {
  switch (side) {
    case Side::kNone:
      return "none";
    case Side::kLeft:
      return "left";
    case Side::kRight:
      return "right";
  }
  return "unknown";
}

int SideSign(Side side) {
  switch (side) {
    case Side::kLeft:
      return 1;
    case Side::kRight:
      return -1;
    case Side::kNone:
      break;
  }
  return 0;
}

void PlannerConfig::Validate(double omega_max, double robot_radius) const {
  if (!(step_trigger_distance > 0.0 && rotate_time_threshold > 0.0 &&
        rotate_angle >= 0.0 && slide_lookahead > 0.0 && nominal_speed > 0.0 &&
        step_speed_factor > 0.0 && rotate_back_clearance >= 0.0 &&
        closing_window > 0.0)) {
    throw std::invalid_argument("planner: invalid parameters");
  }
  if (rotate_time_threshold < rotate_angle / omega_max) {
    throw std::invalid_argument(
        "planner: rotation cannot finish within the time threshold");
  }
  if (wall_offset < robot_radius) {
    throw std::invalid_argument("planner: wall_offset below robot radius");
  }
}

bool PersonOnWay(const RobotState& robot, const TrackedPerson& track,
                 const Vec2& goal, const CorridorWorld& world,
                 const PlannerConfig& config) {
  const Vec2 robot_pos = robot.pose.position();
  const CorridorFrame frame = CorridorFrame::Toward(world, robot_pos, goal);
  const Vec2 person = track.position_estimate;
  if (!frame.Contains(person)) return false;
  const double s_robot = frame.Along(robot_pos);
  const double s_goal = frame.Along(goal);
  const double s_person = frame.Along(person);
  if (!(s_person > s_robot && s_person < s_goal)) return false;
  if (Distance(person, robot_pos) < config.step_trigger_distance) return true;
  const auto closing = RelativeClosingSpeed(track, config.closing_window);
  return closing.has_value() && *closing > 0.0;
}

Side ChooseStepSide(const RobotState& robot, const TrackedPerson& track,
                    const CorridorFrame& frame, const PlannerConfig& config) {
  const double person_lateral = frame.Lateral(track.position_estimate);
  if (person_lateral > config.side_tie_band) return Side::kRight;
  if (person_lateral < -config.side_tie_band) return Side::kLeft;
  const double robot_lateral = frame.Lateral(robot.pose.position());
  if (robot_lateral > kCenteredRobot) return Side::kLeft;
  return Side::kRight;
}

double SideLaneLateral(Side side, const CorridorFrame& frame,
                       const PlannerConfig& config) {
  return SideSign(side) * (frame.HalfWidth() - config.wall_offset);
}

Path StepPhasePath(const RobotState& robot, Side side,
                   const CorridorFrame& frame, const PlannerConfig& config) {
  const Vec2 position = robot.pose.position();
  const double lane = SideLaneLateral(side, frame, config);
  const double lateral_gap = std::abs(lane - frame.Lateral(position));
  // 45 degree diagonal: advance as much as the remaining lateral gap.
  const double along =
      std::min(frame.Along(position) + lateral_gap, frame.EndAlong());
  const Pose2 waypoint(frame.PointAt(along, lane), frame.AxisHeading());
  const double forward = config.step_speed_factor * config.nominal_speed;
  return Path::TwoPoint(robot.pose, waypoint, forward * std::sqrt(2.0));
}

Vec2 SlideGoal(const RobotState& robot, Side side, const CorridorFrame& frame,
               const PlannerConfig& config) {
  const Vec2 position = robot.pose.position();
  // Without sliding the robot only settles onto its lane and waits there.
  if (!config.slide_enabled) {
    return frame.PointAt(frame.Along(position),
                         SideLaneLateral(side, frame, config));
  }
  const double along =
      std::clamp(frame.Along(position) + config.slide_lookahead,
                 frame.StartAlong(), frame.EndAlong());
  return frame.PointAt(along, SideLaneLateral(side, frame, config));
}

std::optional<double> CrossingTime(double distance, double closing_speed,
                                   double epsilon) {
  if (!std::isfinite(distance) || distance < 0.0) {
    throw std::invalid_argument("CrossingTime: distance must be finite and >= 0");
  }
  if (!(closing_speed > epsilon)) return std::nullopt;
  return distance / closing_speed;
}

RotationDecision RotateDecision(std::optional<double> t_cross,
                                int person_side_sign, bool already_rotating,
                                const CorridorFrame& frame,
                                const PlannerConfig& config) {
  const double axis = frame.AxisHeading();
  if (!config.rotation_enabled) return {axis, false};
  const bool rotating =
      already_rotating ||
      (t_cross.has_value() && *t_cross <= config.rotate_time_threshold);
  if (!rotating) return {axis, false};
  const int sign = person_side_sign < 0 ? -1 : 1;
  return {NormalizeAngle(axis + sign * config.rotate_angle), true};
}

bool RotateBack(const RobotState& robot, const TrackedPerson& track,
                const CorridorFrame& frame, const PlannerConfig& config) {
  return frame.Along(track.position_estimate) <=
         frame.Along(robot.pose.position()) - config.rotate_back_clearance;
}

bool BlockedStop(const RobotState& robot, const TrackedPerson& track,
                 Side committed_side, const CorridorFrame& frame,
                 const PlannerConfig& config) {
  const Vec2 robot_pos = robot.pose.position();
  const Vec2 person = track.position_estimate;
  if (frame.Along(person) <= frame.Along(robot_pos)) return false;
  if (Distance(person, robot_pos) >= config.blocked_stop_distance) return false;
  return SideSign(committed_side) * frame.Lateral(person) > 0.0;
}

PlanResult Plan(const RobotState& robot, std::span<const TrackedPerson> tracks,
                const Vec2& goal, const CorridorWorld& world,
                const PlannerConfig& config, const PlannerState& state) {
  const Vec2 position = robot.pose.position();
  const CorridorFrame frame = CorridorFrame::Toward(world, position, goal);
  const double axis = frame.AxisHeading();

  PlannerState next = state;
  next.last_t_cross.reset();

  const TrackedPerson* target = FindTrack(tracks, next.target_person_id);
  if (next.mode == PlannerMode::kFreeNavigation) {
    double best = std::numeric_limits<double>::infinity();
    const TrackedPerson* candidate = nullptr;
    for (const TrackedPerson& track : tracks) {
      const double d = Distance(track.position_estimate, position);
      if (d < config.step_trigger_distance && d < best &&
          PersonOnWay(robot, track, goal, world, config)) {
        best = d;
        candidate = &track;
      }
    }
    if (candidate != nullptr) {
      next.mode = PlannerMode::kStep;
      next.committed_side = ChooseStepSide(robot, *candidate, frame, config);
      next.target_person_id = candidate->id;
      next.rotating = false;
      target = candidate;
    }
  } else if (target == nullptr) {
    // Track lost for longer than the tracker's drop timeout.
    next = EndEpisode(next);
  }

  if (next.mode == PlannerMode::kStep) {
    const double lane = SideLaneLateral(next.committed_side, frame, config);
    if (std::abs(frame.Lateral(position) - lane) <=
        config.step_lateral_tolerance) {
      next.mode = PlannerMode::kSlideRotate;
    }
  }
  if (next.mode == PlannerMode::kSlideRotate &&
      RotateBack(robot, *target, frame, config)) {
    next = EndEpisode(next);
  }

  switch (next.mode) {
    case PlannerMode::kFreeNavigation:
      next.target_heading = axis;
      return {Path::TwoPoint(robot.pose, Pose2(goal, axis), config.nominal_speed),
              next};
    case PlannerMode::kStep:
      next.target_heading = axis;
      next.blocked = Blocked(robot, *target, next, frame, world, config);
      if (next.blocked) {
        return {LaneHoldPath(robot, next.committed_side, axis, frame, config),
                next};
      }
      return {StepPhasePath(robot, next.committed_side, frame, config), next};
    case PlannerMode::kSlideRotate:
      break;
  }

  const auto closing = RelativeClosingSpeed(*target, config.closing_window);
  if (closing) {
    next.last_t_cross = CrossingTime(Distance(target->position_estimate, position),
                                     *closing, config.min_closing_speed);
  }
  const RotationDecision decision =
      RotateDecision(next.last_t_cross, -SideSign(next.committed_side),
                     next.rotating, frame, config);
  next.rotating = decision.rotating;
  next.target_heading = decision.target_heading;

  next.blocked = Blocked(robot, *target, next, frame, world, config);
  if (next.blocked) {
    return {LaneHoldPath(robot, next.committed_side, decision.target_heading,
                         frame, config),
            next};
  }
  if (!config.slide_enabled) {
    return {LaneHoldPath(robot, next.committed_side, decision.target_heading,
                         frame, config),
            next};
  }
  const Pose2 sub_goal(SlideGoal(robot, next.committed_side, frame, config),
                       decision.target_heading);
  return {Path::TwoPoint(robot.pose, sub_goal, config.nominal_speed), next};
}

}  // namespace crossing
