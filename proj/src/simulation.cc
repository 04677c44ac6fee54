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

#include "crossing/simulation.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "crossing/kinematics.h"
#include "crossing/navigator.h"
#include "crossing/pedestrian.h"
#include "crossing/perception.h"

namespace crossing {

namespace {

std::vector<PedestrianState> SpawnPedestrians(const Scenario& sc) {
  std::vector<PedestrianState> peds;
  for (const PedestrianSpec& spec : sc.pedestrians) {
    PedestrianState p;
    p.behaviour = spec.behaviour;
    p.goal = spec.goal;
    p.desired_speed = spec.speed;
    p.radius = sc.world.person_radius;
    p.waypoints = spec.waypoints;
    if (spec.behaviour == Behaviour::kScriptedWaypoints) {
      p.position = spec.waypoints.front().position;
    } else {
      p.position = spec.start;
      const Vec2 to_goal = spec.goal - spec.start;
      // Walkers enter the scene already at their walking speed.
      if (to_goal.Norm() > 0.0) p.velocity = to_goal * (spec.speed / to_goal.Norm());
    }
    peds.push_back(std::move(p));
  }
  return peds;
}

const TrackedPerson* ReportedTrack(std::span<const TrackedPerson> tracks,
                                   const PlannerState& state,
                                   const Vec2& robot_position) {
  if (state.target_person_id) {
    for (const TrackedPerson& t : tracks) {
      if (t.id == *state.target_person_id) return &t;
    }
  }
  const TrackedPerson* nearest = nullptr;
  double best = std::numeric_limits<double>::infinity();
  for (const TrackedPerson& t : tracks) {
    const double d = Distance(t.position_estimate, robot_position);
    if (d < best) {
      best = d;
      nearest = &t;
    }
  }
  return nearest;
}

}  // namespace

std::string_view ToString(Outcome outcome) {
  return outcome == Outcome::kGoalReached ? "goal_reached" : "timeout";
}

RunResult RunScenario(const Scenario& input) {
  const Scenario sc = ResolveScenario(input);
  const double dt = sc.clock.dt_physics;
  const int substeps = sc.clock.SubstepsPerPlan();
  const CorridorFrame frame =
      CorridorFrame::Toward(sc.world, sc.robot_start.position(), sc.robot_goal);
  const Pose2 goal_pose(sc.robot_goal, frame.AxisHeading());

  RunResult result;
  SimTrace& trace = result.trace;
  trace.world = sc.world;
  trace.limits = sc.limits;
  trace.dt_physics = dt;
  trace.robot_start = sc.robot_start;
  trace.robot_goal = sc.robot_goal;

  RobotState robot{sc.robot_start, {}, sc.limits};
  std::vector<PedestrianState> peds = SpawnPedestrians(sc);
  for (const PedestrianState& p : peds) trace.pedestrian_radii.push_back(p.radius);

  PeopleTracker tracker(sc.tracker, sc.seed);
  Navigator navigator(sc.navigator);
  // Wobble bookkeeping: controller limits and its sway-free velocity.
  const KinematicLimits steady_limits =
      sc.wobble.enabled() ? WobbleHeadroom(sc.wobble, sc.limits) : sc.limits;
  Twist2 steady_twist;
  Vec2 sway_offset;        // accumulated sway displacement, world frame
  double sway_gain = 0.0;  // fades in from rest
  PlannerState planner_state;
  planner_state.target_heading = frame.AxisHeading();
  Path path = Path::TwoPoint(robot.pose, goal_pose, sc.planner.nominal_speed);

  const auto max_ticks =
      static_cast<std::int64_t>(std::ceil(sc.duration_limit / dt - 1e-9));
  std::vector<Obstacle> obstacles;
  for (std::int64_t tick = 0;; ++tick) {
    TraceRow row;
    row.tick = tick;
    row.time = static_cast<double>(tick) * dt;

    // The controller and the goal check work on the sway-free pose.
    RobotState steady = robot;
    steady.pose = Pose2(robot.pose.position() - sway_offset, robot.pose.heading);
    const bool at_goal =
        planner_state.mode == PlannerMode::kFreeNavigation &&
        GoalReached(Path::TwoPoint(steady.pose, goal_pose, 0.0), steady,
                    sc.navigator);
    const bool out_of_time = tick >= max_ticks;

    if (!at_goal && !out_of_time && tick % substeps == 0) {
      const std::vector<Detection> detections =
          Sense(sc.world, robot, peds, sc.tracker, sc.seed, tick);
      tracker.Update(detections, sc.clock.planner_period, robot.pose.position());
      const PlannerState previous_mode = planner_state;
      PlanResult plan = Plan(robot, tracker.tracks(), sc.robot_goal, sc.world,
                             sc.planner, planner_state);
      if (plan.state.mode != previous_mode.mode) navigator.Reset();
      path = std::move(plan.path);
      planner_state = plan.state;
    }

    row.robot_pose = robot.pose;
    row.robot_twist = robot.twist;
    row.mode = planner_state.mode;
    row.rotating = planner_state.rotating;
    row.side = planner_state.committed_side;
    row.target_heading = planner_state.target_heading;
    row.t_cross = planner_state.last_t_cross;
    row.blocked = planner_state.blocked;
    row.track_count = static_cast<int>(tracker.tracks().size());
    if (const TrackedPerson* t =
            ReportedTrack(tracker.tracks(), planner_state, robot.pose.position())) {
      row.track = *t;
      row.track->range_history.clear();
    }
    row.min_clearance = std::numeric_limits<double>::infinity();
    for (const PedestrianState& p : peds) {
      row.pedestrian_positions.push_back(p.position);
      row.pedestrian_velocities.push_back(p.velocity);
      row.min_clearance =
          std::min(row.min_clearance, Distance(p.position, robot.pose.position()) -
                                          sc.world.robot_radius - p.radius);
    }

    if (at_goal || out_of_time) {
      trace.goal_reached = at_goal;
      trace.rows.push_back(std::move(row));
      break;
    }

    obstacles.clear();
    for (const PedestrianState& p : peds) obstacles.push_back({p.position, p.radius});
    Twist2 command;
    if (!sc.wobble.enabled()) {
      command = navigator.Command(path, robot, obstacles, dt);
    } else {
      // The controller sees the sway-free velocity and reduced limits; the
      // sway then goes on top unclamped, which the headroom makes safe.
      steady.twist = {steady_twist.vx, steady_twist.vy, robot.twist.omega};
      steady.limits = steady_limits;
      command = navigator.Command(path, steady, obstacles, dt);
      const double end_heading = robot.pose.heading + command.omega * dt;
      Twist2 world = BodyToWorld(command, end_heading);
      steady_twist = world;
      // Fades back in over one period after an emergency stop.
      sway_gain = navigator.emergency_stop()
                      ? 0.0
                      : std::min(1.0, sway_gain + dt / sc.wobble.period);
      const Twist2 sway =
          BodyToWorld(WobbleVelocity(sc.wobble, row.time), end_heading);
      world.vx += sway_gain * sway.vx;
      world.vy += sway_gain * sway.vy;
      sway_offset += Vec2{sway_gain * sway.vx, sway_gain * sway.vy} * dt;
      command = WorldToBody(world, end_heading);
    }
    row.command = command;
    row.emergency_stop = navigator.emergency_stop();
    trace.rows.push_back(std::move(row));

    robot = Integrate(robot, command, dt);
    for (PedestrianState& p : peds) {
      p = StepPedestrian(p, robot, sc.world, sc.social_force, sc.blocker, dt);
    }
  }

  for (const PedestrianState& p : peds) {
    result.projection_fallbacks += p.projection_fallbacks;
  }
  result.metrics = ComputeMetrics(trace);
  return result;
}

CrossingMetrics ComputeMetrics(const SimTrace& trace) {
  CrossingMetrics m;
  if (trace.rows.empty()) return m;
  const double dt = trace.dt_physics;
  m.outcome = trace.goal_reached ? Outcome::kGoalReached : Outcome::kTimeout;
  m.traversal_time = trace.rows.back().time;
  const CorridorFrame frame = CorridorFrame::Toward(
      trace.world, trace.robot_start.position(), trace.robot_goal);

  m.min_clearance = std::numeric_limits<double>::infinity();
  double closest = std::numeric_limits<double>::infinity();
  const KinematicLimits& lim = trace.limits;
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    const TraceRow& row = trace.rows[i];
    const Vec2 robot = row.robot_pose.position();
    // Recomputed from geometry so hand-built traces are judged the same way.
    for (std::size_t p = 0; p < row.pedestrian_positions.size(); ++p) {
      const double clearance = Distance(row.pedestrian_positions[p], robot) -
                               trace.world.robot_radius - trace.pedestrian_radii[p];
      m.min_clearance = std::min(m.min_clearance, clearance);
      if (clearance < 0.0) m.collision = true;
    }

    if (!row.pedestrian_positions.empty()) {
      const Vec2 person = row.pedestrian_positions.front();
      const double d = Distance(person, robot);
      if (d < closest) {
        closest = d;
        m.crossing_tick = row.tick;
      }
      const double ahead = frame.Along(person) - frame.Along(robot);
      if (row.robot_twist.Speed() < kStoppedSpeed && ahead >= 0.0 &&
          ahead <= kCrossingWindow && row.mode != PlannerMode::kFreeNavigation) {
        m.robot_stopped_during_crossing = true;
      }
      if (row.mode == PlannerMode::kStep && !m.step_performed) {
        m.step_performed = true;
        m.step_trigger_distance = d;
      }
    } else if (row.mode == PlannerMode::kStep) {
      m.step_performed = true;
    }

    if (row.rotating && !m.rotation_trigger_tick) m.rotation_trigger_tick = row.tick;
    if (m.rotation_trigger_tick && !m.rotation_complete_tick &&
        std::abs(NormalizeAngle(row.robot_pose.heading - row.target_heading)) <=
            kRotationCompleteTolerance) {
      m.rotation_complete_tick = row.tick;
    }

    if (row.robot_twist.Speed() > lim.v_max + kLimitSlack ||
        std::abs(row.robot_twist.omega) > lim.omega_max + kLimitSlack) {
      ++m.limit_violations;
    }
    if (i > 0) {
      const TraceRow& prev = trace.rows[i - 1];
      const double dv = std::abs(row.robot_twist.Speed() - prev.robot_twist.Speed());
      const double dw = std::abs(row.robot_twist.omega - prev.robot_twist.omega);
      const bool hard_stop = prev.emergency_stop;
      if (!hard_stop && (dv > lim.a_max * dt + 1e-9 ||
                         dw > lim.alpha_max * dt + 1e-9)) {
        ++m.limit_violations;
      }
    }

    if (PointToWallDistance(robot, trace.world) < trace.world.robot_radius - 1e-9) {
      ++m.wall_penetrations;
    }
    for (std::size_t p = 0; p < row.pedestrian_positions.size(); ++p) {
      if (PointToWallDistance(row.pedestrian_positions[p], trace.world) <
          trace.pedestrian_radii[p] - 1e-9) {
        ++m.wall_penetrations;
      }
    }
  }
  if (m.crossing_tick && m.rotation_complete_tick) {
    m.rotation_lead =
        static_cast<double>(*m.crossing_tick - *m.rotation_complete_tick) * dt;
  }
  return m;
}

}  // namespace crossing
