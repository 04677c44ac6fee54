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

#include "crossing/pedestrian.h"

#include <algorithm>
#include <iostream>
#include <stdexcept>
#include <string>

namespace crossing {

namespace {

constexpr double kTiny = 1e-12;

Vec2 CorridorAxisAt(const CorridorWorld& world, const Vec2& p) {
  if (const auto index = world.AisleIndexAt(p)) return world.aisles[*index].axis;
  return {1.0, 0.0};
}

// Pushes the walker out of any wall it overlaps and removes the velocity
// component pointing into that wall.
void ProjectOutOfWalls(PedestrianState& ped, const CorridorWorld& world) {
  for (const Segment& wall : world.walls) {
    const Vec2 closest = ClosestPointOnSegment(ped.position, wall);
    const Vec2 away = ped.position - closest;
    const double d = away.Norm();
    if (d >= ped.radius) continue;
    Vec2 normal;
    if (d > kTiny) {
      normal = away / d;
    } else {
      const Vec2 along = wall.b - wall.a;
      normal = Vec2{-along.y, along.x} / along.Norm();
    }
    ped.position = closest + normal * ped.radius;
    const double into = Dot(ped.velocity, normal);
    if (into < 0.0) ped.velocity -= normal * into;
    ++ped.projection_fallbacks;
  }
}

Vec2 DesiredVelocity(const PedestrianState& ped, const CorridorWorld& world,
                     const SocialForceParams& params) {
  const Vec2 to_goal = ped.goal - ped.position;
  const double d = to_goal.Norm();
  if (d < params.arrival_radius) return {};
  const auto index = world.AisleIndexAt(ped.position);
  if (index && world.AisleIndexAt(ped.goal) == index) {
    const Vec2 axis = world.aisles[*index].axis;
    const double along = Dot(to_goal, axis);
    if (std::abs(along) > params.lane_keep_distance) {
      return axis * (along > 0.0 ? ped.desired_speed : -ped.desired_speed);
    }
  }
  return to_goal * (ped.desired_speed / d);
}

}  // namespace

std::string_view ToString(Behaviour b) {
  switch (b) {
    case Behaviour::kSocialForce:
      return "social_force";
    case Behaviour::kScriptedWaypoints:
      return "scripted_waypoints";
    case Behaviour::kSameSideBlocker:
      return "same_side_blocker";
  }
  return "unknown";
}

Behaviour ParseBehaviour(std::string_view name) {
  if (name == "social_force") return Behaviour::kSocialForce;
  if (name == "scripted_waypoints") return Behaviour::kScriptedWaypoints;
  if (name == "same_side_blocker") return Behaviour::kSameSideBlocker;
  throw std::invalid_argument("unknown pedestrian behaviour: " +
                              std::string(name));
}

void PedestrianState::Validate() const {
  if (!(desired_speed > 0.0 && desired_speed <= 2.5)) {
    throw std::invalid_argument("pedestrian: desired_speed must be in (0, 2.5]");
  }
  if (!(radius > 0.0)) throw std::invalid_argument("pedestrian: radius <= 0");
  if (behaviour == Behaviour::kScriptedWaypoints) {
    if (waypoints.empty()) {
      throw std::invalid_argument("pedestrian: scripted walker needs waypoints");
    }
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
      if (!(waypoints[i].time > waypoints[i - 1].time)) {
        throw std::invalid_argument(
            "pedestrian: waypoint times must be increasing");
      }
    }
  }
}

void SocialForceParams::Validate() const {
  if (!(tau > 0.0 && b > 0.0 && wall_b > 0.0 && a >= 0.0 && wall_a >= 0.0 &&
        anticipation_horizon >= 0.0 && speed_cap_factor >= 1.0 && lane_keep_distance >= 0.0)) {
    throw std::invalid_argument("social force: invalid parameters");
  }
}

Vec2 RepulsiveAcceleration(const PedestrianState& ped, const RobotState& robot,
                           const CorridorWorld& world,
                           const SocialForceParams& params,
                           int* coincidence_warnings) {
  Vec2 accel;

  const Vec2 rel_pos = ped.position - robot.pose.position();
  const Vec2 rel_vel = ped.velocity - robot.twist.linear();
  double t_star = 0.0;
  const double rel_speed2 = rel_vel.SquaredNorm();
  if (rel_speed2 > kTiny) {
    t_star = std::clamp(-Dot(rel_pos, rel_vel) / rel_speed2, 0.0,
                        params.anticipation_horizon);
  }
  const Vec2 approach = rel_pos + rel_vel * t_star;
  const double d = approach.Norm();
  Vec2 direction;
  if (d > kTiny) {
    direction = approach / d;
  } else if (rel_pos.Norm() > kTiny) {
    direction = rel_pos / rel_pos.Norm();
  } else {
    // Coincident centers: push back along the corridor axis.
    direction = -CorridorAxisAt(world, ped.position);
    std::clog << "warning: pedestrian and robot centers coincide\n";
    if (coincidence_warnings != nullptr) ++*coincidence_warnings;
  }
  const double r_sum = ped.radius + world.robot_radius;
  accel += direction * (params.a * std::exp((r_sum - d) / params.b));

  for (const Segment& wall : world.walls) {
    const Vec2 closest = ClosestPointOnSegment(ped.position, wall);
    const Vec2 away = ped.position - closest;
    const double dw = away.Norm();
    if (dw > params.wall_cutoff || dw <= kTiny) continue;
    accel += (away / dw) *
             (params.wall_a * std::exp((ped.radius - dw) / params.wall_b));
  }
  return accel;
}

PedestrianState SocialForceStep(const PedestrianState& ped,
                                const RobotState& robot,
                                const CorridorWorld& world,
                                const SocialForceParams& params, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("SocialForceStep: dt <= 0");
  PedestrianState next = ped;
  const Vec2 repulsion = RepulsiveAcceleration(ped, robot, world, params,
                                               &next.coincidence_warnings);
  const Vec2 desired = DesiredVelocity(ped, world, params);

  // Exact solution of v' = (v_d - v) / tau + F over the step for constant F.
  const double decay = std::exp(-dt / params.tau);
  Vec2 v = desired + (ped.velocity - desired) * decay +
           repulsion * (params.tau * (1.0 - decay));
  const double cap = params.speed_cap_factor * ped.desired_speed;
  const double speed = v.Norm();
  if (speed > cap) v = v * (cap / speed);

  next.velocity = v;
  next.position = ped.position + v * dt;
  next.elapsed = ped.elapsed + dt;
  ProjectOutOfWalls(next, world);
  return next;
}

namespace {

PedestrianState WaypointStep(const PedestrianState& ped, double dt) {
  PedestrianState next = ped;
  next.elapsed = ped.elapsed + dt;
  const auto& wps = ped.waypoints;
  const double t = next.elapsed;
  if (t <= wps.front().time) {
    next.position = wps.front().position;
    next.velocity = {};
    return next;
  }
  if (t >= wps.back().time) {
    next.position = wps.back().position;
    next.velocity = {};
    return next;
  }
  const auto upper = std::upper_bound(
      wps.begin(), wps.end(), t,
      [](double time, const TimedWaypoint& w) { return time < w.time; });
  const TimedWaypoint& b = *upper;
  const TimedWaypoint& a = *(upper - 1);
  const double span = b.time - a.time;
  const double s = (t - a.time) / span;
  next.position = a.position + (b.position - a.position) * s;
  next.velocity = (b.position - a.position) / span;
  return next;
}

PedestrianState BlockerStep(const PedestrianState& ped,
                            const RobotState& robot,
                            const CorridorWorld& world,
                            const BlockerParams& params, double dt) {
  PedestrianState next = ped;
  next.elapsed = ped.elapsed + dt;
  next.phase_elapsed = ped.phase_elapsed + dt;

  const auto index = world.AisleIndexAt(ped.position);
  if (!index) {
    next.velocity = {};
    return next;
  }
  const Aisle& aisle = world.aisles[*index];
  const double free_lateral = aisle.width / 2.0 - ped.radius - params.wall_margin;
  const double lateral = aisle.Lateral(ped.position);
  const double robot_lateral = aisle.Lateral(robot.pose.position());
  const double to_goal = aisle.Along(ped.goal) - aisle.Along(ped.position);
  const double forward_sign = to_goal >= 0.0 ? 1.0 : -1.0;
  const bool arrived = std::abs(to_goal) < 0.05;

  double lateral_target = lateral;
  double forward_speed = 0.0;
  switch (ped.blocker_phase) {
    case BlockerPhase::kMirror:
      if (Distance(ped.position, robot.pose.position()) <=
          params.commit_distance) {
        next.blocker_phase = BlockerPhase::kDwell;
        next.phase_elapsed = 0.0;
        break;
      }
      lateral_target = std::clamp(robot_lateral, -free_lateral, free_lateral);
      forward_speed = ped.desired_speed;
      break;
    case BlockerPhase::kDwell:
      if (ped.phase_elapsed >= params.dwell_time) {
        next.blocker_phase = BlockerPhase::kPass;
        next.phase_elapsed = 0.0;
        next.pass_lateral = robot_lateral > 0.0 ? -free_lateral : free_lateral;
      }
      break;
    case BlockerPhase::kPass:
      lateral_target = ped.pass_lateral;
      forward_speed = std::abs(lateral_target - lateral) > params.wall_margin
                          ? params.pass_forward_factor * ped.desired_speed
                          : ped.desired_speed;
      break;
  }
  if (arrived) forward_speed = 0.0;

  const double lateral_speed =
      std::clamp(params.lateral_gain * (lateral_target - lateral),
                 -params.lateral_speed, params.lateral_speed);
  const Vec2 left{-aisle.axis.y, aisle.axis.x};
  next.velocity = aisle.axis * (forward_sign * forward_speed) + left * lateral_speed;
  next.position = ped.position + next.velocity * dt;
  ProjectOutOfWalls(next, world);
  return next;
}

}  // namespace

PedestrianState ScriptedStep(const PedestrianState& ped,
                             const RobotState& robot,
                             const CorridorWorld& world,
                             const BlockerParams& params, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("ScriptedStep: dt <= 0");
  switch (ped.behaviour) {
    case Behaviour::kScriptedWaypoints:
      return WaypointStep(ped, dt);
    case Behaviour::kSameSideBlocker:
      return BlockerStep(ped, robot, world, params, dt);
    case Behaviour::kSocialForce:
      break;
  }
  throw std::invalid_argument("ScriptedStep: walker is not scripted");
}

PedestrianState StepPedestrian(const PedestrianState& ped,
                               const RobotState& robot,
                               const CorridorWorld& world,
                               const SocialForceParams& social,
                               const BlockerParams& blocker, double dt) {
  if (ped.behaviour == Behaviour::kSocialForce) {
    return SocialForceStep(ped, robot, world, social, dt);
  }
  return ScriptedStep(ped, robot, world, blocker, dt);
}

}  // namespace crossing
