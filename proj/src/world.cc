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

#include "crossing/world.h"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace crossing {

void KinematicLimits::Validate() const {
  if (!(v_max > 0.0 && omega_max > 0.0 && a_max > 0.0 && alpha_max > 0.0)) {
    throw std::invalid_argument("KinematicLimits: all limits must be > 0");
  }
}

Vec2 Aisle::PointAt(double along, double lateral) const {
  const Vec2 left{-axis.y, axis.x};
  return origin + axis * along + left * lateral;
}

bool Aisle::Contains(const Vec2& p, double margin) const {
  const double s = Along(p);
  const double l = Lateral(p);
  return s >= -margin && s <= length + margin &&
         std::abs(l) <= width / 2.0 + margin;
}

Segment Aisle::LeftWall() const {
  return {PointAt(0.0, width / 2.0), PointAt(length, width / 2.0)};
}

Segment Aisle::RightWall() const {
  return {PointAt(0.0, -width / 2.0), PointAt(length, -width / 2.0)};
}

CorridorWorld CorridorWorld::TwoAisleStore(double aisle_length,
                                           double aisle_width,
                                           double shelf_thickness) {
  CorridorWorld world;
  world.aisles.push_back(Aisle{{0.0, 0.0}, {1.0, 0.0}, aisle_length, aisle_width});
  world.aisles.push_back(Aisle{{0.0, aisle_width + shelf_thickness},
                               {1.0, 0.0},
                               aisle_length,
                               aisle_width});
  world.RebuildWalls();
  return world;
}

void CorridorWorld::RebuildWalls() {
  walls.clear();
  for (const Aisle& aisle : aisles) {
    walls.push_back(aisle.LeftWall());
    walls.push_back(aisle.RightWall());
  }
}

void CorridorWorld::Validate() const {
  if (aisles.empty()) throw std::invalid_argument("world: no aisles");
  if (walls.empty()) throw std::invalid_argument("world: no walls");
  if (!(robot_radius > 0.0) || !(person_radius > 0.0)) {
    throw std::invalid_argument("world: radii must be > 0");
  }
  for (const Aisle& aisle : aisles) {
    if (std::abs(aisle.axis.Norm() - 1.0) > 1e-9) {
      throw std::invalid_argument("world: aisle axis must be a unit vector");
    }
    if (!(aisle.length > 0.0)) {
      throw std::invalid_argument("world: aisle length must be > 0");
    }
    if (!(aisle.width > 2.0 * robot_radius)) {
      throw std::invalid_argument("world: aisle width " +
                                  std::to_string(aisle.width) +
                                  " does not fit the robot");
    }
  }
  for (const Vec2& g : goals) {
    if (!Contains(g)) throw std::invalid_argument("world: goal outside aisles");
  }
}

std::optional<std::size_t> CorridorWorld::AisleIndexAt(const Vec2& p) const {
  for (std::size_t i = 0; i < aisles.size(); ++i) {
    if (aisles[i].Contains(p)) return i;
  }
  return std::nullopt;
}

double PointToWallDistance(const Vec2& p, const CorridorWorld& world) {
  if (world.walls.empty()) {
    throw std::invalid_argument("PointToWallDistance: world has no walls");
  }
  if (!p.IsFinite()) {
    throw std::invalid_argument("PointToWallDistance: non-finite point");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const Segment& wall : world.walls) {
    best = std::min(best, PointToSegmentDistance(p, wall));
  }
  return best;
}

CorridorFrame::CorridorFrame(const Aisle& aisle, int direction)
    : aisle_(aisle), direction_(direction >= 0 ? 1 : -1) {}

CorridorFrame CorridorFrame::Toward(const CorridorWorld& world,
                                    const Vec2& position, const Vec2& goal) {
  const auto index = world.AisleIndexAt(position);
  if (!index) {
    throw std::invalid_argument("CorridorFrame: position outside every aisle");
  }
  const Aisle& aisle = world.aisles[*index];
  const int direction = Dot(goal - position, aisle.axis) >= 0.0 ? 1 : -1;
  return CorridorFrame(aisle, direction);
}

double CorridorFrame::Along(const Vec2& p) const {
  return direction_ * aisle_.Along(p);
}

double CorridorFrame::Lateral(const Vec2& p) const {
  return direction_ * aisle_.Lateral(p);
}

Vec2 CorridorFrame::PointAt(double along, double lateral) const {
  return aisle_.PointAt(direction_ * along, direction_ * lateral);
}

double CorridorFrame::AxisHeading() const {
  return NormalizeAngle(aisle_.AxisHeading() + (direction_ > 0 ? 0.0 : kPi));
}

double CorridorFrame::StartAlong() const {
  return direction_ > 0 ? 0.0 : -aisle_.length;
}

double CorridorFrame::EndAlong() const {
  return direction_ > 0 ? aisle_.length : 0.0;
}

void SimClock::Validate() const {
  if (!(dt_physics > 0.0) || !(planner_period > 0.0)) {
    throw std::invalid_argument("SimClock: periods must be > 0");
  }
  const double ratio = planner_period / dt_physics;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 || std::round(ratio) < 1.0) {
    throw std::invalid_argument(
        "SimClock: dt_physics must divide planner_period exactly");
  }
}

int SimClock::SubstepsPerPlan() const {
  return static_cast<int>(std::lround(planner_period / dt_physics));
}

Path::Path(const Pose2& current, std::vector<PathPoint> points,
           double max_speed)
    : points_(std::move(points)), max_speed_(max_speed) {
  if (points_.empty()) throw std::invalid_argument("Path: empty");
  const Pose2& first = points_.front().pose;
  if (std::abs(first.x - current.x) > kStartTolerance ||
      std::abs(first.y - current.y) > kStartTolerance ||
      std::abs(NormalizeAngle(first.heading - current.heading)) >
          kStartTolerance) {
    throw std::invalid_argument("Path: first point is not the current pose");
  }
  if (!(max_speed_ >= 0.0)) {
    throw std::invalid_argument("Path: max_speed must be >= 0");
  }
}

Path Path::TwoPoint(const Pose2& current, const Pose2& target,
                    double max_speed) {
  return Path(current, {PathPoint{current}, PathPoint{target}}, max_speed);
}

}  // namespace crossing
