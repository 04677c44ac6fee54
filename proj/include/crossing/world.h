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

#ifndef CROSSING_WORLD_H_
#define CROSSING_WORLD_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "crossing/geometry.h"

namespace crossing {

// Base limits of the omni-directional platform. Velocity limits are the
// hardware values; the acceleration limits are simulation parameters.
struct KinematicLimits {
  double v_max = 1.5;      // m/s
  double omega_max = 1.0;  // rad/s
  double a_max = 1.0;      // m/s^2
  double alpha_max = 3.0;  // rad/s^2

  void Validate() const;
};

// A straight aisle: a rectangle spanned by `axis` (unit) from `origin` over
// `length`, and `width` across, centered on the axis line.
struct Aisle {
  Vec2 origin;
  Vec2 axis{1.0, 0.0};
  double length = 8.0;
  double width = 0.95;

  double Along(const Vec2& p) const { return Dot(p - origin, axis); }
  // Positive to the left of `axis`.
  double Lateral(const Vec2& p) const { return Cross(axis, p - origin); }
  Vec2 PointAt(double along, double lateral) const;
  bool Contains(const Vec2& p, double margin = 1e-9) const;
  double AxisHeading() const { return std::atan2(axis.y, axis.x); }
  // The two boundary walls, left one first.
  Segment LeftWall() const;
  Segment RightWall() const;
};

struct CorridorWorld {
  std::vector<Aisle> aisles;
  std::vector<Segment> walls;
  double robot_radius = 0.27;
  double person_radius = 0.18;
  std::vector<Vec2> goals;

  // Two parallel long aisles of `aisle_length` x `aisle_width` separated by a
  // shelf of `shelf_thickness`. The crossing aisle has its centerline on the
  // x axis starting at the origin; the second aisle lies at +y.
  static CorridorWorld TwoAisleStore(double aisle_length = 8.0,
                                     double aisle_width = 0.95,
                                     double shelf_thickness = 1.05);

  // Builds the walls of every aisle (two per aisle).
  void RebuildWalls();
  void Validate() const;

  // First aisle containing `p`, if any.
  std::optional<std::size_t> AisleIndexAt(const Vec2& p) const;
  bool Contains(const Vec2& p) const { return AisleIndexAt(p).has_value(); }
};

// Euclidean distance from `p` to the nearest wall segment. Throws when the
// world has no walls.
double PointToWallDistance(const Vec2& p, const CorridorWorld& world);

// An aisle seen from an agent travelling along it in direction `sign`
// (+1 along the aisle axis, -1 against it). Lateral offsets are positive to
// the traveller's left.
class CorridorFrame {
 public:
  CorridorFrame(const Aisle& aisle, int direction);

  // Frame of the aisle containing `position`, oriented toward `goal`.
  static CorridorFrame Toward(const CorridorWorld& world, const Vec2& position,
                              const Vec2& goal);

  double Along(const Vec2& p) const;
  double Lateral(const Vec2& p) const;
  Vec2 PointAt(double along, double lateral) const;
  double AxisHeading() const;
  double HalfWidth() const { return aisle_.width / 2.0; }
  // Travel-direction coordinates of the aisle ends.
  double StartAlong() const;
  double EndAlong() const;
  const Aisle& aisle() const { return aisle_; }
  int direction() const { return direction_; }
  bool Contains(const Vec2& p) const { return aisle_.Contains(p); }

 private:
  Aisle aisle_;
  int direction_;
};

// Fixed-timestep clock. Physics advances every tick; the planner runs every
// `planner_period`, which must be a whole number of physics ticks.
struct SimClock {
  std::int64_t tick_index = 0;
  double dt_physics = 0.01;
  double planner_period = 0.1;

  void Validate() const;
  int SubstepsPerPlan() const;
  double Time() const { return static_cast<double>(tick_index) * dt_physics; }
  bool IsPlannerTick() const { return tick_index % SubstepsPerPlan() == 0; }
};

struct PathPoint {
  Pose2 pose;
};

// Non-empty ordered list of pose targets whose first element is the robot
// pose at plan time. `max_speed` caps the translational speed the navigator
// may use while following it.
class Path {
 public:
  static constexpr double kStartTolerance = 1e-9;

  // Throws std::invalid_argument when `points` is empty, its first pose does
  // not match `current`, or `max_speed` is negative.
  Path(const Pose2& current, std::vector<PathPoint> points, double max_speed);

  // Convenience: [current, target].
  static Path TwoPoint(const Pose2& current, const Pose2& target,
                       double max_speed);

  std::span<const PathPoint> points() const { return points_; }
  const PathPoint& front() const { return points_.front(); }
  const PathPoint& back() const { return points_.back(); }
  std::size_t size() const { return points_.size(); }
  double max_speed() const { return max_speed_; }

 private:
  std::vector<PathPoint> points_;
  double max_speed_;
};

}  // namespace crossing

#endif  // CROSSING_WORLD_H_
