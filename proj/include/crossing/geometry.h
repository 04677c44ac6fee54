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

#ifndef CROSSING_GEOMETRY_H_
#define CROSSING_GEOMETRY_H_

#include <cmath>
#include <numbers>

namespace crossing {

inline constexpr double kPi = std::numbers::pi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;

  double Norm() const { return std::hypot(x, y); }
  constexpr double SquaredNorm() const { return x * x + y * y; }
  bool IsFinite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }
constexpr double Dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
constexpr double Cross(const Vec2& a, const Vec2& b) {
  return a.x * b.y - a.y * b.x;
}
inline double Distance(const Vec2& a, const Vec2& b) { return (a - b).Norm(); }

// Counter-clockwise rotation by `angle` radians.
inline Vec2 Rotate(const Vec2& v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

inline Vec2 UnitFromAngle(double angle) {
  return {std::cos(angle), std::sin(angle)};
}

// Wraps `theta` into (-pi, pi]. Throws std::invalid_argument when `theta` is
// not finite.
double NormalizeAngle(double theta);

// Planar pose. The heading is kept normalized into (-pi, pi].
struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;

  Pose2() = default;
  Pose2(double x_in, double y_in, double heading_in);
  Pose2(const Vec2& position, double heading_in);

  Vec2 position() const { return {x, y}; }
  bool operator==(const Pose2&) const = default;
};

// Planar velocity. Whether (vx, vy) is expressed in the world or body frame is
// stated at each use.
struct Twist2 {
  double vx = 0.0;
  double vy = 0.0;
  double omega = 0.0;

  Vec2 linear() const { return {vx, vy}; }
  double Speed() const { return std::hypot(vx, vy); }
  bool IsFinite() const {
    return std::isfinite(vx) && std::isfinite(vy) && std::isfinite(omega);
  }
  bool operator==(const Twist2&) const = default;
};

struct Segment {
  Vec2 a;
  Vec2 b;
};

double PointToSegmentDistance(const Vec2& p, const Segment& s);
Vec2 ClosestPointOnSegment(const Vec2& p, const Segment& s);

// True when the closed segments share at least one point.
bool SegmentsIntersect(const Segment& s1, const Segment& s2);

}  // namespace crossing

#endif  // CROSSING_GEOMETRY_H_
