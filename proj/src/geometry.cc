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

#include "crossing/geometry.h"

#include <algorithm>
#include <stdexcept>

namespace crossing {

double NormalizeAngle(double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("NormalizeAngle: non-finite angle");
  }
  double r = std::remainder(theta, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  if (r > kPi) r -= 2.0 * kPi;
  return r;
}

Pose2::Pose2(double x_in, double y_in, double heading_in)
    : x(x_in), y(y_in), heading(NormalizeAngle(heading_in)) {}

Pose2::Pose2(const Vec2& position, double heading_in)
    : Pose2(position.x, position.y, heading_in) {}

Vec2 ClosestPointOnSegment(const Vec2& p, const Segment& s) {
  const Vec2 ab = s.b - s.a;
  const double len2 = ab.SquaredNorm();
  if (len2 == 0.0) return s.a;
  const double t = std::clamp(Dot(p - s.a, ab) / len2, 0.0, 1.0);
  return s.a + ab * t;
}

double PointToSegmentDistance(const Vec2& p, const Segment& s) {
  return Distance(p, ClosestPointOnSegment(p, s));
}

namespace {

int Orientation(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double v = Cross(b - a, c - a);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool OnSegment(const Vec2& a, const Vec2& b, const Vec2& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

bool SegmentsIntersect(const Segment& s1, const Segment& s2) {
  const int o1 = Orientation(s1.a, s1.b, s2.a);
  const int o2 = Orientation(s1.a, s1.b, s2.b);
  const int o3 = Orientation(s2.a, s2.b, s1.a);
  const int o4 = Orientation(s2.a, s2.b, s1.b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && OnSegment(s1.a, s1.b, s2.a)) return true;
  if (o2 == 0 && OnSegment(s1.a, s1.b, s2.b)) return true;
  if (o3 == 0 && OnSegment(s2.a, s2.b, s1.a)) return true;
  if (o4 == 0 && OnSegment(s2.a, s2.b, s1.b)) return true;
  return false;
}

}  // namespace crossing
