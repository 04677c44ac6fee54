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

#include "crossing/oracle/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "crossing/kinematics.h"
#include "crossing/pedestrian.h"
#include "crossing/perception.h"
#include "crossing/planner.h"

namespace crossing::oracle {

Pose2 EulerIntegrate(const Pose2& start, const Twist2& body_twist,
                     double duration, int substeps) {
  if (substeps <= 0) throw std::invalid_argument("EulerIntegrate: substeps <= 0");
  const double h = duration / substeps;
  double x = start.x;
  double y = start.y;
  double theta = start.heading;
  for (int i = 0; i < substeps; ++i) {
    const double mid = theta + 0.5 * h * body_twist.omega;
    const double c = std::cos(mid);
    const double s = std::sin(mid);
    x += h * (c * body_twist.vx - s * body_twist.vy);
    y += h * (s * body_twist.vx + c * body_twist.vy);
    theta += h * body_twist.omega;
  }
  return Pose2(x, y, theta);
}

std::optional<double> SteppedMeetingTime(double robot_position, double robot_velocity,
                                         double person_position,
                                         double person_velocity, double step,
                                         double horizon) {
  double gap = person_position - robot_position;
  if (gap <= 0.0) return 0.0;
  const auto steps = static_cast<long long>(horizon / step);
  for (long long i = 0; i < steps; ++i) {
    robot_position += robot_velocity * step;
    person_position += person_velocity * step;
    const double next_gap = person_position - robot_position;
    if (next_gap <= 0.0) {
      return (static_cast<double>(i) + gap / (gap - next_gap)) * step;
    }
    gap = next_gap;
  }
  return std::nullopt;
}

double TrapezoidTravelTime(double distance, double v_max, double a_max) {
  if (distance <= 0.0) return 0.0;
  const double ramp_distance = v_max * v_max / a_max;  // both ramps together
  if (distance <= ramp_distance) return 2.0 * std::sqrt(distance / a_max);
  return 2.0 * v_max / a_max + (distance - ramp_distance) / v_max;
}

double SteppedRelaxation(double initial, double target, double tau,
                         double duration, int substeps) {
  const double h = duration / substeps;
  double v = initial;
  for (int i = 0; i < substeps; ++i) v += h * (target - v) / tau;
  return v;
}

CheckResult CheckArcIntegration(std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lin(-1.5, 1.5);
  std::uniform_real_distribution<double> ang(-1.0, 1.0);
  std::uniform_real_distribution<double> heading(-kPi, kPi);
  std::uniform_real_distribution<double> duration(0.01, 2.0);
  CheckResult r{"arc integration vs 1e5-step midpoint Euler", true, 0.0, 1e-6};
  KinematicLimits limits;
  limits.v_max = 2.2;  // random diagonal twists may exceed the default cap
  for (int i = 0; i < trials; ++i) {
    const Twist2 cmd{lin(rng), lin(rng), ang(rng)};
    const Pose2 start(lin(rng), lin(rng), heading(rng));
    const double t = duration(rng);
    const RobotState end = Integrate(RobotState{start, {}, limits}, cmd, t);
    const Pose2 ref = EulerIntegrate(start, cmd, t);
    const double err = std::max(Distance(end.pose.position(), ref.position()),
                                std::abs(NormalizeAngle(end.pose.heading - ref.heading)));
    r.worst = std::max(r.worst, err);
  }
  r.passed = r.worst <= r.tolerance;
  return r;
}

CheckResult CheckCrossingPrediction(std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> gap(1.0, 8.0);
  std::uniform_real_distribution<double> robot_speed(0.0, 1.5);
  std::uniform_real_distribution<double> person_speed(0.5, 2.0);
  CheckResult r{"t_cross vs stepped constant-velocity crossing", true, 0.0, 1e-3};
  for (int i = 0; i < trials; ++i) {
    const double d = gap(rng);
    const double vr = robot_speed(rng);
    const double vp = person_speed(rng);
    // Distance history as the tracker would have sampled it at 10 Hz.
    TrackedPerson person;
    for (int k = -10; k <= 0; ++k) {
      const double t = 0.1 * k;
      person.range_history.push_back({t, d - (vr + vp) * t});
    }
    const auto closing = RelativeClosingSpeed(person, 0.5);
    const auto predicted = closing ? CrossingTime(d, *closing) : std::nullopt;
    const auto reference = SteppedMeetingTime(0.0, vr, d, -vp);
    if (!predicted || !reference) {
      r.worst = std::numeric_limits<double>::infinity();
      continue;
    }
    r.worst = std::max(r.worst, std::abs(*predicted - *reference));
  }
  r.passed = r.worst <= r.tolerance;
  return r;
}

CheckResult CheckRelaxation(std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> tau(0.2, 1.0);
  std::uniform_real_distribution<double> speed(0.5, 2.0);
  std::uniform_real_distribution<double> step(0.01, 0.5);
  CheckResult r{"social force relaxation vs stepped ODE", true, 0.0, 1e-4};
  CorridorWorld open;  // no aisles and no walls
  open.aisles.clear();
  open.walls.clear();
  const RobotState far_robot{Pose2(1e4, 1e4, 0.0), {}, {}};
  for (int i = 0; i < trials; ++i) {
    SocialForceParams params;
    params.tau = tau(rng);
    PedestrianState ped;
    ped.desired_speed = speed(rng);
    ped.goal = {100.0, 0.0};
    const double dt = step(rng);
    const PedestrianState next = SocialForceStep(ped, far_robot, open, params, dt);
    const double ref = SteppedRelaxation(0.0, ped.desired_speed, params.tau, dt);
    r.worst = std::max(r.worst, std::abs(next.velocity.Norm() - ref));
  }
  r.passed = r.worst <= r.tolerance;
  return r;
}

std::vector<CheckResult> RunAllChecks(std::uint64_t seed) {
  return {CheckArcIntegration(seed), CheckCrossingPrediction(seed + 1),
          CheckRelaxation(seed + 2)};
}

}  // namespace crossing::oracle
