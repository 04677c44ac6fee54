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

// Brute-force reference computations. Nothing here shares code with the
// closed-form paths it is used to check.

#ifndef CROSSING_ORACLE_ORACLE_H_
#define CROSSING_ORACLE_ORACLE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crossing/geometry.h"

namespace crossing::oracle {

// Midpoint-rule integration of a body-frame constant twist.
Pose2 EulerIntegrate(const Pose2& start, const Twist2& body_twist,
                     double duration, int substeps = 100000);

// Time until two points moving at constant velocity along a shared line
// meet, found by stepping with `step` and interpolating the sign change.
// Empty when they never meet within `horizon`.
std::optional<double> SteppedMeetingTime(double robot_position, double robot_velocity,
                                         double person_position,
                                         double person_velocity,
                                         double step = 1e-5, double horizon = 100.0);

// Rest-to-rest travel time over `distance` with speed cap `v_max` and
// acceleration `a_max`, covering both triangular and trapezoidal profiles.
double TrapezoidTravelTime(double distance, double v_max, double a_max);

// Speed after `duration` of v' = (target - v) / tau from `initial`, by
// forward Euler with `substeps` steps.
double SteppedRelaxation(double initial, double target, double tau,
                         double duration, int substeps = 100000);

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;      // largest observed error
  double tolerance = 0.0;  // pinned bound
};

// The randomized oracle comparisons used by the acceptance suite.
CheckResult CheckArcIntegration(std::uint64_t seed, int trials = 200);
CheckResult CheckCrossingPrediction(std::uint64_t seed, int trials = 200);
CheckResult CheckRelaxation(std::uint64_t seed, int trials = 50);
std::vector<CheckResult> RunAllChecks(std::uint64_t seed);

}  // namespace crossing::oracle

#endif  // CROSSING_ORACLE_ORACLE_H_
