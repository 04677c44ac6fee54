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

#include <gtest/gtest.h>

#include <cmath>

namespace crossing::oracle {
namespace {

TEST(OracleTest, EulerStraightLine) {
  const Pose2 end = EulerIntegrate(Pose2(1.0, 2.0, kPi / 2.0), {1.0, 0.0, 0.0}, 2.0, 10);
  EXPECT_NEAR(end.x, 1.0, 1e-12);
  EXPECT_NEAR(end.y, 4.0, 1e-12);
}

TEST(OracleTest, EulerCircle) {
  // Unit-speed, unit-rate arc: a full turn returns home.
  const Pose2 end = EulerIntegrate(Pose2(), {1.0, 0.0, 1.0}, 2.0 * kPi);
  EXPECT_NEAR(end.x, 0.0, 1e-6);
  EXPECT_NEAR(end.y, 0.0, 1e-6);
  EXPECT_NEAR(NormalizeAngle(end.heading), 0.0, 1e-9);
}

TEST(OracleTest, EulerRejectsBadSubsteps) {
  EXPECT_THROW(EulerIntegrate(Pose2(), {}, 1.0, 0), std::invalid_argument);
}

TEST(OracleTest, MeetingTime) {
  EXPECT_NEAR(*SteppedMeetingTime(0.0, 0.8, 3.6, -1.2), 1.8, 1e-6);
  EXPECT_NEAR(*SteppedMeetingTime(0.0, 1.0, 2.0, 0.0), 2.0, 1e-6);
  EXPECT_DOUBLE_EQ(*SteppedMeetingTime(1.0, 1.0, 0.5, 0.0), 0.0);
  EXPECT_FALSE(SteppedMeetingTime(0.0, 1.0, 2.0, 1.0).has_value());
  EXPECT_FALSE(SteppedMeetingTime(0.0, 0.01, 2.0, 0.0, 1e-3, 10.0).has_value());
}

TEST(OracleTest, TrapezoidProfiles) {
  EXPECT_DOUBLE_EQ(TrapezoidTravelTime(0.0, 1.0, 1.0), 0.0);
  // Triangular: 1 m at 1 m/s^2 peaks at 1 m/s after 1 s.
  EXPECT_NEAR(TrapezoidTravelTime(1.0, 2.0, 1.0), 2.0, 1e-12);
  // Ramps cover exactly v^2/a, then cruise.
  EXPECT_NEAR(TrapezoidTravelTime(1.0, 1.0, 1.0), 2.0, 1e-12);
  EXPECT_NEAR(TrapezoidTravelTime(7.0, 1.0, 1.0), 8.0, 1e-12);
}

TEST(OracleTest, SteppedRelaxationMatchesExponential) {
  const double v = SteppedRelaxation(0.0, 1.2, 0.5, 0.5);
  EXPECT_NEAR(v, 1.2 * (1.0 - std::exp(-1.0)), 1e-5);
  EXPECT_DOUBLE_EQ(SteppedRelaxation(1.2, 1.2, 0.5, 3.0, 10), 1.2);
}

TEST(OracleTest, AllChecksPass) {
  for (std::uint64_t seed : {1u, 7u, 99u}) {
    for (const CheckResult& c : RunAllChecks(seed)) {
      EXPECT_TRUE(c.passed) << c.name << " seed " << seed << " worst " << c.worst;
      EXPECT_LE(c.worst, c.tolerance) << c.name;
      EXPECT_GT(c.tolerance, 0.0);
    }
  }
}

TEST(OracleTest, PinnedTolerances) {
  EXPECT_DOUBLE_EQ(CheckArcIntegration(1, 1).tolerance, 1e-6);
  EXPECT_DOUBLE_EQ(CheckCrossingPrediction(1, 1).tolerance, 1e-3);
}

}  // namespace
}  // namespace crossing::oracle
