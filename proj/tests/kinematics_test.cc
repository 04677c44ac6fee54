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

#include "crossing/kinematics.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "crossing/oracle/oracle.h"

namespace crossing {
namespace {

constexpr double kDt = 0.01;

TEST(ClampCommandTest, AccelerationLimitedFirstStep) {
  const Twist2 out = ClampCommand({2.0, 0.0, 0.0}, {}, KinematicLimits{}, kDt);
  EXPECT_NEAR(out.vx, 0.01, 1e-12);
  EXPECT_EQ(out.vy, 0.0);
  EXPECT_EQ(out.omega, 0.0);
}

TEST(ClampCommandTest, TopSpeedIsSteadyState) {
  const Twist2 out =
      ClampCommand({1.5, 0.0, 0.0}, {1.5, 0.0, 0.0}, KinematicLimits{}, kDt);
  EXPECT_EQ(out, (Twist2{1.5, 0.0, 0.0}));
}

TEST(ClampCommandTest, AngularVelocityCapped) {
  const Twist2 out =
      ClampCommand({0.0, 0.0, 2.0}, {0.0, 0.0, 1.0}, KinematicLimits{}, kDt);
  EXPECT_EQ(out, (Twist2{0.0, 0.0, 1.0}));
}

TEST(ClampCommandTest, DirectionPreservedWhenOnlyMagnitudeClamped) {
  const Twist2 current{1.2, 0.9, 0.0};  // speed 1.5 along (0.8, 0.6)
  const Twist2 out = ClampCommand({4.0, 3.0, 0.0}, current, KinematicLimits{}, kDt);
  EXPECT_NEAR(out.Speed(), 1.5, 1e-12);
  EXPECT_NEAR(out.vx * 0.6 - out.vy * 0.8, 0.0, 1e-12);
}

TEST(ClampCommandTest, RejectsBadInput) {
  EXPECT_THROW(ClampCommand({}, {}, KinematicLimits{}, 0.0), std::invalid_argument);
  EXPECT_THROW(ClampCommand({std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0},
                            {}, KinematicLimits{}, kDt),
               std::invalid_argument);
}

TEST(IntegrateTest, PureTranslation) {
  const RobotState s = Integrate(RobotState{}, {1.0, 0.0, 0.0}, 1.0);
  EXPECT_NEAR(s.pose.x, 1.0, 1e-12);
  EXPECT_NEAR(s.pose.y, 0.0, 1e-12);
  EXPECT_NEAR(s.pose.heading, 0.0, 1e-12);
}

TEST(IntegrateTest, PureRotationLandsOnBoundary) {
  KinematicLimits limits;
  limits.omega_max = 4.0;
  const RobotState s = Integrate(RobotState{{}, {}, limits}, {0.0, 0.0, kPi}, 1.0);
  EXPECT_NEAR(s.pose.x, 0.0, 1e-12);
  EXPECT_NEAR(s.pose.y, 0.0, 1e-12);
  EXPECT_NEAR(s.pose.heading, kPi, 1e-12);
  EXPECT_GT(s.pose.heading, 0.0);
}

TEST(IntegrateTest, QuarterArcMatchesClosedForm) {
  KinematicLimits limits;
  limits.omega_max = 2.0;
  const RobotState s =
      Integrate(RobotState{{}, {}, limits}, {1.0, 0.0, kPi / 2.0}, 1.0);
  EXPECT_NEAR(s.pose.x, 2.0 / kPi, 1e-12);
  EXPECT_NEAR(s.pose.y, 2.0 / kPi, 1e-12);
  EXPECT_NEAR(s.pose.heading, kPi / 2.0, 1e-12);
  const Pose2 ref = oracle::EulerIntegrate(Pose2(), {1.0, 0.0, kPi / 2.0}, 1.0);
  EXPECT_NEAR(Distance(s.pose.position(), ref.position()), 0.0, 1e-6);
}

TEST(IntegrateTest, MatchesEulerOracleOverRandomTwists) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lin(-1.0, 1.0);
  std::uniform_real_distribution<double> ang(-1.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const Twist2 cmd{lin(rng), lin(rng), ang(rng)};
    const Pose2 start(lin(rng), lin(rng), 3.0 * ang(rng));
    const RobotState s = Integrate(RobotState{start, {}, {}}, cmd, 1.0);
    const Pose2 ref = oracle::EulerIntegrate(start, cmd, 1.0);
    ASSERT_LT(Distance(s.pose.position(), ref.position()), 1e-6);
    ASSERT_LT(std::abs(NormalizeAngle(s.pose.heading - ref.heading)), 1e-9);
  }
}

TEST(IntegrateTest, LateralMotionAtFixedHeading) {
  const RobotState start{Pose2(0.0, 0.0, 0.7), {}, {}};
  const RobotState s = Integrate(start, {0.0, 0.5, 0.0}, 1.0);
  EXPECT_DOUBLE_EQ(s.pose.heading, 0.7);
  EXPECT_NEAR(s.pose.x, -0.5 * std::sin(0.7), 1e-12);
  EXPECT_NEAR(s.pose.y, 0.5 * std::cos(0.7), 1e-12);
}

TEST(IntegrateTest, StoresWorldFrameTwist) {
  const RobotState start{Pose2(0.0, 0.0, kPi / 2.0), {}, {}};
  const RobotState s = Integrate(start, {1.0, 0.0, 0.0}, 0.1);
  EXPECT_NEAR(s.twist.vx, 0.0, 1e-12);
  EXPECT_NEAR(s.twist.vy, 1.0, 1e-12);
  const Twist2 body = s.BodyTwist();
  EXPECT_NEAR(body.vx, 1.0, 1e-12);
  EXPECT_NEAR(body.vy, 0.0, 1e-12);
}

TEST(IntegrateTest, RejectsUnclampedCommand) {
  EXPECT_THROW(Integrate(RobotState{}, {1.6, 0.0, 0.0}, kDt), std::invalid_argument);
  EXPECT_THROW(Integrate(RobotState{}, {0.0, 0.0, 1.1}, kDt), std::invalid_argument);
  EXPECT_THROW(Integrate(RobotState{}, {0.1, 0.0, 0.0}, 0.0), std::invalid_argument);
}

TEST(IntegrateTest, Deterministic) {
  const RobotState start{Pose2(0.3, -0.2, 1.0), {}, {}};
  const RobotState a = Integrate(start, {0.4, -0.3, 0.8}, kDt);
  const RobotState b = Integrate(start, {0.4, -0.3, 0.8}, kDt);
  EXPECT_EQ(a.pose, b.pose);
  EXPECT_EQ(a.twist, b.twist);
}

TEST(FrameTest, BodyWorldRoundTrip) {
  const Twist2 body{0.3, -0.4, 0.2};
  const Twist2 back = WorldToBody(BodyToWorld(body, 2.1), 2.1);
  EXPECT_NEAR(back.vx, body.vx, 1e-12);
  EXPECT_NEAR(back.vy, body.vy, 1e-12);
  EXPECT_EQ(back.omega, body.omega);
}

// Clamp followed by integrate never breaks the limits, whatever is asked.
TEST(KinematicsPropertyTest, RandomCommandStreamsRespectLimits) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> wild(-5.0, 5.0);
  const KinematicLimits limits;
  RobotState state{Pose2(), {}, limits};
  for (int i = 0; i < 20000; ++i) {
    const Twist2 desired{wild(rng), wild(rng), wild(rng)};
    const Twist2 cmd = ClampCommand(desired, state.BodyTwist(), limits, kDt);
    const RobotState next = Integrate(state, cmd, kDt);
    ASSERT_LE(next.twist.Speed(), limits.v_max + kLimitSlack);
    ASSERT_LE(std::abs(next.twist.omega), limits.omega_max + kLimitSlack);
    ASSERT_LE(std::abs(next.twist.Speed() - state.twist.Speed()),
              limits.a_max * kDt + 1e-9);
    ASSERT_LE(std::abs(next.twist.omega - state.twist.omega),
              limits.alpha_max * kDt + 1e-9);
    state = next;
  }
}

TEST(WobbleTest, OffByDefault) {
  const Wobble w;
  EXPECT_FALSE(w.enabled());
  EXPECT_EQ(WobbleVelocity(w, 0.3).vy, 0.0);
  EXPECT_NO_THROW(w.Validate());
}

TEST(WobbleTest, IntegratesToTheStatedOffset) {
  const Wobble w{0.05, 2.0};
  // Quarter period reaches the peak; a full period returns to zero.
  auto offset = [&](double t_end) {
    const int n = 100000;
    const double h = t_end / n;
    double y = 0.0;
    for (int i = 0; i < n; ++i) y += h * WobbleVelocity(w, (i + 0.5) * h).vy;
    return y;
  };
  EXPECT_NEAR(offset(0.5), 0.05, 1e-9);
  EXPECT_NEAR(offset(2.0), 0.0, 1e-9);
  EXPECT_EQ(WobbleVelocity(w, 0.7).vx, 0.0);
  EXPECT_EQ(WobbleVelocity(w, 0.7).omega, 0.0);
}

TEST(WobbleTest, RejectsBadValues) {
  EXPECT_THROW((Wobble{-0.01, 2.0}).Validate(), std::invalid_argument);
  EXPECT_THROW((Wobble{0.05, 0.0}).Validate(), std::invalid_argument);
}

}  // namespace
}  // namespace crossing
