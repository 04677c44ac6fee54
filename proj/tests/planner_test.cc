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

#include "crossing/planner.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace crossing {
namespace {

constexpr double kDeg = kPi / 180.0;

class PlannerTest : public ::testing::Test {
 protected:
  RobotState RobotAt(double x, double y, double heading = 0.0) const {
    return RobotState{Pose2(x, y, heading), {}, {}};
  }
  // A track with a 10 Hz range history closing at `closing` m/s.
  TrackedPerson Track(Vec2 p, double closing = 1.2, int id = 1,
                      const Vec2& robot = {0.2, 0.0}) const {
    TrackedPerson t;
    t.id = id;
    t.position_estimate = p;
    const double d = Distance(p, robot);
    for (int k = -5; k <= 0; ++k) t.range_history.push_back({0.1 * k, d - closing * 0.1 * k});
    return t;
  }
  CorridorFrame Frame() const { return CorridorFrame::Toward(world_, {0.2, 0.0}, goal_); }

  CorridorWorld world_ = CorridorWorld::TwoAisleStore();
  Vec2 goal_{7.8, 0.0};
  PlannerConfig config_;
};

TEST_F(PlannerTest, CrossingTimeExamples) {
  EXPECT_EQ(*CrossingTime(3.6, 2.0), 1.8);
  EXPECT_EQ(*CrossingTime(0.0, 1.0), 0.0);
  EXPECT_FALSE(CrossingTime(3.0, -0.5).has_value());
  EXPECT_FALSE(CrossingTime(3.0, 0.05).has_value());  // at epsilon
  EXPECT_THROW(CrossingTime(-0.1, 1.0), std::invalid_argument);
  EXPECT_THROW(CrossingTime(NAN, 1.0), std::invalid_argument);
}

TEST_F(PlannerTest, CrossingTimeScaleInvarianceAndMonotonicity) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(0.0, 10.0);
  std::uniform_real_distribution<double> v(0.06, 3.0);
  std::uniform_real_distribution<double> k(0.1, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double di = d(rng);
    const double vi = v(rng);
    const double ki = k(rng);
    if (ki * vi <= 0.05) continue;
    ASSERT_NEAR(*CrossingTime(ki * di, ki * vi), *CrossingTime(di, vi),
                1e-12 * (1.0 + di / vi));
    ASSERT_LT(*CrossingTime(di, vi), *CrossingTime(di + 0.01, vi));
    ASSERT_GT(*CrossingTime(di + 0.01, vi), *CrossingTime(di + 0.01, vi + 0.01));
  }
}

TEST_F(PlannerTest, ConfigValidation) {
  EXPECT_NO_THROW(config_.Validate(1.0, 0.27));
  EXPECT_THROW(config_.Validate(0.5, 0.27), std::invalid_argument);  // 2.09 s > 1.8 s
  PlannerConfig c = config_;
  c.wall_offset = 0.2;
  EXPECT_THROW(c.Validate(1.0, 0.27), std::invalid_argument);
}

TEST_F(PlannerTest, PersonOnWay) {
  const RobotState robot = RobotAt(0.2, 0.0);
  EXPECT_TRUE(PersonOnWay(robot, Track({4.0, 0.1}), goal_, world_, config_));
  // Beyond trigger distance it still counts while approaching.
  EXPECT_TRUE(PersonOnWay(robot, Track({6.0, 0.1}), goal_, world_, config_));
  EXPECT_FALSE(PersonOnWay(robot, Track({6.0, 0.1}, -0.5), goal_, world_, config_));
  EXPECT_FALSE(PersonOnWay(robot, Track({-0.5, 0.0}), goal_, world_, config_));
  const Vec2 other = world_.aisles[1].PointAt(4.0, 0.0);
  EXPECT_FALSE(PersonOnWay(robot, Track(other), goal_, world_, config_));
  EXPECT_FALSE(PersonOnWay(robot, Track({7.9, 0.0}), goal_, world_, config_));
}

TEST_F(PlannerTest, StepSide) {
  const CorridorFrame f = Frame();
  EXPECT_EQ(ChooseStepSide(RobotAt(0.2, 0.0), Track({4.0, 0.2}), f, config_), Side::kRight);
  EXPECT_EQ(ChooseStepSide(RobotAt(0.2, 0.0), Track({4.0, -0.2}), f, config_), Side::kLeft);
  EXPECT_EQ(ChooseStepSide(RobotAt(0.2, -0.02), Track({4.0, 0.0}), f, config_), Side::kRight);
  EXPECT_EQ(ChooseStepSide(RobotAt(0.2, 0.02), Track({4.0, 0.0}), f, config_), Side::kLeft);
  EXPECT_EQ(ChooseStepSide(RobotAt(0.2, 0.0), Track({4.0, 0.0}), f, config_), Side::kRight);
}

TEST_F(PlannerTest, LaneLateral) {
  EXPECT_NEAR(SideLaneLateral(Side::kRight, Frame(), config_), -0.195, 1e-12);
  EXPECT_NEAR(SideLaneLateral(Side::kLeft, Frame(), config_), 0.195, 1e-12);
  // Travelling the other way flips the frame.
  const CorridorFrame back = CorridorFrame::Toward(world_, {7.8, 0.0}, {0.2, 0.0});
  EXPECT_NEAR(back.PointAt(0.0, SideLaneLateral(Side::kRight, back, config_)).y,
              0.195, 1e-12);
}

TEST_F(PlannerTest, StepPathIsDiagonalFacingForward) {
  const RobotState robot = RobotAt(1.0, 0.0);
  const Path path = StepPhasePath(robot, Side::kRight, Frame(), config_);
  ASSERT_EQ(path.size(), 2u);
  EXPECT_EQ(path.front().pose, robot.pose);
  EXPECT_NEAR(path.back().pose.y, -0.195, 1e-12);
  EXPECT_NEAR(path.back().pose.x, 1.195, 1e-12);  // 45 degrees
  for (const PathPoint& p : path.points()) EXPECT_NEAR(p.pose.heading, 0.0, 1e-12);
  EXPECT_NEAR(path.max_speed(), 0.25 * std::sqrt(2.0), 1e-12);
}

TEST_F(PlannerTest, SlideGoal) {
  const double lane = -0.195;
  const RobotState robot = RobotAt(2.0, lane);
  const Vec2 g = SlideGoal(robot, Side::kRight, Frame(), config_);
  EXPECT_NEAR(g.x, 2.5, 1e-12);
  EXPECT_NEAR(g.y, lane, 1e-12);
  // Wall line is at -0.475, the lane 0.28 inside it.
  EXPECT_NEAR(g.y - (-0.475), 0.28, 1e-12);
  const Vec2 clamped = SlideGoal(RobotAt(7.9, lane), Side::kRight, Frame(), config_);
  EXPECT_NEAR(clamped.x, Frame().EndAlong(), 1e-12);
  PlannerConfig off = config_;
  off.slide_enabled = false;
  const Vec2 hold = SlideGoal(robot, Side::kRight, Frame(), off);
  EXPECT_NEAR(hold.x, 2.0, 1e-12);
  EXPECT_NEAR(hold.y, lane, 1e-12);
}

TEST_F(PlannerTest, RotateDecision) {
  const CorridorFrame f = Frame();
  RotationDecision d = RotateDecision(1.7, +1, false, f, config_);
  EXPECT_TRUE(d.rotating);
  EXPECT_NEAR(d.target_heading, 60.0 * kDeg, 1e-12);
  d = RotateDecision(1.7, -1, false, f, config_);
  EXPECT_NEAR(d.target_heading, -60.0 * kDeg, 1e-12);
  d = RotateDecision(2.5, +1, false, f, config_);
  EXPECT_FALSE(d.rotating);
  EXPECT_NEAR(d.target_heading, 0.0, 1e-12);
  d = RotateDecision(std::nullopt, +1, false, f, config_);
  EXPECT_FALSE(d.rotating);
  d = RotateDecision(1.8, +1, false, f, config_);  // threshold is inclusive
  EXPECT_TRUE(d.rotating);
  // Latched: a later long prediction does not undo it.
  d = RotateDecision(5.0, +1, true, f, config_);
  EXPECT_TRUE(d.rotating);
  PlannerConfig off = config_;
  off.rotation_enabled = false;
  d = RotateDecision(0.5, +1, true, f, off);
  EXPECT_FALSE(d.rotating);
  EXPECT_NEAR(d.target_heading, 0.0, 1e-12);
}

TEST_F(PlannerTest, RotateBack) {
  const CorridorFrame f = Frame();
  const RobotState robot = RobotAt(4.0, -0.195);
  EXPECT_TRUE(RotateBack(robot, Track({3.4, 0.2}), f, config_));
  EXPECT_TRUE(RotateBack(robot, Track({3.5, 0.2}), f, config_));
  EXPECT_FALSE(RotateBack(robot, Track({4.0, 0.2}), f, config_));
  EXPECT_FALSE(RotateBack(robot, Track({3.6, 0.2}), f, config_));
}

TEST_F(PlannerTest, BlockedStop) {
  const CorridorFrame f = Frame();
  const RobotState robot = RobotAt(3.0, -0.195);
  EXPECT_TRUE(BlockedStop(robot, Track({3.8, -0.1}), Side::kRight, f, config_));
  EXPECT_FALSE(BlockedStop(robot, Track({3.8, 0.2}), Side::kRight, f, config_));
  EXPECT_FALSE(BlockedStop(robot, Track({6.0, -0.2}), Side::kRight, f, config_));
  EXPECT_FALSE(BlockedStop(robot, Track({2.5, -0.2}), Side::kRight, f, config_));
}

TEST_F(PlannerTest, FreeNavigationWithoutPeople) {
  const RobotState robot = RobotAt(0.2, 0.0);
  const PlanResult r = Plan(robot, {}, goal_, world_, config_, PlannerState{});
  EXPECT_EQ(r.state.mode, PlannerMode::kFreeNavigation);
  ASSERT_EQ(r.path.size(), 2u);
  EXPECT_EQ(r.path.front().pose, robot.pose);
  EXPECT_EQ(r.path.back().pose, Pose2(goal_, 0.0));
  EXPECT_EQ(r.path.max_speed(), config_.nominal_speed);
}

TEST_F(PlannerTest, StepTriggersInsideFourMeters) {
  const RobotState robot = RobotAt(0.2, 0.0);
  const std::vector<TrackedPerson> far = {Track({6.2, 0.0})};
  PlanResult r = Plan(robot, far, goal_, world_, config_, PlannerState{});
  EXPECT_EQ(r.state.mode, PlannerMode::kFreeNavigation);
  const std::vector<TrackedPerson> near = {Track({3.7, 0.1})};
  r = Plan(robot, near, goal_, world_, config_, PlannerState{});
  EXPECT_EQ(r.state.mode, PlannerMode::kStep);
  EXPECT_EQ(r.state.committed_side, Side::kRight);
  EXPECT_EQ(r.state.target_person_id, 1);
  for (const PathPoint& p : r.path.points()) EXPECT_NEAR(p.pose.heading, 0.0, 1e-12);
}

TEST_F(PlannerTest, AlreadyInLaneGoesStraightToSlide) {
  const RobotState robot = RobotAt(0.2, -0.195);
  const std::vector<TrackedPerson> tracks = {Track({3.7, 0.1})};
  const PlanResult r = Plan(robot, tracks, goal_, world_, config_, PlannerState{});
  EXPECT_EQ(r.state.mode, PlannerMode::kSlideRotate);
  EXPECT_EQ(r.state.committed_side, Side::kRight);
}

TEST_F(PlannerTest, SlideRotatesTowardPersonWhenCrossingIsNear) {
  PlannerState st;
  st.mode = PlannerMode::kSlideRotate;
  st.committed_side = Side::kRight;
  st.target_person_id = 1;
  const RobotState robot = RobotAt(2.0, -0.195);
  // 2.0 m away closing at 1.5 m/s: t_cross 1.33 s.
  const std::vector<TrackedPerson> tracks = {Track({4.0, 0.1}, 1.5, 1, {2.0, -0.195})};
  const PlanResult r = Plan(robot, tracks, goal_, world_, config_, st);
  ASSERT_TRUE(r.state.last_t_cross.has_value());
  EXPECT_NEAR(*r.state.last_t_cross, Distance({4.0, 0.1}, {2.0, -0.195}) / 1.5, 1e-9);
  EXPECT_TRUE(r.state.rotating);
  EXPECT_NEAR(r.state.target_heading, 60.0 * kDeg, 1e-12);  // toward the center
  EXPECT_NEAR(r.path.back().pose.heading, 60.0 * kDeg, 1e-12);
  EXPECT_NEAR(r.path.back().pose.x, 2.5, 1e-12);
  EXPECT_EQ(r.state.committed_side, Side::kRight);
}

TEST_F(PlannerTest, SlideOffHoldsPosition) {
  PlannerConfig off = config_;
  off.slide_enabled = false;
  PlannerState st;
  st.mode = PlannerMode::kSlideRotate;
  st.committed_side = Side::kRight;
  st.target_person_id = 1;
  const RobotState robot = RobotAt(2.0, -0.195);
  const std::vector<TrackedPerson> tracks = {Track({3.0, 0.2}, 1.2, 1, {2.0, -0.195})};
  const PlanResult r = Plan(robot, tracks, goal_, world_, off, st);
  EXPECT_NEAR(Distance(r.path.back().pose.position(), robot.pose.position()), 0.0, 1e-12);
}

TEST_F(PlannerTest, EpisodeEndsOnceBehindOrDropped) {
  PlannerState st;
  st.mode = PlannerMode::kSlideRotate;
  st.committed_side = Side::kRight;
  st.rotating = true;
  st.target_person_id = 1;
  const RobotState robot = RobotAt(4.0, -0.195, 60.0 * kDeg);
  std::vector<TrackedPerson> tracks = {Track({3.4, 0.2}, -1.0, 1, {4.0, -0.195})};
  PlanResult r = Plan(robot, tracks, goal_, world_, config_, st);
  EXPECT_EQ(r.state.mode, PlannerMode::kFreeNavigation);
  EXPECT_EQ(r.state.committed_side, Side::kNone);
  EXPECT_FALSE(r.state.rotating);
  EXPECT_NEAR(r.path.back().pose.heading, 0.0, 1e-12);
  // Alongside, but the tracker has dropped the person.
  tracks = {};
  r = Plan(robot, tracks, goal_, world_, config_, st);
  EXPECT_EQ(r.state.mode, PlannerMode::kFreeNavigation);
}

TEST_F(PlannerTest, SideIsKeptWhenPersonSwitches) {
  PlannerState st;
  st.mode = PlannerMode::kSlideRotate;
  st.committed_side = Side::kRight;
  st.target_person_id = 1;
  const RobotState robot = RobotAt(2.0, -0.195);
  const std::vector<TrackedPerson> tracks = {Track({3.5, -0.2}, 1.2, 1, {2.0, -0.195})};
  const PlanResult r = Plan(robot, tracks, goal_, world_, config_, st);
  EXPECT_EQ(r.state.committed_side, Side::kRight);
}

TEST_F(PlannerTest, BlockedRobotHoldsAndStaysBlockedUntilLaneClears) {
  PlannerState st;
  st.mode = PlannerMode::kSlideRotate;
  st.committed_side = Side::kRight;
  st.target_person_id = 1;
  const RobotState robot = RobotAt(3.0, -0.195);
  std::vector<TrackedPerson> tracks = {Track({3.8, -0.2}, 0.0, 1, {3.0, -0.195})};
  PlanResult r = Plan(robot, tracks, goal_, world_, config_, st);
  EXPECT_TRUE(r.state.blocked);
  EXPECT_NEAR(r.path.back().pose.x, 3.0, 1e-12);
  // Person drifts across the center line but still overlaps the lane.
  tracks = {Track({3.8, 0.05}, 0.0, 1, {3.0, -0.195})};
  r = Plan(robot, tracks, goal_, world_, config_, r.state);
  EXPECT_TRUE(r.state.blocked);
  // Lane clear: 0.27 + 0.18 + margin from the lane.
  tracks = {Track({3.8, 0.27}, 0.0, 1, {3.0, -0.195})};
  r = Plan(robot, tracks, goal_, world_, config_, r.state);
  EXPECT_FALSE(r.state.blocked);
  EXPECT_GT(r.path.back().pose.x, 3.0);
}

// Every path starts at the robot and carries only axis or axis +- 60 deg.
TEST_F(PlannerTest, PathHeadingsAreDiscrete) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> along(0.3, 7.7);
  std::uniform_real_distribution<double> lat(-0.3, 0.3);
  std::uniform_real_distribution<double> closing(-1.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const RobotState robot = RobotAt(along(rng), lat(rng), lat(rng));
    const std::vector<TrackedPerson> tracks = {
        Track({along(rng), lat(rng)}, closing(rng), 1, robot.pose.position())};
    PlannerState st;
    st.mode = static_cast<PlannerMode>(i % 3);
    if (st.mode != PlannerMode::kFreeNavigation) {
      st.committed_side = i % 2 ? Side::kLeft : Side::kRight;
      st.target_person_id = 1;
    }
    const PlanResult r = Plan(robot, tracks, goal_, world_, config_, st);
    ASSERT_EQ(r.path.front().pose, robot.pose);
    const double h = r.path.back().pose.heading;
    const bool ok = std::abs(h) < 1e-12 || std::abs(std::abs(h) - 60.0 * kDeg) < 1e-12;
    ASSERT_TRUE(ok) << h;
    if (r.state.mode != PlannerMode::kFreeNavigation) {
      ASSERT_NE(r.state.committed_side, Side::kNone);
    }
  }
}

TEST(PlannerNamesTest, ToStrings) {
  EXPECT_EQ(ToString(PlannerMode::kStep), "step");
  EXPECT_EQ(ToString(Side::kLeft), "left");
  EXPECT_EQ(SideSign(Side::kNone), 0);
}

}  // namespace
}  // namespace crossing
