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

#include "crossing/export.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>

namespace crossing {
namespace {

int CountLines(const std::string& s) {
  return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

int CountOf(const std::string& s, const std::string& needle) {
  int n = 0;
  for (std::size_t pos = s.find(needle); pos != std::string::npos;
       pos = s.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

std::string ReadFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

SimTrace TwoTicks() {
  SimTrace t;
  t.world = CorridorWorld::TwoAisleStore();
  t.pedestrian_radii = {0.18};
  for (int i = 0; i < 2; ++i) {
    TraceRow row;
    row.tick = i;
    row.time = 0.01 * i;
    row.robot_pose = Pose2(1.23456789, 0.0, 0.0);
    row.pedestrian_positions = {{5.0, 0.1}};
    row.pedestrian_velocities = {{-1.2, 0.0}};
    t.rows.push_back(row);
  }
  return t;
}

class ExportTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("crossing_export_" + std::to_string(::testing::UnitTest::GetInstance()
                                                    ->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST_F(ExportTest, TwoTickTraceHasThreeLines) {
  const std::string csv = TraceToCsv(TwoTicks());
  EXPECT_EQ(CountLines(csv), 3);
  EXPECT_EQ(csv.rfind("tick,time,robot_x,robot_y,robot_heading,robot_vx,robot_vy,"
                      "robot_omega,mode,rotating,ped0_x,ped0_y,track_count,",
                      0),
            0u);
  EXPECT_NE(csv.find("\n0,0,1.23457,0,0,"), std::string::npos);
}

TEST_F(ExportTest, EmptyTraceIsHeaderOnly) {
  SimTrace t = TwoTicks();
  t.rows.clear();
  const std::string csv = TraceToCsv(t);
  EXPECT_EQ(CountLines(csv), 1);
  EXPECT_NE(csv.find("ped0_x"), std::string::npos);
  ExportCsv(t, dir_ / "empty.csv");
  EXPECT_EQ(ReadFile(dir_ / "empty.csv"), csv);
}

TEST_F(ExportTest, SameRunSameBytes) {
  const Scenario sc = LoadScenario(std::filesystem::path(CROSSING_SCENARIO_DIR) / "suite.json");
  ExportCsv(RunScenario(sc).trace, dir_ / "a.csv");
  ExportCsv(RunScenario(sc).trace, dir_ / "b.csv");
  const std::string a = ReadFile(dir_ / "a.csv");
  EXPECT_GT(a.size(), 1000u);
  EXPECT_EQ(a, ReadFile(dir_ / "b.csv"));
}

TEST_F(ExportTest, UnwritablePathThrows) {
  EXPECT_THROW(ExportCsv(TwoTicks(), dir_ / "missing" / "x.csv"), std::runtime_error);
  EXPECT_THROW(ExportSvg(TwoTicks(), dir_ / "missing" / "x.svg"), std::runtime_error);
}

TEST_F(ExportTest, ColumnCountIsConstant) {
  const std::string csv = TraceToCsv(RunScenario(NominalCrossingScenario()).trace);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  const auto columns = std::count(line.begin(), line.end(), ',');
  while (std::getline(in, line)) {
    ASSERT_EQ(std::count(line.begin(), line.end(), ','), columns) << line;
  }
}

TEST_F(ExportTest, OneHeadingGlyphPerHalfSecond) {
  const SimTrace trace = RunScenario(NominalCrossingScenario()).trace;
  const std::string svg = RenderSvg(trace);
  const auto ticks = static_cast<int>(trace.rows.size());
  const int per_glyph = static_cast<int>(std::lround(kGlyphPeriod / trace.dt_physics));
  EXPECT_EQ(CountOf(svg, "class=\"heading-glyph\""), (ticks - 1) / per_glyph + 1);
  EXPECT_EQ(CountOf(svg, "class=\"wall\""), static_cast<int>(trace.world.walls.size()));
  EXPECT_EQ(CountOf(svg, "class=\"robot-path\""), 1);
  EXPECT_EQ(CountOf(svg, "class=\"pedestrian-path\""), 1);
  EXPECT_EQ(CountOf(svg, "class=\"crossing-marker\""), 1);
}

TEST_F(ExportTest, CrossingGlyphIsRotated) {
  const std::string svg = RenderSvg(RunScenario(NominalCrossingScenario()).trace);
  const std::regex glyph("class=\"crossing-glyph\"[^>]*data-heading=\"([-0-9.e]+)\"");
  std::smatch match;
  ASSERT_TRUE(std::regex_search(svg, match, glyph));
  EXPECT_NEAR(std::stod(match[1].str()), kPi / 3.0, 2.0 * kPi / 180.0);
}

TEST_F(ExportTest, WorldOnlyRender) {
  SimTrace t = TwoTicks();
  t.rows.clear();
  const std::string svg = RenderSvg(t);
  EXPECT_EQ(CountOf(svg, "class=\"wall\""), static_cast<int>(t.world.walls.size()));
  EXPECT_EQ(svg.find("polyline"), std::string::npos);
  EXPECT_EQ(svg.find("glyph"), std::string::npos);
  ExportSvg(t, dir_ / "world.svg");
  EXPECT_EQ(ReadFile(dir_ / "world.svg"), svg);
}

}  // namespace
}  // namespace crossing
