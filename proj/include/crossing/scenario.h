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

#ifndef CROSSING_SCENARIO_H_
#define CROSSING_SCENARIO_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crossing/kinematics.h"
#include "crossing/navigator.h"
#include "crossing/pedestrian.h"
#include "crossing/perception.h"
#include "crossing/planner.h"
#include "crossing/world.h"

namespace crossing {

inline constexpr int kScenarioSchema = 1;

struct PedestrianSpec {
  Vec2 start;
  Vec2 goal;
  Behaviour behaviour = Behaviour::kSocialForce;
  double speed = 1.2;
  std::vector<TimedWaypoint> waypoints;
};

// Seeded variation applied to the first pedestrian before a run.
struct Perturbation {
  std::optional<std::pair<double, double>> speed;    // m/s range
  std::optional<std::pair<double, double>> lateral;  // m range, start and goal
};

struct Condition {
  bool rotation = true;
  bool slide = true;
};

struct Scenario {
  std::string name = "scenario";
  CorridorWorld world = CorridorWorld::TwoAisleStore();
  Pose2 robot_start{0.5, 0.0, 0.0};
  Vec2 robot_goal{7.5, 0.0};
  std::vector<PedestrianSpec> pedestrians;
  Condition condition;
  std::uint64_t seed = 1;
  double duration_limit = 60.0;  // s
  SimClock clock;
  KinematicLimits limits;
  Wobble wobble;  // robot.wobble in the file
  PlannerConfig planner;
  NavigatorGains navigator;
  TrackerConfig tracker;
  SocialForceParams social_force;
  BlockerParams blocker;
  Perturbation perturbation;

  // Throws std::invalid_argument describing the first violated constraint.
  void Validate() const;
};

// Parses the JSON scenario format (schema 1). Missing fields keep defaults.
Scenario ParseScenario(std::string_view json_text);
Scenario LoadScenario(const std::filesystem::path& path);

// Scenario with the perturbation resolved for `scenario.seed` and the
// condition flags copied into the planner configuration.
Scenario ResolveScenario(const Scenario& scenario);

// Nominal crossing in the default store: robot walks the first aisle in +x,
// one pedestrian comes head-on at 1.2 m/s, perception is exact.
Scenario NominalCrossingScenario();

}  // namespace crossing

#endif  // CROSSING_SCENARIO_H_
