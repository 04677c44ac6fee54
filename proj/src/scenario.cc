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

#include "crossing/scenario.h"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace crossing {

namespace {

using nlohmann::json;

Vec2 ReadVec2(const json& j, std::string_view what) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("scenario: " + std::string(what) +
                                " must be [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::pair<double, double> ReadRange(const json& j, std::string_view what) {
  const Vec2 v = ReadVec2(j, what);
  if (v.x > v.y) {
    throw std::invalid_argument("scenario: " + std::string(what) +
                                " range is reversed");
  }
  return {v.x, v.y};
}

template <typename T>
void Maybe(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

CorridorWorld ReadWorld(const json& j) {
  CorridorWorld world;
  if (j.contains("aisles")) {
    for (const json& a : j.at("aisles")) {
      Aisle aisle;
      aisle.origin = ReadVec2(a.at("origin"), "aisle origin");
      if (a.contains("axis")) {
        const Vec2 axis = ReadVec2(a.at("axis"), "aisle axis");
        aisle.axis = axis / axis.Norm();
      }
      Maybe(a, "length", aisle.length);
      Maybe(a, "width", aisle.width);
      world.aisles.push_back(aisle);
    }
    world.RebuildWalls();
  } else {
    const std::string preset = j.value("preset", "two_aisle_store");
    if (preset != "two_aisle_store") {
      throw std::invalid_argument("scenario: unknown world preset " + preset);
    }
    world = CorridorWorld::TwoAisleStore(j.value("aisle_length", 8.0),
                                         j.value("aisle_width", 0.95),
                                         j.value("shelf_thickness", 1.05));
  }
  Maybe(j, "robot_radius", world.robot_radius);
  Maybe(j, "person_radius", world.person_radius);
  if (j.contains("goals")) {
    for (const json& g : j.at("goals")) world.goals.push_back(ReadVec2(g, "goal"));
  }
  return world;
}

PedestrianSpec ReadPedestrian(const json& j) {
  PedestrianSpec spec;
  spec.start = ReadVec2(j.at("start"), "pedestrian start");
  spec.goal = ReadVec2(j.at("goal"), "pedestrian goal");
  spec.behaviour = ParseBehaviour(j.value("behaviour", "social_force"));
  Maybe(j, "speed", spec.speed);
  if (j.contains("waypoints")) {
    for (const json& w : j.at("waypoints")) {
      if (!w.is_array() || w.size() != 3) {
        throw std::invalid_argument("scenario: waypoint must be [t, x, y]");
      }
      spec.waypoints.push_back(
          {w[0].get<double>(), {w[1].get<double>(), w[2].get<double>()}});
    }
  }
  return spec;
}

std::uint64_t Mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void Scenario::Validate() const {
  world.Validate();
  clock.Validate();
  limits.Validate();
  wobble.Validate();
  if (wobble.enabled()) WobbleHeadroom(wobble, limits);
  social_force.Validate();
  tracker.Validate();
  navigator.Validate(world.robot_radius);
  planner.Validate(limits.omega_max, world.robot_radius);
  if (!(duration_limit > 0.0)) {
    throw std::invalid_argument("scenario: duration_limit must be > 0");
  }
  if (!world.Contains(robot_start.position())) {
    throw std::invalid_argument("scenario: robot start outside world");
  }
  if (!world.Contains(robot_goal)) {
    throw std::invalid_argument("scenario: robot goal outside world");
  }
  for (const PedestrianSpec& p : pedestrians) {
    PedestrianState state;
    state.desired_speed = p.speed;
    state.radius = world.person_radius;
    state.behaviour = p.behaviour;
    state.waypoints = p.waypoints;
    state.Validate();
    const Vec2 start = p.behaviour == Behaviour::kScriptedWaypoints
                           ? p.waypoints.front().position
                           : p.start;
    if (Distance(start, robot_start.position()) <
        world.robot_radius + world.person_radius) {
      throw std::invalid_argument("scenario: pedestrian overlaps robot at start");
    }
  }
}

Scenario ParseScenario(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario: ") + e.what());
  }
  const int schema = j.value("schema", 0);
  if (schema != kScenarioSchema) {
    throw std::invalid_argument("scenario: unsupported schema " +
                                std::to_string(schema));
  }

  Scenario sc;
  try {
    Maybe(j, "name", sc.name);
    if (j.contains("world")) sc.world = ReadWorld(j.at("world"));
    if (j.contains("robot")) {
      const json& r = j.at("robot");
      const json& start = r.at("start");
      if (!start.is_array() || start.size() != 3) {
        throw std::invalid_argument("scenario: robot start must be [x, y, heading]");
      }
      sc.robot_start = Pose2(start[0].get<double>(), start[1].get<double>(),
                             start[2].get<double>());
      sc.robot_goal = ReadVec2(r.at("goal"), "robot goal");
      if (r.contains("wobble")) {
        Maybe(r.at("wobble"), "amplitude", sc.wobble.amplitude);
        Maybe(r.at("wobble"), "period", sc.wobble.period);
      }
    }
    if (j.contains("pedestrians")) {
      for (const json& p : j.at("pedestrians")) {
        sc.pedestrians.push_back(ReadPedestrian(p));
      }
    }
    if (j.contains("condition")) {
      Maybe(j.at("condition"), "rotation", sc.condition.rotation);
      Maybe(j.at("condition"), "slide", sc.condition.slide);
    }
    Maybe(j, "seed", sc.seed);
    Maybe(j, "duration_limit", sc.duration_limit);
    if (j.contains("clock")) {
      Maybe(j.at("clock"), "dt_physics", sc.clock.dt_physics);
      Maybe(j.at("clock"), "planner_period", sc.clock.planner_period);
    }
    if (j.contains("limits")) {
      const json& l = j.at("limits");
      Maybe(l, "v_max", sc.limits.v_max);
      Maybe(l, "omega_max", sc.limits.omega_max);
      Maybe(l, "a_max", sc.limits.a_max);
      Maybe(l, "alpha_max", sc.limits.alpha_max);
    }
    if (j.contains("planner")) {
      const json& p = j.at("planner");
      PlannerConfig& c = sc.planner;
      Maybe(p, "step_trigger_distance", c.step_trigger_distance);
      Maybe(p, "rotate_time_threshold", c.rotate_time_threshold);
      if (p.contains("rotate_angle_deg")) {
        c.rotate_angle = p.at("rotate_angle_deg").get<double>() * kPi / 180.0;
      }
      Maybe(p, "slide_lookahead", c.slide_lookahead);
      Maybe(p, "wall_offset", c.wall_offset);
      Maybe(p, "rotate_back_clearance", c.rotate_back_clearance);
      Maybe(p, "nominal_speed", c.nominal_speed);
      Maybe(p, "step_speed_factor", c.step_speed_factor);
      Maybe(p, "step_lateral_tolerance", c.step_lateral_tolerance);
      Maybe(p, "blocked_stop_distance", c.blocked_stop_distance);
      Maybe(p, "min_closing_speed", c.min_closing_speed);
      Maybe(p, "closing_window", c.closing_window);
      Maybe(p, "side_tie_band", c.side_tie_band);
    }
    if (j.contains("navigator")) {
      const json& n = j.at("navigator");
      NavigatorGains& g = sc.navigator;
      Maybe(n, "kp_lin", g.kp_lin);
      Maybe(n, "ki_lin", g.ki_lin);
      Maybe(n, "kd_lin", g.kd_lin);
      Maybe(n, "kp_ang", g.kp_ang);
      Maybe(n, "integral_gate_radius", g.integral_gate_radius);
      Maybe(n, "stop_distance", g.stop_distance);
      Maybe(n, "goal_tolerance", g.goal_tolerance);
      Maybe(n, "heading_tolerance", g.heading_tolerance);
    }
    if (j.contains("tracker")) {
      const json& t = j.at("tracker");
      TrackerConfig& c = sc.tracker;
      Maybe(t, "particle_count", c.particle_count);
      Maybe(t, "process_noise_pos", c.process_noise_pos);
      Maybe(t, "process_noise_vel", c.process_noise_vel);
      Maybe(t, "measurement_noise", c.measurement_noise);
      Maybe(t, "sensor_range", c.sensor_range);
      Maybe(t, "update_rate", c.update_rate);
      Maybe(t, "drop_timeout", c.drop_timeout);
      Maybe(t, "initial_velocity_spread", c.initial_velocity_spread);
      Maybe(t, "gate_floor", c.gate_floor);
      Maybe(t, "closing_window", c.closing_window);
      Maybe(t, "perfect", c.perfect);
    }
    if (j.contains("social_force")) {
      const json& s = j.at("social_force");
      SocialForceParams& p = sc.social_force;
      Maybe(s, "tau", p.tau);
      Maybe(s, "a", p.a);
      Maybe(s, "b", p.b);
      Maybe(s, "wall_a", p.wall_a);
      Maybe(s, "wall_b", p.wall_b);
      Maybe(s, "anticipation_horizon", p.anticipation_horizon);
      Maybe(s, "speed_cap_factor", p.speed_cap_factor);
      Maybe(s, "arrival_radius", p.arrival_radius);
      Maybe(s, "lane_keep_distance", p.lane_keep_distance);
    }
    if (j.contains("blocker")) {
      const json& b = j.at("blocker");
      BlockerParams& p = sc.blocker;
      Maybe(b, "commit_distance", p.commit_distance);
      Maybe(b, "dwell_time", p.dwell_time);
      Maybe(b, "lateral_speed", p.lateral_speed);
      Maybe(b, "lateral_gain", p.lateral_gain);
      Maybe(b, "wall_margin", p.wall_margin);
      Maybe(b, "pass_forward_factor", p.pass_forward_factor);
    }
    if (j.contains("perturbation")) {
      const json& p = j.at("perturbation");
      if (p.contains("speed")) {
        sc.perturbation.speed = ReadRange(p.at("speed"), "perturbation speed");
      }
      if (p.contains("lateral")) {
        sc.perturbation.lateral =
            ReadRange(p.at("lateral"), "perturbation lateral");
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("scenario: ") + e.what());
  }
  sc.tracker.closing_window = sc.planner.closing_window;
  sc.Validate();
  return sc;
}

Scenario LoadScenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open scenario file " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseScenario(buffer.str());
}

Scenario ResolveScenario(const Scenario& scenario) {
  Scenario sc = scenario;
  sc.planner.rotation_enabled = sc.condition.rotation;
  sc.planner.slide_enabled = sc.condition.slide;
  if (!sc.pedestrians.empty() &&
      (sc.perturbation.speed || sc.perturbation.lateral)) {
    std::mt19937_64 rng(Mix(sc.seed ^ 0x5ce9a71c0ffeeULL));
    PedestrianSpec& ped = sc.pedestrians.front();
    if (sc.perturbation.speed) {
      std::uniform_real_distribution<double> u(sc.perturbation.speed->first,
                                               sc.perturbation.speed->second);
      ped.speed = u(rng);
    }
    if (sc.perturbation.lateral) {
      std::uniform_real_distribution<double> u(sc.perturbation.lateral->first,
                                               sc.perturbation.lateral->second);
      const double offset = u(rng);
      if (const auto index = sc.world.AisleIndexAt(ped.start)) {
        const Aisle& aisle = sc.world.aisles[*index];
        ped.start = aisle.PointAt(aisle.Along(ped.start), offset);
        ped.goal = aisle.PointAt(aisle.Along(ped.goal), offset);
      }
    }
  }
  sc.Validate();
  return sc;
}

Scenario NominalCrossingScenario() {
  Scenario sc;
  sc.name = "nominal_crossing";
  sc.pedestrians.push_back(
      PedestrianSpec{{7.8, 0.0}, {0.2, 0.0}, Behaviour::kSocialForce, 1.2, {}});
  sc.tracker.perfect = true;
  return sc;
}

}  // namespace crossing
