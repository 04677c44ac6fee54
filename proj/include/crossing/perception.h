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

#ifndef CROSSING_PERCEPTION_H_
#define CROSSING_PERCEPTION_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "crossing/geometry.h"
#include "crossing/kinematics.h"
#include "crossing/pedestrian.h"
#include "crossing/world.h"

namespace crossing {

struct Detection {
  Vec2 position;
  std::int64_t tick = 0;
};

struct TrackerConfig {
  int particle_count = 300;
  double process_noise_pos = 0.05;  // m / sqrt(s)
  double process_noise_vel = 0.5;   // m/s / sqrt(s)
  double measurement_noise = 0.05;  // m
  double sensor_range = 20.0;       // m
  double update_rate = 10.0;        // Hz
  double drop_timeout = 1.0;        // s
  double initial_velocity_spread = 0.5;  // m/s
  double gate_floor = 0.25;              // m, smallest association radius
  double closing_window = 0.5;           // s, closing-speed regression window
  // Zero noise, no occlusion and a tracker that adopts detections directly.
  bool perfect = false;

  void Validate() const;
};

struct RangeSample {
  double time = 0.0;
  double distance = 0.0;
};

struct TrackedPerson {
  int id = 0;
  Vec2 position_estimate;
  Vec2 velocity_estimate;
  double position_spread = 0.0;
  std::int64_t last_seen_tick = 0;
  double last_seen_time = 0.0;
  int update_count = 0;
  // Robot-to-person distance at recent updates, oldest first.
  std::vector<RangeSample> range_history;
};

// True when the straight line from `from` to `to` crosses a wall.
bool LineOfSightBlocked(const Vec2& from, const Vec2& to,
                        const CorridorWorld& world);

// One noisy detection per pedestrian that is within range and visible.
// Noise draws depend only on (seed, tick, pedestrian index).
std::vector<Detection> Sense(const CorridorWorld& world,
                             const RobotState& robot,
                             std::span<const PedestrianState> pedestrians,
                             const TrackerConfig& config, std::uint64_t seed,
                             std::int64_t tick);

// Constant-velocity particle filter over several people with nearest-
// neighbour association. Single owner; not thread-safe.
class PeopleTracker {
 public:
  PeopleTracker(const TrackerConfig& config, std::uint64_t seed);

  // One predict/associate/update cycle. `robot_position` feeds the range
  // history used for closing-speed estimation.
  const std::vector<TrackedPerson>& Update(std::span<const Detection> detections,
                                           double dt,
                                           const Vec2& robot_position);

  const std::vector<TrackedPerson>& tracks() const { return tracks_; }
  double time() const { return time_; }

 private:
  struct Particle {
    Vec2 position;
    Vec2 velocity;
  };

  void Predict(std::size_t index, double dt);
  void Correct(std::size_t index, const Detection& detection);
  void Summarize(std::size_t index);
  void Spawn(const Detection& detection);
  double Gate(std::size_t index) const;

  TrackerConfig config_;
  std::mt19937_64 rng_;
  double time_ = 0.0;
  int next_id_ = 1;
  std::vector<TrackedPerson> tracks_;
  std::vector<std::vector<Particle>> particles_;
};

// Closing speed -d(distance)/dt from a least-squares line through the range
// samples of the last `window` seconds; positive when approaching. Empty when
// fewer than two samples are available.
std::optional<double> RelativeClosingSpeed(const TrackedPerson& person,
                                           double window = 0.5);

}  // namespace crossing

#endif  // CROSSING_PERCEPTION_H_
