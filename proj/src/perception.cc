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

#include "crossing/perception.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace crossing {

namespace {

constexpr double kWideGateFactor = 2.0;
// Sorts every wide-gate pair after all normal-gate pairs.
constexpr double kWideGateOffset = 1e6;
// Narrower likelihoods collapse the cloud onto a single particle.
constexpr double kLikelihoodFloor = 0.02;  // m

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void TrackerConfig::Validate() const {
  if (particle_count < 100) {
    throw std::invalid_argument("tracker: particle_count must be >= 100");
  }
  if (process_noise_pos < 0.0 || process_noise_vel < 0.0 ||
      measurement_noise < 0.0 || initial_velocity_spread < 0.0 ||
      gate_floor < 0.0) {
    throw std::invalid_argument("tracker: noise parameters must be >= 0");
  }
  if (!(sensor_range > 0.0 && update_rate > 0.0 && drop_timeout > 0.0 &&
        closing_window > 0.0)) {
    throw std::invalid_argument("tracker: range, rate, timeout must be > 0");
  }
}

bool LineOfSightBlocked(const Vec2& from, const Vec2& to,
                        const CorridorWorld& world) {
  const Segment ray{from, to};
  return std::any_of(world.walls.begin(), world.walls.end(),
                     [&](const Segment& w) { return SegmentsIntersect(ray, w); });
}

std::vector<Detection> Sense(const CorridorWorld& world,
                             const RobotState& robot,
                             std::span<const PedestrianState> pedestrians,
                             const TrackerConfig& config, std::uint64_t seed,
                             std::int64_t tick) {
  std::vector<Detection> out;
  const Vec2 origin = robot.pose.position();
  const double sigma = config.perfect ? 0.0 : config.measurement_noise;
  for (std::size_t i = 0; i < pedestrians.size(); ++i) {
    const Vec2 truth = pedestrians[i].position;
    if (Distance(truth, origin) > config.sensor_range) continue;
    if (!config.perfect && LineOfSightBlocked(origin, truth, world)) continue;
    Vec2 noisy = truth;
    if (sigma > 0.0) {
      std::mt19937_64 rng(SplitMix64(
          seed ^ SplitMix64(static_cast<std::uint64_t>(tick) ^
                            SplitMix64(static_cast<std::uint64_t>(i)))));
      std::normal_distribution<double> noise(0.0, sigma);
      noisy.x += noise(rng);
      noisy.y += noise(rng);
    }
    out.push_back({noisy, tick});
  }
  return out;
}

PeopleTracker::PeopleTracker(const TrackerConfig& config, std::uint64_t seed)
    : config_(config), rng_(SplitMix64(seed)) {
  config_.Validate();
}

double PeopleTracker::Gate(std::size_t index) const {
  const double sigma = config_.perfect ? 0.0 : config_.measurement_noise;
  return std::max(3.0 * sigma + tracks_[index].position_spread,
                  config_.gate_floor);
}

void PeopleTracker::Predict(std::size_t index, double dt) {
  TrackedPerson& track = tracks_[index];
  if (config_.perfect) {
    track.position_estimate += track.velocity_estimate * dt;
    return;
  }
  std::normal_distribution<double> pos_noise(
      0.0, config_.process_noise_pos * std::sqrt(dt));
  std::normal_distribution<double> vel_noise(
      0.0, config_.process_noise_vel * std::sqrt(dt));
  for (Particle& p : particles_[index]) {
    p.position += p.velocity * dt;
    p.position.x += pos_noise(rng_);
    p.position.y += pos_noise(rng_);
    p.velocity.x += vel_noise(rng_);
    p.velocity.y += vel_noise(rng_);
  }
  Summarize(index);
}

void PeopleTracker::Correct(std::size_t index, const Detection& detection) {
  TrackedPerson& track = tracks_[index];
  if (config_.perfect) {
    const double elapsed = time_ - track.last_seen_time;
    const Vec2 previous = track.position_estimate -
                          track.velocity_estimate * (time_ - track.last_seen_time);
    track.velocity_estimate = elapsed > 0.0
                                  ? (detection.position - previous) / elapsed
                                  : Vec2{};
    track.position_estimate = detection.position;
    track.position_spread = 0.0;
  } else {
    std::vector<Particle>& particles = particles_[index];
    const double sigma = std::max(config_.measurement_noise, kLikelihoodFloor);
    std::vector<double> log_w(particles.size());
    for (std::size_t i = 0; i < particles.size(); ++i) {
      log_w[i] = -(particles[i].position - detection.position).SquaredNorm() /
                 (2.0 * sigma * sigma);
    }
    const double max_log = *std::max_element(log_w.begin(), log_w.end());
    std::vector<double> cumulative(particles.size());
    double total = 0.0;
    for (std::size_t i = 0; i < particles.size(); ++i) {
      total += std::exp(log_w[i] - max_log);
      cumulative[i] = total;
    }
    // Systematic resampling.
    const std::size_t n = particles.size();
    std::uniform_real_distribution<double> uniform(0.0, 1.0 / n);
    const double start = uniform(rng_);
    std::vector<Particle> resampled;
    resampled.reserve(n);
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = (start + static_cast<double>(i) / n) * total;
      while (j + 1 < n && cumulative[j] < u) ++j;
      resampled.push_back(particles[j]);
    }
    particles = std::move(resampled);
    Summarize(index);
  }
  track.last_seen_tick = detection.tick;
  track.last_seen_time = time_;
  ++track.update_count;
}

void PeopleTracker::Summarize(std::size_t index) {
  const std::vector<Particle>& particles = particles_[index];
  TrackedPerson& track = tracks_[index];
  Vec2 mean_p;
  Vec2 mean_v;
  for (const Particle& p : particles) {
    mean_p += p.position;
    mean_v += p.velocity;
  }
  const double n = static_cast<double>(particles.size());
  mean_p = mean_p / n;
  mean_v = mean_v / n;
  double spread2 = 0.0;
  for (const Particle& p : particles) {
    spread2 += (p.position - mean_p).SquaredNorm();
  }
  track.position_estimate = mean_p;
  track.velocity_estimate = mean_v;
  track.position_spread = std::sqrt(spread2 / n);
}

void PeopleTracker::Spawn(const Detection& detection) {
  TrackedPerson track;
  track.id = next_id_++;
  track.position_estimate = detection.position;
  track.last_seen_tick = detection.tick;
  track.last_seen_time = time_;
  track.update_count = 1;
  tracks_.push_back(track);

  std::vector<Particle> particles;
  if (!config_.perfect) {
    const double sigma = std::max(config_.measurement_noise, 1e-3);
    std::normal_distribution<double> pos(0.0, sigma);
    std::normal_distribution<double> vel(0.0, config_.initial_velocity_spread);
    particles.resize(config_.particle_count);
    for (Particle& p : particles) {
      p.position = detection.position + Vec2{pos(rng_), pos(rng_)};
      p.velocity = {vel(rng_), vel(rng_)};
    }
  }
  particles_.push_back(std::move(particles));
  if (!config_.perfect) Summarize(tracks_.size() - 1);
}

const std::vector<TrackedPerson>& PeopleTracker::Update(
    std::span<const Detection> detections, double dt,
    const Vec2& robot_position) {
  if (!(dt > 0.0)) throw std::invalid_argument("PeopleTracker: dt <= 0");
  time_ += dt;

  for (std::size_t i = 0; i < tracks_.size(); ++i) Predict(i, dt);

  // Greedy global nearest neighbour inside each track's gate. A second,
  // wider gate catches a person whose young track still underestimates its
  // own velocity; without it one walker splits into two tracks.
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t t = 0; t < tracks_.size(); ++t) {
    const double gate = Gate(t);
    for (std::size_t d = 0; d < detections.size(); ++d) {
      const double dist =
          Distance(tracks_[t].position_estimate, detections[d].position);
      if (dist <= gate) pairs.emplace_back(dist, t, d);
    }
  }
  // Pairs inside the wide gate only, tagged so the normal gate wins first.
  for (std::size_t t = 0; t < tracks_.size(); ++t) {
    const double gate = Gate(t);
    for (std::size_t d = 0; d < detections.size(); ++d) {
      const double dist =
          Distance(tracks_[t].position_estimate, detections[d].position);
      if (dist > gate && dist <= kWideGateFactor * gate) {
        pairs.emplace_back(kWideGateOffset + dist, t, d);
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<bool> track_used(tracks_.size(), false);
  std::vector<bool> detection_used(detections.size(), false);
  for (const auto& [dist, t, d] : pairs) {
    if (track_used[t] || detection_used[d]) continue;
    track_used[t] = true;
    detection_used[d] = true;
    Correct(t, detections[d]);
  }

  // Drop tracks that coasted too long.
  for (std::size_t t = tracks_.size(); t-- > 0;) {
    if (time_ - tracks_[t].last_seen_time > config_.drop_timeout + 1e-9) {
      tracks_.erase(tracks_.begin() + static_cast<std::ptrdiff_t>(t));
      particles_.erase(particles_.begin() + static_cast<std::ptrdiff_t>(t));
    }
  }

  for (std::size_t d = 0; d < detections.size(); ++d) {
    if (!detection_used[d]) Spawn(detections[d]);
  }

  for (TrackedPerson& track : tracks_) {
    track.range_history.push_back(
        {time_, Distance(track.position_estimate, robot_position)});
    const double oldest = time_ - 2.0 * config_.closing_window - 1e-9;
    std::erase_if(track.range_history,
                  [&](const RangeSample& s) { return s.time < oldest; });
  }
  return tracks_;
}

std::optional<double> RelativeClosingSpeed(const TrackedPerson& person,
                                           double window) {
  const auto& history = person.range_history;
  if (history.size() < 2) return std::nullopt;
  const double newest = history.back().time;
  double n = 0.0;
  double sum_t = 0.0;
  double sum_d = 0.0;
  for (const RangeSample& s : history) {
    if (s.time < newest - window - 1e-9) continue;
    n += 1.0;
    sum_t += s.time - newest;
    sum_d += s.distance;
  }
  if (n < 2.0) return std::nullopt;
  const double mean_t = sum_t / n;
  const double mean_d = sum_d / n;
  double stt = 0.0;
  double std_ = 0.0;
  for (const RangeSample& s : history) {
    if (s.time < newest - window - 1e-9) continue;
    const double dt = s.time - newest - mean_t;
    stt += dt * dt;
    std_ += dt * (s.distance - mean_d);
  }
  if (stt <= 0.0) return std::nullopt;
  return -std_ / stt;
}

}  // namespace crossing
