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

#ifndef CROSSING_SUITE_H_
#define CROSSING_SUITE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "crossing/simulation.h"

namespace crossing {

// The 2x2 grid in stable order: (on,on), (on,off), (off,on), (off,off) for
// (rotation, slide).
std::vector<Condition> ConditionGrid();
std::string ConditionLabel(const Condition& condition);

struct SuiteRun {
  Condition condition;
  std::uint64_t seed = 0;
  RunResult result;
};

struct ConditionSummary {
  Condition condition;
  int runs = 0;
  int collisions = 0;
  int timeouts = 0;
  double mean_traversal_time = 0.0;
  double min_clearance = 0.0;
  double mean_min_clearance = 0.0;
  std::optional<double> mean_rotation_lead;
  int limit_violations = 0;
  int wall_penetrations = 0;
  int steps = 0;
};

struct SuiteResult {
  std::vector<SuiteRun> runs;  // condition-major, then seed order
  std::vector<ConditionSummary> summary;
  bool failed = false;  // any collision
};

// Runs every condition for every seed. Runs execute in parallel; results are
// ordered by (condition, seed) regardless of completion order. When
// `out_dir` is given, writes summary.csv and one trace CSV per run.
SuiteResult RunConditionSuite(const Scenario& base,
                              const std::vector<std::uint64_t>& seeds,
                              const std::optional<std::filesystem::path>& out_dir =
                                  std::nullopt);

std::string SummaryToCsv(const std::vector<ConditionSummary>& summary);
std::string TraceFileName(const Condition& condition, std::uint64_t seed);

}  // namespace crossing

#endif  // CROSSING_SUITE_H_
