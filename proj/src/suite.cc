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

#include "crossing/suite.h"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <future>
#include <iterator>
#include <limits>
#include <span>
#include <stdexcept>
#include <thread>

#include "crossing/export.h"

namespace crossing {

namespace {

ConditionSummary Summarize(const Condition& condition,
                           std::span<const SuiteRun> runs) {
  ConditionSummary s;
  s.condition = condition;
  s.min_clearance = std::numeric_limits<double>::infinity();
  double lead_sum = 0.0;
  int lead_count = 0;
  for (const SuiteRun& run : runs) {
    const CrossingMetrics& m = run.result.metrics;
    ++s.runs;
    if (m.collision) ++s.collisions;
    if (m.outcome == Outcome::kTimeout) ++s.timeouts;
    s.mean_traversal_time += m.traversal_time;
    s.mean_min_clearance += m.min_clearance;
    s.min_clearance = std::min(s.min_clearance, m.min_clearance);
    if (m.rotation_lead) {
      lead_sum += *m.rotation_lead;
      ++lead_count;
    }
    s.limit_violations += m.limit_violations;
    s.wall_penetrations += m.wall_penetrations;
    if (m.step_performed) ++s.steps;
  }
  if (s.runs > 0) {
    s.mean_traversal_time /= s.runs;
    s.mean_min_clearance /= s.runs;
  }
  if (lead_count > 0) s.mean_rotation_lead = lead_sum / lead_count;
  return s;
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::vector<Condition> ConditionGrid() {
  return {{true, true}, {true, false}, {false, true}, {false, false}};
}

std::string ConditionLabel(const Condition& c) {
  return fmt::format("rotation_{}_slide_{}", c.rotation ? "on" : "off",
                     c.slide ? "on" : "off");
}

std::string TraceFileName(const Condition& condition, std::uint64_t seed) {
  return fmt::format("trace_{}_seed{}.csv", ConditionLabel(condition), seed);
}

SuiteResult RunConditionSuite(const Scenario& base,
                              const std::vector<std::uint64_t>& seeds,
                              const std::optional<std::filesystem::path>& out_dir) {
  base.Validate();
  const std::vector<Condition> grid = ConditionGrid();

  SuiteResult result;
  for (const Condition& c : grid) {
    for (std::uint64_t seed : seeds) result.runs.push_back({c, seed, {}});
  }

  const std::size_t workers =
      std::max<std::size_t>(1, std::thread::hardware_concurrency());
  for (std::size_t begin = 0; begin < result.runs.size(); begin += workers) {
    const std::size_t end = std::min(begin + workers, result.runs.size());
    std::vector<std::future<RunResult>> batch;
    for (std::size_t i = begin; i < end; ++i) {
      Scenario sc = base;
      sc.condition = result.runs[i].condition;
      sc.seed = result.runs[i].seed;
      batch.push_back(std::async(std::launch::async,
                                 [sc = std::move(sc)] { return RunScenario(sc); }));
    }
    for (std::size_t i = begin; i < end; ++i) {
      result.runs[i].result = batch[i - begin].get();
    }
  }

  const std::span<const SuiteRun> all(result.runs);
  for (std::size_t c = 0; c < grid.size(); ++c) {
    result.summary.push_back(
        Summarize(grid[c], all.subspan(c * seeds.size(), seeds.size())));
  }
  result.failed = std::any_of(result.runs.begin(), result.runs.end(),
                              [](const SuiteRun& r) {
                                return r.result.metrics.collision;
                              });

  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    WriteText(*out_dir / "summary.csv", SummaryToCsv(result.summary));
    for (const SuiteRun& run : result.runs) {
      ExportCsv(run.result.trace, *out_dir / TraceFileName(run.condition, run.seed));
    }
  }
  return result;
}

std::string SummaryToCsv(const std::vector<ConditionSummary>& summary) {
  std::string out =
      "condition,rotation,slide,runs,collisions,timeouts,mean_traversal_time,"
      "min_clearance,mean_min_clearance,mean_rotation_lead,limit_violations,"
      "wall_penetrations,steps\n";
  for (const ConditionSummary& s : summary) {
    fmt::format_to(std::back_inserter(out), "{},{},{},{},{},{},{:.6g},{:.6g},{:.6g},",
                   ConditionLabel(s.condition), s.condition.rotation ? 1 : 0,
                   s.condition.slide ? 1 : 0, s.runs, s.collisions, s.timeouts,
                   s.mean_traversal_time, s.min_clearance, s.mean_min_clearance);
    if (s.mean_rotation_lead) {
      fmt::format_to(std::back_inserter(out), "{:.6g}", *s.mean_rotation_lead);
    }
    fmt::format_to(std::back_inserter(out), ",{},{},{}\n", s.limit_violations,
                   s.wall_penetrations, s.steps);
  }
  return out;
}

}  // namespace crossing
