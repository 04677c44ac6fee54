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

// Command line front end: single runs, the 2x2 condition suite and the
// oracle checks.

#include <fmt/format.h>

#include <cstdint>
#include <exception>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crossing/export.h"
#include "crossing/oracle/oracle.h"
#include "crossing/simulation.h"
#include "crossing/suite.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // collision, timeout or failed check
constexpr int kExitError = 2;    // bad input or IO

std::optional<bool> Switch(const std::string& value) {
  if (value.empty()) return std::nullopt;
  return value == "on";
}

void PrintMetrics(const crossing::CrossingMetrics& m) {
  auto opt = [](const auto& v) {
    return v ? fmt::format("{}", *v) : std::string("-");
  };
  fmt::print("outcome            {}\n", crossing::ToString(m.outcome));
  fmt::print("collision          {}\n", m.collision);
  fmt::print("min_clearance      {:.4f} m\n", m.min_clearance);
  fmt::print("traversal_time     {:.2f} s\n", m.traversal_time);
  fmt::print("crossing_tick      {}\n", opt(m.crossing_tick));
  fmt::print("rotation_trigger   {}\n", opt(m.rotation_trigger_tick));
  fmt::print("rotation_complete  {}\n", opt(m.rotation_complete_tick));
  fmt::print("rotation_lead      {}\n",
             m.rotation_lead ? fmt::format("{:.2f} s", *m.rotation_lead) : "-");
  fmt::print("step_performed     {}\n", m.step_performed);
  fmt::print("step_distance      {}\n",
             m.step_trigger_distance
                 ? fmt::format("{:.3f} m", *m.step_trigger_distance)
                 : "-");
  fmt::print("stopped_crossing   {}\n", m.robot_stopped_during_crossing);
  fmt::print("limit_violations   {}\n", m.limit_violations);
  fmt::print("wall_penetrations  {}\n", m.wall_penetrations);
}

int Run(const std::string& scenario_path, const std::string& rotation,
        const std::string& slide, std::optional<std::uint64_t> seed,
        const std::string& trace_path, const std::string& svg_path) {
  crossing::Scenario sc = crossing::LoadScenario(scenario_path);
  if (auto r = Switch(rotation)) sc.condition.rotation = *r;
  if (auto s = Switch(slide)) sc.condition.slide = *s;
  if (seed) sc.seed = *seed;
  const crossing::RunResult result = crossing::RunScenario(sc);
  if (!trace_path.empty()) crossing::ExportCsv(result.trace, trace_path);
  if (!svg_path.empty()) crossing::ExportSvg(result.trace, svg_path);
  PrintMetrics(result.metrics);
  const bool ok = !result.metrics.collision &&
                  result.metrics.outcome == crossing::Outcome::kGoalReached;
  return ok ? kExitOk : kExitFailure;
}

int Suite(const std::string& scenario_path, int seed_count,
          const std::string& out_dir) {
  const crossing::Scenario sc = crossing::LoadScenario(scenario_path);
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(seed_count));
  std::iota(seeds.begin(), seeds.end(), std::uint64_t{1});
  const crossing::SuiteResult result = crossing::RunConditionSuite(
      sc, seeds,
      out_dir.empty() ? std::nullopt
                      : std::optional<std::filesystem::path>(out_dir));
  fmt::print("{}", crossing::SummaryToCsv(result.summary));
  int timeouts = 0;
  for (const auto& s : result.summary) timeouts += s.timeouts;
  if (result.failed) fmt::print(stderr, "suite failed: collision detected\n");
  return result.failed || timeouts > 0 ? kExitFailure : kExitOk;
}

int Oracle(std::uint64_t seed) {
  bool all = true;
  for (const auto& check : crossing::oracle::RunAllChecks(seed)) {
    fmt::print("{} {}: worst {:.3e} (tolerance {:.0e})\n",
               check.passed ? "PASS" : "FAIL", check.name, check.worst,
               check.tolerance);
    all = all && check.passed;
  }
  return all ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corridor crossing simulator"};
  app.require_subcommand(1);

  std::string scenario;
  std::string rotation;
  std::string slide;
  std::optional<std::uint64_t> seed;
  std::string trace;
  std::string svg;
  CLI::App* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("--scenario", scenario, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--rotation", rotation, "on|off")
      ->check(CLI::IsMember({"on", "off"}));
  run->add_option("--slide", slide, "on|off")->check(CLI::IsMember({"on", "off"}));
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--trace", trace, "Write the trace CSV here");
  run->add_option("--svg", svg, "Write a top-down SVG here");

  int seed_count = 10;
  std::string out_dir;
  CLI::App* suite = app.add_subcommand("suite", "Run the 2x2 condition grid");
  suite->add_option("--scenario", scenario, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  suite->add_option("--seeds", seed_count, "Seeds 1..N per condition")
      ->check(CLI::PositiveNumber);
  suite->add_option("--out", out_dir, "Output directory");

  std::uint64_t oracle_seed = 7;
  CLI::App* oracle = app.add_subcommand("oracle", "Run the brute-force checks");
  oracle->add_option("--seed", oracle_seed, "Random seed for the checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return Run(scenario, rotation, slide, seed, trace, svg);
    if (*suite) return Suite(scenario, seed_count, out_dir);
    if (*oracle) return Oracle(oracle_seed);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitError;
  }
  return kExitError;
}
