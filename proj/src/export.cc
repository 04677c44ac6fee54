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

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <stdexcept>

namespace crossing {

namespace {

constexpr double kPixelsPerMeter = 100.0;
constexpr double kMargin = 0.5;  // m

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::size_t PedestrianCount(const SimTrace& trace) {
  if (!trace.rows.empty()) return trace.rows.front().pedestrian_positions.size();
  return trace.pedestrian_radii.size();
}

void AppendNumber(std::string& out, double value) {
  fmt::format_to(std::back_inserter(out), ",{:.6g}", value);
}

// Maps world coordinates onto the SVG canvas (y grows downward there).
struct Canvas {
  double min_x = 0.0;
  double max_y = 0.0;
  double width = 0.0;
  double height = 0.0;

  double X(double x) const { return (x - min_x) * kPixelsPerMeter; }
  double Y(double y) const { return (max_y - y) * kPixelsPerMeter; }
};

Canvas FitCanvas(const SimTrace& trace) {
  double lo_x = std::numeric_limits<double>::infinity();
  double lo_y = lo_x;
  double hi_x = -lo_x;
  double hi_y = -lo_x;
  auto grow = [&](const Vec2& p) {
    lo_x = std::min(lo_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_x = std::max(hi_x, p.x);
    hi_y = std::max(hi_y, p.y);
  };
  for (const Segment& w : trace.world.walls) {
    grow(w.a);
    grow(w.b);
  }
  for (const TraceRow& row : trace.rows) {
    grow(row.robot_pose.position());
    for (const Vec2& p : row.pedestrian_positions) grow(p);
  }
  if (!std::isfinite(lo_x)) lo_x = lo_y = hi_x = hi_y = 0.0;
  Canvas c;
  c.min_x = lo_x - kMargin;
  c.max_y = hi_y + kMargin;
  c.width = (hi_x - lo_x + 2.0 * kMargin) * kPixelsPerMeter;
  c.height = (hi_y - lo_y + 2.0 * kMargin) * kPixelsPerMeter;
  return c;
}

template <typename PointAt>
std::string Polyline(const SimTrace& trace, const Canvas& c, PointAt point_at) {
  std::string points;
  for (const TraceRow& row : trace.rows) {
    const Vec2 p = point_at(row);
    if (!points.empty()) points += ' ';
    fmt::format_to(std::back_inserter(points), "{:.2f},{:.2f}", c.X(p.x), c.Y(p.y));
  }
  return points;
}

}  // namespace

std::string TraceToCsv(const SimTrace& trace) {
  std::string out =
      "tick,time,robot_x,robot_y,robot_heading,robot_vx,robot_vy,robot_omega,"
      "mode,rotating";
  const std::size_t peds = PedestrianCount(trace);
  for (std::size_t i = 0; i < peds; ++i) {
    fmt::format_to(std::back_inserter(out), ",ped{0}_x,ped{0}_y", i);
  }
  out +=
      ",track_count,track_id,track_x,track_y,track_vx,track_vy,cmd_vx,cmd_vy,"
      "cmd_omega,min_clearance,side,target_heading,t_cross\n";

  for (const TraceRow& row : trace.rows) {
    fmt::format_to(std::back_inserter(out), "{}", row.tick);
    AppendNumber(out, row.time);
    AppendNumber(out, row.robot_pose.x);
    AppendNumber(out, row.robot_pose.y);
    AppendNumber(out, row.robot_pose.heading);
    AppendNumber(out, row.robot_twist.vx);
    AppendNumber(out, row.robot_twist.vy);
    AppendNumber(out, row.robot_twist.omega);
    fmt::format_to(std::back_inserter(out), ",{},{}", ToString(row.mode),
                   row.rotating ? 1 : 0);
    for (const Vec2& p : row.pedestrian_positions) {
      AppendNumber(out, p.x);
      AppendNumber(out, p.y);
    }
    fmt::format_to(std::back_inserter(out), ",{}", row.track_count);
    if (row.track) {
      fmt::format_to(std::back_inserter(out), ",{}", row.track->id);
      AppendNumber(out, row.track->position_estimate.x);
      AppendNumber(out, row.track->position_estimate.y);
      AppendNumber(out, row.track->velocity_estimate.x);
      AppendNumber(out, row.track->velocity_estimate.y);
    } else {
      out += ",,,,,";
    }
    AppendNumber(out, row.command.vx);
    AppendNumber(out, row.command.vy);
    AppendNumber(out, row.command.omega);
    AppendNumber(out, row.min_clearance);
    fmt::format_to(std::back_inserter(out), ",{}", ToString(row.side));
    AppendNumber(out, row.target_heading);
    if (row.t_cross) {
      AppendNumber(out, *row.t_cross);
    } else {
      out += ',';
    }
    out += '\n';
  }
  return out;
}

void ExportCsv(const SimTrace& trace, const std::filesystem::path& path) {
  WriteFile(path, TraceToCsv(trace));
}

std::string RenderSvg(const SimTrace& trace) {
  const Canvas c = FitCanvas(trace);
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" "
      "height=\"{1:.0f}\" viewBox=\"0 0 {0:.0f} {1:.0f}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      c.width, c.height);
  auto emit = [&out](std::string_view s) { out.append(s); };

  for (const Segment& w : trace.world.walls) {
    emit(fmt::format(
        "<line class=\"wall\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" "
        "y2=\"{:.2f}\" stroke=\"#444\" stroke-width=\"4\"/>\n",
        c.X(w.a.x), c.Y(w.a.y), c.X(w.b.x), c.Y(w.b.y)));
  }
  if (trace.rows.empty()) {
    emit("</svg>\n");
    return out;
  }

  emit(fmt::format(
      "<polyline class=\"robot-path\" fill=\"none\" stroke=\"#1f77b4\" "
      "stroke-width=\"2\" points=\"{}\"/>\n",
      Polyline(trace, c, [](const TraceRow& r) { return r.robot_pose.position(); })));
  const std::size_t peds = trace.rows.front().pedestrian_positions.size();
  for (std::size_t i = 0; i < peds; ++i) {
    emit(fmt::format(
        "<polyline class=\"pedestrian-path\" data-index=\"{}\" fill=\"none\" "
        "stroke=\"#d62728\" stroke-width=\"2\" points=\"{}\"/>\n",
        i, Polyline(trace, c, [i](const TraceRow& r) {
          return r.pedestrian_positions[i];
        })));
  }

  const auto glyph_ticks = std::max<std::int64_t>(
      1, std::llround(kGlyphPeriod / trace.dt_physics));
  const double glyph_length = 0.25;
  auto glyph = [&](const TraceRow& row, std::string_view cls,
                   std::string_view colour) {
    const Vec2 p = row.robot_pose.position();
    const Vec2 tip = p + UnitFromAngle(row.robot_pose.heading) * glyph_length;
    emit(fmt::format(
        "<line class=\"{}\" data-tick=\"{}\" data-heading=\"{:.6g}\" "
        "x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
        "stroke=\"{}\" stroke-width=\"2\"/>\n",
        cls, row.tick, row.robot_pose.heading, c.X(p.x), c.Y(p.y), c.X(tip.x),
        c.Y(tip.y), colour));
  };
  for (const TraceRow& row : trace.rows) {
    if (row.tick % glyph_ticks == 0) glyph(row, "heading-glyph", "#1f77b4");
  }

  const CrossingMetrics metrics = ComputeMetrics(trace);
  if (metrics.crossing_tick) {
    const TraceRow& row = trace.rows[static_cast<std::size_t>(
        *metrics.crossing_tick - trace.rows.front().tick)];
    const Vec2 p = row.robot_pose.position();
    emit(fmt::format(
        "<circle class=\"crossing-marker\" data-tick=\"{}\" cx=\"{:.2f}\" "
        "cy=\"{:.2f}\" r=\"{:.2f}\" fill=\"none\" stroke=\"#2ca02c\" "
        "stroke-width=\"2\"/>\n",
        row.tick, c.X(p.x), c.Y(p.y), trace.world.robot_radius * kPixelsPerMeter));
    glyph(row, "crossing-glyph", "#2ca02c");
  }
  emit("</svg>\n");
  return out;
}

void ExportSvg(const SimTrace& trace, const std::filesystem::path& path) {
  WriteFile(path, RenderSvg(trace));
}

}  // namespace crossing
