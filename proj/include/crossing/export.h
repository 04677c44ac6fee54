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

#ifndef CROSSING_EXPORT_H_
#define CROSSING_EXPORT_H_

#include <filesystem>
#include <string>

#include "crossing/simulation.h"

namespace crossing {

// Seconds between heading glyphs in the SVG.
inline constexpr double kGlyphPeriod = 0.5;

// One header line plus one line per row. Floats use 6 significant digits so
// the output is byte-stable for a given scenario and seed.
std::string TraceToCsv(const SimTrace& trace);

// Throws std::runtime_error when the file cannot be written.
void ExportCsv(const SimTrace& trace, const std::filesystem::path& path);

// Top-down drawing: walls, robot path with heading glyphs every
// kGlyphPeriod, pedestrian paths and the closest-approach marker.
std::string RenderSvg(const SimTrace& trace);
void ExportSvg(const SimTrace& trace, const std::filesystem::path& path);

}  // namespace crossing

#endif  // CROSSING_EXPORT_H_
