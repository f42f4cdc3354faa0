// Copyright 2026 The ofc-pointing Authors
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

#ifndef OFCPOINT_SVG_H_
#define OFCPOINT_SVG_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ofcpoint {

struct PlotLine {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool dashed = false;
};

// Shaded region between lo and hi.
struct PlotBand {
  std::vector<double> x;
  std::vector<double> lo;
  std::vector<double> hi;
  std::string color = "#1f77b4";
};

struct PlotPanel {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<PlotLine> lines;
  std::vector<PlotBand> bands;
  // Horizontal stripe, e.g. the target band.
  std::optional<std::pair<double, double>> stripe;
};

// Panels are stacked vertically in one self-contained document.
std::string render_svg(const std::vector<PlotPanel>& panels);

const std::string& palette(std::size_t i);

}  // namespace ofcpoint

#endif  // OFCPOINT_SVG_H_
