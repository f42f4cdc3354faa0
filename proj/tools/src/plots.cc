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

#include "plots.h"

#include <algorithm>
#include <cmath>

#include "analysis.h"
#include "format.h"

namespace ofcpoint {
namespace {

std::vector<double> time_axis(std::size_t frames, double h) {
  std::vector<double> t(frames);
  for (std::size_t n = 0; n < frames; ++n) t[n] = static_cast<double>(n) * h;
  return t;
}

PlotBand band(const std::vector<double>& t, const std::vector<double>& mean,
              const std::vector<double>& sd, const std::string& color) {
  PlotBand b;
  b.x = t;
  b.color = color;
  for (std::size_t n = 0; n < mean.size() && n < sd.size(); ++n) {
    b.lo.push_back(mean[n] - kBandZ * sd[n]);
    b.hi.push_back(mean[n] + kBandZ * sd[n]);
  }
  b.x.resize(b.lo.size());
  return b;
}

}  // namespace

std::vector<PlotPanel> run_panels(const ofc::ModelRun& run, const ofc::TaskSpec& task,
                                  const std::string& label) {
  const auto& k = run.kinematics;
  const auto t = time_axis(k.position.size(), task.h);
  const std::string& c = palette(0);
  PlotPanel pos{label + ": position", "time [s]", "position [m]", {{label, t, k.position, c}}, {},
                std::make_pair(task.target - 0.5 * task.width, task.target + 0.5 * task.width)};
  PlotPanel vel{label + ": velocity", "time [s]", "velocity [m/s]", {{"", t, k.velocity, c}}, {},
                std::nullopt};
  PlotPanel acc{label + ": acceleration", "time [s]", "acceleration [m/s^2]",
                {{"", t, k.acceleration, c}}, {}, std::nullopt};
  const Spread s = run_spread(run);
  if (!s.position.empty()) {
    pos.bands.push_back(band(t, k.position, s.position, c));
    vel.bands.push_back(band(t, k.velocity, s.velocity, c));
  }
  return {pos, vel, acc};
}

std::vector<PlotPanel> ensemble_panels(const ofc::TrajectoryEnsemble& e, const std::string& label) {
  const auto t = time_axis(e.frames(), e.h);
  std::vector<double> sp, sv;
  for (const auto& c : e.covariance) {
    sp.push_back(std::sqrt(std::max(0.0, c(0, 0))));
    sv.push_back(std::sqrt(std::max(0.0, c(1, 1))));
  }
  const std::string& c = palette(0);
  PlotPanel pos{label + ": position", "time [s]", "position [m]",
                {{"mean", t, e.mean_position, c}}, {band(t, e.mean_position, sp, c)}, std::nullopt};
  if (e.meta.target && e.meta.width) {
    pos.stripe = std::make_pair(*e.meta.target - 0.5 * *e.meta.width,
                                *e.meta.target + 0.5 * *e.meta.width);
  }
  for (std::size_t i = 0; i < e.trials.size() && i < 20; ++i) {
    pos.lines.push_back({"", t, e.trials[i], "#bbbbbb"});
  }
  // Keep the mean on top.
  std::rotate(pos.lines.begin(), pos.lines.begin() + 1, pos.lines.end());
  PlotPanel vel{label + ": velocity", "time [s]", "velocity [m/s]",
                {{"mean", t, e.mean_velocity, c}}, {band(t, e.mean_velocity, sv, c)},
                std::nullopt};
  return {pos, vel};
}

std::vector<PlotPanel> sweep_panels(const std::vector<ofc::ModelRun>& runs,
                                    const std::vector<double>& values, const std::string& param,
                                    const ofc::TaskSpec& task) {
  PlotPanel pos{"position, " + param + " sweep", "time [s]", "position [m]", {}, {},
                std::make_pair(task.target - 0.5 * task.width, task.target + 0.5 * task.width)};
  PlotPanel vel{"velocity, " + param + " sweep", "time [s]", "velocity [m/s]", {}, {},
                std::nullopt};
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& k = runs[i].kinematics;
    const auto t = time_axis(k.position.size(), task.h);
    const std::string name = param + "=" + fmt(values[i]);
    pos.lines.push_back({name, t, k.position, palette(i)});
    vel.lines.push_back({"", t, k.velocity, palette(i)});
  }
  return {pos, vel};
}

}  // namespace ofcpoint
