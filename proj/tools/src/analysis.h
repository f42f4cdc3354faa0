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

#ifndef OFCPOINT_ANALYSIS_H_
#define OFCPOINT_ANALYSIS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ofc/metrics.h"
#include "ofc/model_registry.h"
#include "ofc/preprocess.h"
#include "ofc/task.h"

namespace ofcpoint {

// First step n with |p_n - target| <= width / 2.
std::optional<int> time_to_target(std::span<const double> position, double target, double width);

struct RunSummary {
  double peak_velocity = 0.0;  // along the movement direction
  std::optional<int> time_to_target;
  double terminal_std = 0.0;   // positional, 0 for deterministic models
  double final_position = 0.0;
  double overshoot = 0.0;      // farthest excursion beyond the target, >= 0
};

RunSummary summarize(const ofc::ModelRun& run, const ofc::TaskSpec& task);

// Per-frame standard deviations of position and velocity, empty for deterministic runs.
struct Spread {
  std::vector<double> position;
  std::vector<double> velocity;
};
Spread run_spread(const ofc::ModelRun& run);

// Mean kinematics plus an optional position/velocity distribution.
// Deterministic models carry a zero-covariance distribution; they enter the
// Wasserstein comparison but have no defined KL divergence.
struct Kinematics {
  std::vector<double> position;
  std::vector<double> velocity;
  std::vector<double> acceleration;
  std::optional<ofc::GaussianSeries> distribution;
  bool point_mass = false;
};

// Acceleration from the smoothed second derivative of the mean position.
Kinematics ensemble_kinematics(const ofc::TrajectoryEnsemble& e);
Kinematics run_kinematics(const ofc::ModelRun& run);

struct Comparison {
  std::size_t reference_frames = 0;
  std::size_t candidate_frames = 0;
  std::size_t frames = 0;  // common prefix actually compared
  double sse_position = 0.0;
  double sse_velocity = 0.0;
  double sse_acceleration = 0.0;
  double max_position = 0.0;
  double max_velocity = 0.0;
  double max_acceleration = 0.0;
  std::optional<double> mwd;
  std::optional<double> mkl;
};

Comparison compare(const Kinematics& reference, const Kinematics& candidate);

}  // namespace ofcpoint

#endif  // OFCPOINT_ANALYSIS_H_
