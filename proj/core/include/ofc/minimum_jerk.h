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

#ifndef OFC_MINIMUM_JERK_H_
#define OFC_MINIMUM_JERK_H_

#include <Eigen/Dense>

#include "ofc/lindyn.h"
#include "ofc/task.h"

namespace ofc {

struct MinJerkParams {
  double n_mj = 0.0;  // surge length in steps; fractional values allowed
};

// (position, velocity, acceleration) at both ends of the surge.
struct MinJerkBoundary {
  Eigen::Vector3d start = Eigen::Vector3d::Zero();
  Eigen::Vector3d end = Eigen::Vector3d::Zero();

  // Task start state to (target, 0, 0).
  static MinJerkBoundary from_task(const TaskSpec& task);
};

// Quintic coefficients c_0..c_5 in normalized time tau = n / n_mj.
Eigen::Matrix<double, 6, 1> minjerk_coefficients(const MinJerkBoundary& b, double tf);

// States are (p, v, a); the control channel carries jerk. The polynomial is
// evaluated for n <= ceil(n_mj), after which the end state is held.
Trajectory minjerk_trajectory(const MinJerkParams& p, const TaskSpec& task,
                              const MinJerkBoundary& boundary);
Trajectory minjerk_trajectory(const MinJerkParams& p, const TaskSpec& task);

}  // namespace ofc

#endif  // OFC_MINIMUM_JERK_H_
