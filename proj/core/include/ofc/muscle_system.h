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

#ifndef OFC_MUSCLE_SYSTEM_H_
#define OFC_MUSCLE_SYSTEM_H_

#include "ofc/lindyn.h"
#include "ofc/task.h"

namespace ofc {

// Effort and state cost weights shared by the LQR, LQG and E-LQG models.
struct LQCostWeights {
  double omega_r = 1.0;
  double omega_v = 0.0;
  double omega_f = 0.0;

  void validate() const;
};

// Double integrator driven by a second-order muscle filter, forward Euler.
// State (p, v, f, g, T), or (p, v, f, g, T0, T) when `with_origin` is set.
LinearSystem build_muscle_system(const MuscleParams& muscle, double h, bool with_origin = false);

// Q with x'Qx = (p - T)^2 + omega_v v^2 + omega_f f^2 on the given layout.
Mat state_cost(const StateLayout& layout, const LQCostWeights& w);

// omega_r / (N - 1).
double effort_cost(const LQCostWeights& w, int n);

// Mean initial state on the given layout; T0 is the task origin.
Vec initial_state(const StateLayout& layout, const TaskSpec& task);

// Initial covariance: the task's position/velocity block, zero elsewhere.
Mat initial_covariance(const StateLayout& layout, const TaskSpec& task);

}  // namespace ofc

#endif  // OFC_MUSCLE_SYSTEM_H_
