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

#ifndef OFC_LQR_H_
#define OFC_LQR_H_

#include <span>
#include <vector>

#include "ofc/lindyn.h"
#include "ofc/muscle_system.h"
#include "ofc/task.h"

namespace ofc {

// Time-indexed gains u_n = -L_n xhat_n. `kalman` is empty for LQR.
struct ControlLaw {
  std::vector<Mat> feedback;
  std::vector<Mat> kalman;
  bool converged = true;
  int iterations = 0;
  double cost = 0.0;
  // Objective after each coordinate-descent iteration.
  std::vector<double> cost_history;

  std::size_t steps() const { return feedback.size(); }
  bool has_kalman() const { return !kalman.empty(); }
};

enum class CostSchedule {
  kEveryStep,  // Q at n = 0..N
  kTerminal,   // Q at n = N only
};

// N + 1 state cost matrices.
std::vector<Mat> state_cost_sequence(const Mat& q, int n, CostSchedule schedule);

struct RiccatiSolution {
  std::vector<Mat> gains;        // L_0..L_{N-1}
  std::vector<Mat> cost_to_go;   // S_0..S_N
};

// Finite-horizon discrete Riccati recursion with S_N = Q_N.
RiccatiSolution solve_riccati(const LinearSystem& system, std::span<const Mat> q, const Mat& r);

ControlLaw solve_lqr(const LQCostWeights& w, const TaskSpec& task,
                     const MuscleParams& muscle = {});

// Deterministic closed loop u_n = -L_n x_n.
Trajectory simulate_feedback(const LinearSystem& system, const ControlLaw& law, const Vec& x0);

// sum_n x_n' Q_n x_n + sum_n u_n' R u_n.
double quadratic_cost(const Trajectory& traj, std::span<const Mat> q, const Mat& r);

// Solve and simulate on the 5-state muscle system.
Trajectory simulate_lqr(const LQCostWeights& w, const TaskSpec& task,
                        const MuscleParams& muscle = {});

}  // namespace ofc

#endif  // OFC_LQR_H_
