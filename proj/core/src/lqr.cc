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

#include "ofc/lqr.h"

#include <cmath>

#include "ofc/errors.h"

namespace ofc {

std::vector<Mat> state_cost_sequence(const Mat& q, int n, CostSchedule schedule) {
  if (n < 1) throw ContractError("cost sequence needs at least one step");
  std::vector<Mat> out(n + 1, schedule == CostSchedule::kEveryStep
                                  ? q
                                  : Mat(Mat::Zero(q.rows(), q.cols())));
  out.back() = q;
  return out;
}

RiccatiSolution solve_riccati(const LinearSystem& system, std::span<const Mat> q, const Mat& r) {
  const Eigen::Index k = system.state_dim();
  const Eigen::Index m = system.control_dim();
  if (q.size() < 2) throw ContractError("Riccati recursion needs N + 1 >= 2 cost matrices");
  for (const auto& qn : q) {
    if (qn.rows() != k || qn.cols() != k) throw ContractError("state cost must be k x k");
  }
  if (r.rows() != m || r.cols() != m) throw ContractError("effort cost must be m x m");

  const std::size_t n = q.size() - 1;
  const Mat& a = system.a();
  const Mat& b = system.b();
  RiccatiSolution sol;
  sol.gains.resize(n);
  sol.cost_to_go.resize(n + 1);
  sol.cost_to_go[n] = symmetrize(q[n]);
  for (std::size_t i = n; i-- > 0;) {
    const Mat& s = sol.cost_to_go[i + 1];
    const Mat bs = b.transpose() * s;
    const Mat lam = r + bs * b;
    Eigen::LDLT<Mat> ldlt(lam);
    if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().array() > 0.0).all()) {
      throw NumericalError("R + B'SB is singular at step " + std::to_string(i));
    }
    Mat l = ldlt.solve(bs * a);
    sol.cost_to_go[i] = symmetrize(q[i] + a.transpose() * s * (a - b * l));
    sol.gains[i] = std::move(l);
  }
  return sol;
}

ControlLaw solve_lqr(const LQCostWeights& w, const TaskSpec& task, const MuscleParams& muscle) {
  w.validate();
  task.validate();
  const LinearSystem sys = build_muscle_system(muscle, task.h);
  const auto q = state_cost_sequence(state_cost(*sys.layout(), w), task.n, CostSchedule::kEveryStep);
  const Mat r = Mat::Constant(1, 1, effort_cost(w, task.n));
  RiccatiSolution sol = solve_riccati(sys, q, r);

  ControlLaw law;
  law.feedback = std::move(sol.gains);
  law.iterations = 1;
  const Vec x0 = initial_state(*sys.layout(), task);
  law.cost = x0.dot(sol.cost_to_go[0] * x0);
  law.cost_history = {law.cost};
  return law;
}

Trajectory simulate_feedback(const LinearSystem& system, const ControlLaw& law, const Vec& x0) {
  if (law.feedback.empty()) throw ContractError("control law has no gains");
  if (x0.size() != system.state_dim()) throw ContractError("initial state dimension mismatch");
  Trajectory traj(system.layout(), system.h());
  Vec x = x0;
  traj.push_state(x);
  for (const auto& l : law.feedback) {
    Vec u = -l * x;
    x = system.a() * x + system.b() * u;
    traj.push_control(std::move(u));
    traj.push_state(x);
  }
  return traj;
}

double quadratic_cost(const Trajectory& traj, std::span<const Mat> q, const Mat& r) {
  if (q.size() != traj.states().size()) throw ContractError("cost sequence length mismatch");
  double j = 0.0;
  for (std::size_t n = 0; n < q.size(); ++n) {
    const Vec& x = traj.states()[n];
    j += x.dot(q[n] * x);
  }
  for (const auto& u : traj.controls()) j += u.dot(r * u);
  return j;
}

Trajectory simulate_lqr(const LQCostWeights& w, const TaskSpec& task, const MuscleParams& muscle) {
  const ControlLaw law = solve_lqr(w, task, muscle);
  const LinearSystem sys = build_muscle_system(muscle, task.h);
  return simulate_feedback(sys, law, initial_state(*sys.layout(), task));
}

}  // namespace ofc
