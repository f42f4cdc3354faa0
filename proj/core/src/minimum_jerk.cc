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

#include "ofc/minimum_jerk.h"

#include <cmath>

#include "ofc/errors.h"

namespace ofc {

MinJerkBoundary MinJerkBoundary::from_task(const TaskSpec& task) {
  MinJerkBoundary b;
  b.start << task.start_position, task.start_velocity, task.start_acceleration;
  b.end << task.target, 0.0, 0.0;
  return b;
}

Eigen::Matrix<double, 6, 1> minjerk_coefficients(const MinJerkBoundary& b, double tf) {
  const double t2 = tf * tf;
  Eigen::Matrix<double, 6, 6> m;
  m << 1, 0, 0, 0, 0, 0,
       0, tf, 0, 0, 0, 0,
       0, 0, 0.5 * t2, 0, 0, 0,
       -10, -6 * tf, -1.5 * t2, 10, -4 * tf, 0.5 * t2,
       15, 8 * tf, 1.5 * t2, -15, 7 * tf, -t2,
       -6, -3 * tf, -0.5 * t2, 6, -3 * tf, 0.5 * t2;
  Eigen::Matrix<double, 6, 1> x;
  x << b.start, b.end;
  return m * x;
}

Trajectory minjerk_trajectory(const MinJerkParams& p, const TaskSpec& task,
                              const MinJerkBoundary& boundary) {
  task.validate();
  if (!std::isfinite(p.n_mj) || p.n_mj < 0.0) {
    throw ParameterError("nmj", "surge length must be nonnegative");
  }
  if (p.n_mj > task.n) throw ParameterError("nmj", "surge length exceeds the step count");
  if (!boundary.start.allFinite() || !boundary.end.allFinite()) {
    throw ParameterError("boundary", "must be finite");
  }

  Trajectory traj(StateLayout::position_velocity_acceleration(), task.h);
  const Vec hold = boundary.end;
  const Vec no_jerk = Vec::Zero(1);

  if (p.n_mj == 0.0) {
    for (int n = 0; n <= task.n; ++n) {
      traj.push_state(hold);
      if (n < task.n) traj.push_control(no_jerk);
    }
    return traj;
  }

  const double tf = p.n_mj * task.h;
  const auto c = minjerk_coefficients(boundary, tf);
  const int last = static_cast<int>(std::ceil(p.n_mj));
  for (int n = 0; n <= task.n; ++n) {
    if (n > last) {
      traj.push_state(hold);
      if (n < task.n) traj.push_control(no_jerk);
      continue;
    }
    const double tau = n / p.n_mj;
    // Horner for P, P', P'', P'''.
    double pos = c(5), vel = 5 * c(5), acc = 20 * c(5), jerk = 60 * c(5);
    for (int i = 4; i >= 0; --i) pos = pos * tau + c(i);
    for (int i = 4; i >= 1; --i) vel = vel * tau + i * c(i);
    for (int i = 4; i >= 2; --i) acc = acc * tau + i * (i - 1) * c(i);
    for (int i = 4; i >= 3; --i) jerk = jerk * tau + i * (i - 1) * (i - 2) * c(i);
    Vec x(3);
    x << pos, vel / tf, acc / (tf * tf);
    traj.push_state(std::move(x));
    if (n < task.n) traj.push_control(Vec::Constant(1, n < last ? jerk / (tf * tf * tf) : 0.0));
  }
  return traj;
}

Trajectory minjerk_trajectory(const MinJerkParams& p, const TaskSpec& task) {
  return minjerk_trajectory(p, task, MinJerkBoundary::from_task(task));
}

}  // namespace ofc
