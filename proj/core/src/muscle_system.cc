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

#include "ofc/muscle_system.h"

#include <cmath>

#include "ofc/errors.h"

namespace ofc {

void LQCostWeights::validate() const {
  if (!(omega_r > 0.0) || !std::isfinite(omega_r)) {
    throw ParameterError("omega_r", "effort weight must be positive");
  }
  if (!(omega_v >= 0.0) || !std::isfinite(omega_v)) {
    throw ParameterError("omega_v", "velocity weight must be nonnegative");
  }
  if (!(omega_f >= 0.0) || !std::isfinite(omega_f)) {
    throw ParameterError("omega_f", "force weight must be nonnegative");
  }
}

LinearSystem build_muscle_system(const MuscleParams& muscle, double h, bool with_origin) {
  muscle.validate();
  if (!(h > 0.0)) throw ParameterError("h", "must be positive");
  LayoutPtr layout =
      with_origin ? StateLayout::muscle_with_origin() : StateLayout::muscle();
  const StateLayout& l = *layout;
  const Eigen::Index k = static_cast<Eigen::Index>(l.size());
  const auto p = l.index(component::kPosition);
  const auto v = l.index(component::kVelocity);
  const auto f = l.index(component::kForce);
  const auto g = l.index(component::kExcitation);

  Mat a = Mat::Identity(k, k);
  a(p, v) = h;
  a(v, f) = h / muscle.mass;
  a(f, f) = 1.0 - h / muscle.tau2;
  a(f, g) = h / muscle.tau2;
  a(g, g) = 1.0 - h / muscle.tau1;
  Mat b = Mat::Zero(k, 1);
  b(g, 0) = h / muscle.tau1;
  return LinearSystem(std::move(a), std::move(b), h, std::move(layout));
}

Mat state_cost(const StateLayout& layout, const LQCostWeights& w) {
  const Eigen::Index k = static_cast<Eigen::Index>(layout.size());
  const auto p = layout.index(component::kPosition);
  const auto t = layout.index(component::kTarget);
  Mat q = Mat::Zero(k, k);
  q(p, p) = 1.0;
  q(t, t) = 1.0;
  q(p, t) = -1.0;
  q(t, p) = -1.0;
  q(layout.index(component::kVelocity), layout.index(component::kVelocity)) = w.omega_v;
  q(layout.index(component::kForce), layout.index(component::kForce)) = w.omega_f;
  return q;
}

double effort_cost(const LQCostWeights& w, int n) {
  if (n < 2) throw ParameterError("n", "step count must be at least 2");
  return w.omega_r / (n - 1);
}

Vec initial_state(const StateLayout& layout, const TaskSpec& task) {
  Vec x = Vec::Zero(static_cast<Eigen::Index>(layout.size()));
  x(layout.index(component::kPosition)) = task.start_position;
  x(layout.index(component::kVelocity)) = task.start_velocity;
  if (layout.contains(component::kForce)) x(layout.index(component::kForce)) = task.start_force;
  if (layout.contains(component::kExcitation)) {
    x(layout.index(component::kExcitation)) = task.start_excitation;
  }
  if (layout.contains(component::kAcceleration)) {
    x(layout.index(component::kAcceleration)) = task.start_acceleration;
  }
  if (layout.contains(component::kOrigin)) x(layout.index(component::kOrigin)) = task.origin;
  if (layout.contains(component::kTarget)) x(layout.index(component::kTarget)) = task.target;
  return x;
}

Mat initial_covariance(const StateLayout& layout, const TaskSpec& task) {
  const Eigen::Index k = static_cast<Eigen::Index>(layout.size());
  Mat c = Mat::Zero(k, k);
  const Eigen::Index idx[2] = {layout.index(component::kPosition),
                               layout.index(component::kVelocity)};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) c(idx[i], idx[j]) = task.start_cov(i, j);
  }
  return c;
}

}  // namespace ofc
