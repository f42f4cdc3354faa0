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

#include "ofc/second_order_lag.h"

#include <cmath>

#include "ofc/errors.h"

namespace ofc {

TwoOLParams TwoOLParams::from_zeta(double k, double zeta) {
  return {k, 2.0 * zeta * std::sqrt(std::max(k, 0.0))};
}

double TwoOLParams::zeta() const { return d / (2.0 * std::sqrt(k)); }

void TwoOLParams::validate() const {
  if (!(k > 0.0) || !std::isfinite(k)) throw ParameterError("k", "stiffness must be positive");
  if (!(d > 0.0) || !std::isfinite(d)) throw ParameterError("d", "damping must be positive");
}

LinearSystem build_2ol_system(const TwoOLParams& p, double h) {
  p.validate();
  if (!(h > 0.0)) throw ParameterError("h", "must be positive");
  Mat a(2, 2);
  a << 1.0, h, -h * p.k, 1.0 - h * p.d;
  Mat b(2, 1);
  b << 0.0, h;
  return LinearSystem(std::move(a), std::move(b), h, StateLayout::position_velocity());
}

Trajectory simulate_2ol_eq(const TwoOLParams& p, const TaskSpec& task) {
  task.validate();
  const LinearSystem sys = build_2ol_system(p, task.h);
  StateVector x0{Vec(2), sys.layout()};
  x0.values << task.start_position, task.start_velocity;
  const std::vector<Vec> controls(task.n, Vec::Constant(1, p.k * task.target));
  return rollout(sys, x0, controls);
}

}  // namespace ofc
