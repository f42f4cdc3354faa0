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

#include "ofc/task.h"

#include <cmath>

#include "ofc/errors.h"

namespace ofc {

TaskSpec TaskSpec::rest_to_rest(double origin, double target, double width, int n, double h) {
  TaskSpec t;
  t.origin = origin;
  t.target = target;
  t.width = width;
  t.n = n;
  t.h = h;
  t.start_position = origin;
  return t;
}

void TaskSpec::validate() const {
  if (n < 2) throw ParameterError("n", "step count must be at least 2");
  if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("h", "must be positive");
  if (!(width > 0.0) || !std::isfinite(width)) throw ParameterError("width", "must be positive");
  if (!std::isfinite(origin)) throw ParameterError("origin", "must be finite");
  if (!std::isfinite(target)) throw ParameterError("target", "must be finite");
  if (!std::isfinite(start_position) || !std::isfinite(start_velocity) ||
      !std::isfinite(start_acceleration) || !std::isfinite(start_force) ||
      !std::isfinite(start_excitation)) {
    throw ParameterError("start", "initial state must be finite");
  }
  if (!start_cov.allFinite()) throw ParameterError("start_cov", "must be finite");
  Eigen::Matrix2d s = 0.5 * (start_cov + start_cov.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(s, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-9) {
    throw ParameterError("start_cov", "must be positive semidefinite");
  }
}

void MuscleParams::validate() const {
  if (!(tau1 > 0.0) || !std::isfinite(tau1)) throw ParameterError("tau1", "must be positive");
  if (!(tau2 > 0.0) || !std::isfinite(tau2)) throw ParameterError("tau2", "must be positive");
  if (!(mass > 0.0) || !std::isfinite(mass)) throw ParameterError("mass", "must be positive");
}

}  // namespace ofc
