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

#ifndef OFC_SECOND_ORDER_LAG_H_
#define OFC_SECOND_ORDER_LAG_H_

#include "ofc/lindyn.h"
#include "ofc/task.h"

namespace ofc {

// Spring-mass-damper y'' = -k y - d y' + u.
struct TwoOLParams {
  double k = 0.0;  // stiffness, 1/s^2
  double d = 0.0;  // damping, 1/s

  static TwoOLParams from_zeta(double k, double zeta);
  double zeta() const;
  void validate() const;
};

LinearSystem build_2ol_system(const TwoOLParams& p, double h);

// Equilibrium control u = k T applied from the task's initial position and
// velocity. States are (p, v).
Trajectory simulate_2ol_eq(const TwoOLParams& p, const TaskSpec& task);

}  // namespace ofc

#endif  // OFC_SECOND_ORDER_LAG_H_
