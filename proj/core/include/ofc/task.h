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

#ifndef OFC_TASK_H_
#define OFC_TASK_H_

#include <Eigen/Dense>

namespace ofc {

inline constexpr double kDefaultStepSeconds = 0.002;

// One pointing condition: a movement from `origin` toward `target` over n
// steps of h seconds. The initial state defaults to rest at the origin.
struct TaskSpec {
  double origin = 0.0;
  double target = 0.0;
  double width = 0.0;
  int n = 0;
  double h = kDefaultStepSeconds;

  double start_position = 0.0;
  double start_velocity = 0.0;
  double start_acceleration = 0.0;
  double start_force = 0.0;
  double start_excitation = 0.0;
  // Position/velocity covariance of the initial state; other components are exact.
  Eigen::Matrix2d start_cov = Eigen::Matrix2d::Zero();

  static TaskSpec rest_to_rest(double origin, double target, double width, int n,
                               double h = kDefaultStepSeconds);

  double distance() const { return target - origin; }
  double duration() const { return n * h; }

  // Throws ParameterError naming the field.
  void validate() const;
};

struct MuscleParams {
  double tau1 = 0.04;
  double tau2 = 0.04;
  double mass = 1.0;

  void validate() const;
};

}  // namespace ofc

#endif  // OFC_TASK_H_
