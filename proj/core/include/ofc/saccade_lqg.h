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

#ifndef OFC_SACCADE_LQG_H_
#define OFC_SACCADE_LQG_H_

#include "ofc/lqg.h"

namespace ofc {

struct ELQGParams {
  double sigma_u = 0.0;  // signal-dependent control noise
  double sigma_v = 0.0;  // velocity perception noise
  double sigma_f = 0.0;  // force perception noise
  double sigma_e = 0.0;  // gaze noise
  double gamma = 0.0;    // position perception noise per meter of eccentricity
  double n_s = 0.0;      // saccade step, fractional values allowed

  void validate(int n) const;
};

// Fixation at T0 before step floor(n_s), at T after it, and a convex blend
// with weight frac(n_s) on the T0 model at floor(n_s). Channels are
// (v, f, fixation, pointer - fixation, other box - fixation).
class SaccadeObservation : public ObservationModel {
 public:
  SaccadeObservation(const StateLayout& layout, const ELQGParams& p);

  Eigen::Index dim() const override { return 5; }
  Eigen::Index state_dim() const override { return k_; }
  Mat matrix(int n) const override;
  Mat noise_factor(int n, const Vec& state) const override;

  const Mat& before() const { return h_origin_; }
  const Mat& after() const { return h_target_; }

 private:
  Eigen::Index k_;
  Eigen::Index p_, t0_, t_;
  ELQGParams params_;
  int switch_step_;
  double frac_;
  Mat h_origin_;
  Mat h_target_;
};

// Six-state problem on (p, v, f, g, T0, T); the initial estimate of T is T0.
StochasticProblem make_elqg_problem(const LQCostWeights& w, const ELQGParams& p,
                                    const TaskSpec& task, const MuscleParams& muscle = {});

ControlLaw solve_elqg(const LQCostWeights& w, const ELQGParams& p, const TaskSpec& task,
                      const MuscleParams& muscle = {}, const SolverOptions& opts = {});

}  // namespace ofc

#endif  // OFC_SACCADE_LQG_H_
