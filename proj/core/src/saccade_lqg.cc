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

#include "ofc/saccade_lqg.h"

#include <cmath>

#include "ofc/errors.h"

namespace ofc {

void ELQGParams::validate(int n) const {
  auto nonneg = [](double v, const char* field) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError(field, "must be nonnegative");
  };
  nonneg(sigma_u, "sigma_u");
  nonneg(sigma_v, "sigma_v");
  nonneg(sigma_f, "sigma_f");
  nonneg(sigma_e, "sigma_e");
  nonneg(gamma, "gamma");
  nonneg(n_s, "n_s");
  if (n_s > n) throw ParameterError("n_s", "saccade step exceeds the step count");
}

SaccadeObservation::SaccadeObservation(const StateLayout& layout, const ELQGParams& p)
    : k_(static_cast<Eigen::Index>(layout.size())),
      p_(layout.index(component::kPosition)),
      t0_(layout.index(component::kOrigin)),
      t_(layout.index(component::kTarget)),
      params_(p),
      switch_step_(static_cast<int>(std::floor(p.n_s))),
      frac_(p.n_s - std::floor(p.n_s)) {
  const auto v = layout.index(component::kVelocity);
  const auto f = layout.index(component::kForce);
  h_origin_ = Mat::Zero(5, k_);
  h_origin_(0, v) = 1.0;
  h_origin_(1, f) = 1.0;
  h_origin_(2, t0_) = 1.0;
  h_origin_(3, p_) = 1.0;
  h_origin_(3, t0_) = -1.0;
  h_origin_(4, t0_) = -1.0;
  h_origin_(4, t_) = 1.0;

  h_target_ = Mat::Zero(5, k_);
  h_target_(0, v) = 1.0;
  h_target_(1, f) = 1.0;
  h_target_(2, t_) = 1.0;
  h_target_(3, p_) = 1.0;
  h_target_(3, t_) = -1.0;
  h_target_(4, t0_) = 1.0;
  h_target_(4, t_) = -1.0;
}

Mat SaccadeObservation::matrix(int n) const {
  if (n < switch_step_) return h_origin_;
  if (n > switch_step_) return h_target_;
  return frac_ * h_origin_ + (1.0 - frac_) * h_target_;
}

Mat SaccadeObservation::noise_factor(int n, const Vec& x) const {
  if (x.size() != k_) throw ContractError("state dimension mismatch in observation noise");
  const double to_origin = std::abs(x(p_) - x(t0_));
  const double to_target = std::abs(x(p_) - x(t_));
  const double boxes = std::abs(x(t_) - x(t0_));
  double pointer = 0.0;
  if (n < switch_step_) {
    pointer = to_origin;
  } else if (n > switch_step_) {
    pointer = to_target;
  } else {
    pointer = frac_ * to_origin + (1.0 - frac_) * to_target;
  }
  Vec d(5);
  d << params_.sigma_v, params_.sigma_f, params_.sigma_e, params_.gamma * pointer,
      params_.gamma * boxes;
  return d.asDiagonal();
}

StochasticProblem make_elqg_problem(const LQCostWeights& w, const ELQGParams& p,
                                    const TaskSpec& task, const MuscleParams& muscle) {
  w.validate();
  task.validate();
  p.validate(task.n);
  LinearSystem sys = build_muscle_system(muscle, task.h, true);
  const StateLayout& layout = *sys.layout();
  Vec x0 = initial_state(layout, task);
  Vec xhat0 = x0;
  xhat0(layout.index(component::kTarget)) = x0(layout.index(component::kOrigin));
  Mat cov0 = project_psd(initial_covariance(layout, task), "initial covariance");
  auto q = state_cost_sequence(state_cost(layout, w), task.n, CostSchedule::kTerminal);
  auto obs = std::make_shared<SaccadeObservation>(layout, p);
  return StochasticProblem{std::move(sys),
                           std::move(q),
                           Mat::Constant(1, 1, effort_cost(w, task.n)),
                           p.sigma_u,
                           std::move(obs),
                           std::move(x0),
                           std::move(cov0),
                           std::move(xhat0)};
}

ControlLaw solve_elqg(const LQCostWeights& w, const ELQGParams& p, const TaskSpec& task,
                      const MuscleParams& muscle, const SolverOptions& opts) {
  return solve_stochastic(make_elqg_problem(w, p, task, muscle), opts);
}

}  // namespace ofc
