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

#ifndef OFC_LQG_H_
#define OFC_LQG_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "ofc/lindyn.h"
#include "ofc/lqr.h"
#include "ofc/muscle_system.h"
#include "ofc/task.h"

namespace ofc {

// y_n = H_n x_n + G_n(x_n) xi_n with xi_n ~ N(0, I).
class ObservationModel {
 public:
  virtual ~ObservationModel() = default;

  virtual Eigen::Index dim() const = 0;
  virtual Eigen::Index state_dim() const = 0;
  virtual Mat matrix(int n) const = 0;
  // G_n evaluated at `state`. The solver passes the mean state.
  virtual Mat noise_factor(int n, const Vec& state) const = 0;
};

class FixedObservation : public ObservationModel {
 public:
  FixedObservation(Mat h, Mat g);

  Eigen::Index dim() const override { return h_.rows(); }
  Eigen::Index state_dim() const override { return h_.cols(); }
  Mat matrix(int) const override { return h_; }
  Mat noise_factor(int, const Vec&) const override { return g_; }

 private:
  Mat h_;
  Mat g_;
};

struct LQGNoiseParams {
  double sigma_u = 0.0;  // signal-dependent control noise
  double sigma_s = 0.0;  // observation noise scale

  void validate() const;
};

struct SolverOptions {
  int max_iterations = 20;
  double tolerance = 1e-3;  // relative improvement of the objective
};

struct StochasticProblem {
  LinearSystem system;
  std::vector<Mat> state_costs;  // N + 1 entries
  Mat effort;                    // m x m
  double control_noise = 0.0;
  std::shared_ptr<const ObservationModel> observation;
  Vec initial_mean;
  Mat initial_cov;
  Vec initial_estimate;

  int steps() const { return static_cast<int>(state_costs.size()) - 1; }
  void validate() const;
};

// Position, velocity and force observed with G = sigma_s diag(0.02, 0.2, 1).
StochasticProblem make_lqg_problem(const LQCostWeights& w, const LQGNoiseParams& noise,
                                   const TaskSpec& task, const MuscleParams& muscle = {},
                                   CostSchedule schedule = CostSchedule::kTerminal);

// Alternates feedback (backward) and Kalman (forward) passes starting from
// K = 0 until the objective improves by less than `tolerance` relative.
// Throws DivergenceError if the objective is not finite.
ControlLaw solve_stochastic(const StochasticProblem& problem, const SolverOptions& opts = {});

ControlLaw solve_lqg(const LQCostWeights& w, const LQGNoiseParams& noise, const TaskSpec& task,
                     const MuscleParams& muscle = {}, const SolverOptions& opts = {});

// Feedback gains minimizing the expected cost for the Kalman gains of `law`,
// and the expected cost they achieve. Observation noise is evaluated along the
// mean trajectory of `law`.
struct BackwardPass {
  std::vector<Mat> feedback;
  double cost = 0.0;
};
BackwardPass feedback_pass(const StochasticProblem& problem, const ControlLaw& law);

// Expected objective of a fixed (L, K) pair from propagated moments.
double expected_cost(const StochasticProblem& problem, const ControlLaw& law);

struct ClosedLoopMoments {
  DistributionTrajectory state;
  std::vector<Vec> estimate_mean;
};

// Joint state/estimate Gaussian propagation under the closed loop.
ClosedLoopMoments predict_moments(const StochasticProblem& problem, const ControlLaw& law);

DistributionTrajectory predict_distribution(const StochasticProblem& problem,
                                            const ControlLaw& law);

// One noisy rollout; controls are the commanded -L_n xhat_n.
Trajectory sample_trajectory(const StochasticProblem& problem, const ControlLaw& law,
                             std::uint64_t seed);

}  // namespace ofc

#endif  // OFC_LQG_H_
