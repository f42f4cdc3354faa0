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

#ifndef OFC_FITTING_H_
#define OFC_FITTING_H_

#include <optional>
#include <span>

#include "ofc/differential_evolution.h"
#include "ofc/metrics.h"
#include "ofc/model_registry.h"
#include "ofc/preprocess.h"

namespace ofc {

// Default search box per model for an N-step task. omega_r and gamma are
// searched on a log scale.
ParameterSpace default_space(ModelKind kind, int n);

ParameterMap to_parameters(const ParameterSpace& space, const Vec& x);
Vec from_parameters(const ParameterSpace& space, const ParameterMap& params);

// SSE between simulated and reference positions; +inf if the model fails.
double loss_deterministic(ModelKind kind, const ParameterMap& params, const TaskSpec& task,
                          std::span<const double> ref_position, const ModelOptions& opts = {});

// MWD between predicted and reference position/velocity Gaussians; +inf if
// the solver fails.
double loss_stochastic(ModelKind kind, const ParameterMap& params, const TaskSpec& task,
                       const GaussianSeries& ref, const ModelOptions& opts = {});

// SSE against the mean for 2OL-Eq, MinJerk and LQR; MWD for LQG and E-LQG.
double fit_loss(ModelKind kind, const ParameterMap& params, const TaskSpec& task,
                const TrajectoryEnsemble& ref, const ModelOptions& opts = {});

struct FitResult {
  ModelKind model = ModelKind::kTwoOLEq;
  ParameterMap params;
  double loss = 0.0;
  std::vector<double> history;
  long evaluations = 0;
  long failed_evaluations = 0;
  int generations = 0;
  bool converged = false;
  bool success = false;
  FitConfig config;
  TaskSpec task;
  std::optional<ModelRun> run;  // model output at the best parameters
};

// Throws InputError for an empty reference or a length mismatch with the task.
FitResult fit(ModelKind kind, const TaskSpec& task, const TrajectoryEnsemble& ref,
              const FitConfig& cfg, const ModelOptions& opts = {},
              const std::optional<ParameterSpace>& space = std::nullopt);

}  // namespace ofc

#endif  // OFC_FITTING_H_
