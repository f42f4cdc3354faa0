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

#include "ofc/fitting.h"

#include <cmath>
#include <limits>

#include "ofc/errors.h"

namespace ofc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

ParameterSpace default_space(ModelKind kind, int n) {
  using K = ParameterKind;
  using S = ParameterScale;
  const double steps = static_cast<double>(n);
  switch (kind) {
    case ModelKind::kTwoOLEq:
      return ParameterSpace({{"k", 0.0, 500.0, K::kContinuous, S::kLinear},
                             {"d", 0.0, 500.0, K::kContinuous, S::kLinear}});
    case ModelKind::kMinJerk:
      return ParameterSpace({{"n_mj", 0.0, steps, K::kRelaxedInteger, S::kLinear}});
    case ModelKind::kLQR:
      return ParameterSpace({{"omega_r", 2e-9, 20.0, K::kContinuous, S::kLog},
                             {"omega_v", 0.0, 0.1, K::kContinuous, S::kLinear},
                             {"omega_f", 0.0, 1e-3, K::kContinuous, S::kLinear}});
    case ModelKind::kLQG:
      return ParameterSpace({{"omega_r", 4e-18, 7e-3, K::kContinuous, S::kLog},
                             {"omega_v", 0.0, 10.0, K::kContinuous, S::kLinear},
                             {"omega_f", 0.0, 10.0, K::kContinuous, S::kLinear},
                             {"sigma_u", 1e-9, 5.0, K::kContinuous, S::kLinear},
                             {"sigma_s", 0.0, 5.0, K::kContinuous, S::kLinear}});
    case ModelKind::kELQG:
      return ParameterSpace({{"omega_r", 4e-18, 7e-3, K::kContinuous, S::kLog},
                             {"omega_v", 0.0, 10.0, K::kContinuous, S::kLinear},
                             {"omega_f", 0.0, 10.0, K::kContinuous, S::kLinear},
                             {"sigma_u", 1e-9, 5.0, K::kContinuous, S::kLinear},
                             {"sigma_v", 0.0, 10.0, K::kContinuous, S::kLinear},
                             {"sigma_f", 0.0, 50.0, K::kContinuous, S::kLinear},
                             {"sigma_e", 0.0, 5.0, K::kContinuous, S::kLinear},
                             {"gamma", 4e-18, 100.0, K::kContinuous, S::kLog},
                             {"n_s", 0.0, steps, K::kRelaxedInteger, S::kLinear}});
  }
  throw ContractError("unknown model");
}

ParameterMap to_parameters(const ParameterSpace& space, const Vec& x) {
  if (static_cast<std::size_t>(x.size()) != space.dim()) {
    throw ContractError("parameter vector dimension mismatch");
  }
  ParameterMap m;
  for (std::size_t i = 0; i < space.dim(); ++i) m[space[i].name] = x(i);
  return m;
}

Vec from_parameters(const ParameterSpace& space, const ParameterMap& params) {
  Vec x(space.dim());
  for (std::size_t i = 0; i < space.dim(); ++i) {
    auto it = params.find(space[i].name);
    if (it == params.end()) throw ParameterError(space[i].name, "missing");
    x(i) = it->second;
  }
  return x;
}

double loss_deterministic(ModelKind kind, const ParameterMap& params, const TaskSpec& task,
                          std::span<const double> ref_position, const ModelOptions& opts) {
  try {
    const ModelRun run = run_model(kind, params, task, opts);
    const double l = sse(run.kinematics.position, ref_position);
    return std::isfinite(l) ? l : kInf;
  } catch (const ContractError&) {
    throw;
  } catch (const Error&) {
    return kInf;
  }
}

double loss_stochastic(ModelKind kind, const ParameterMap& params, const TaskSpec& task,
                       const GaussianSeries& ref, const ModelOptions& opts) {
  if (!is_stochastic(kind)) throw ContractError("stochastic loss needs LQG or E-LQG");
  try {
    const StochasticProblem problem = build_problem(kind, params, task, opts);
    const ControlLaw law = solve_stochastic(problem, opts.solver);
    const double l = mwd(position_velocity_series(predict_distribution(problem, law)), ref);
    return std::isfinite(l) ? l : kInf;
  } catch (const ContractError&) {
    throw;
  } catch (const Error&) {
    return kInf;
  }
}

double fit_loss(ModelKind kind, const ParameterMap& params, const TaskSpec& task,
                const TrajectoryEnsemble& ref, const ModelOptions& opts) {
  if (is_stochastic(kind)) return loss_stochastic(kind, params, task, ref.gaussians(), opts);
  return loss_deterministic(kind, params, task, ref.mean_position, opts);
}

FitResult fit(ModelKind kind, const TaskSpec& task, const TrajectoryEnsemble& ref,
              const FitConfig& cfg, const ModelOptions& opts,
              const std::optional<ParameterSpace>& space) {
  if (ref.trials.empty() || ref.frames() == 0) throw InputError("reference ensemble is empty");
  task.validate();
  if (ref.frames() != static_cast<std::size_t>(task.n) + 1) {
    throw InputError("reference has " + std::to_string(ref.frames()) + " frames but the task has " +
                     std::to_string(task.n + 1));
  }
  const ParameterSpace s = space ? *space : default_space(kind, task.n);
  const GaussianSeries gaussians = ref.gaussians();
  LossFunction loss;
  if (is_stochastic(kind)) {
    loss = [&](const Vec& x) {
      return loss_stochastic(kind, to_parameters(s, x), task, gaussians, opts);
    };
  } else {
    loss = [&](const Vec& x) {
      return loss_deterministic(kind, to_parameters(s, x), task, ref.mean_position, opts);
    };
  }
  const DEResult de = differential_evolution(s, loss, cfg);

  FitResult r;
  r.model = kind;
  r.params = to_parameters(s, de.best);
  r.loss = de.best_loss;
  r.history = de.history;
  r.evaluations = de.evaluations;
  r.failed_evaluations = de.failed_evaluations;
  r.generations = de.generations;
  r.converged = de.converged;
  r.success = de.success;
  r.config = cfg;
  r.task = task;
  if (r.success) {
    try {
      r.run = run_model(kind, r.params, task, opts);
    } catch (const Error&) {
      r.run.reset();
    }
  }
  return r;
}

}  // namespace ofc
