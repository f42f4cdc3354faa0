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

#include "ofc/model_registry.h"

#include <algorithm>
#include <cmath>

#include "ofc/errors.h"
#include "ofc/lqr.h"
#include "ofc/minimum_jerk.h"
#include "ofc/saccade_lqg.h"
#include "ofc/second_order_lag.h"

namespace ofc {

std::string_view model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kTwoOLEq: return "2ol-eq";
    case ModelKind::kMinJerk: return "minjerk";
    case ModelKind::kLQR: return "lqr";
    case ModelKind::kLQG: return "lqg";
    case ModelKind::kELQG: return "elqg";
  }
  return "unknown";
}

ModelKind parse_model(std::string_view name) {
  for (ModelKind k : all_models()) {
    if (model_name(k) == name) return k;
  }
  throw ParameterError("model", "unknown model '" + std::string(name) +
                                    "' (expected 2ol-eq, minjerk, lqr, lqg or elqg)");
}

const std::vector<ModelKind>& all_models() {
  static const std::vector<ModelKind> kinds = {ModelKind::kTwoOLEq, ModelKind::kMinJerk,
                                               ModelKind::kLQR, ModelKind::kLQG,
                                               ModelKind::kELQG};
  return kinds;
}

bool is_stochastic(ModelKind kind) {
  return kind == ModelKind::kLQG || kind == ModelKind::kELQG;
}

const std::vector<std::string>& parameter_names(ModelKind kind) {
  static const std::vector<std::string> two_ol = {"k", "d"};
  static const std::vector<std::string> minjerk = {"n_mj"};
  static const std::vector<std::string> lqr = {"omega_r", "omega_v", "omega_f"};
  static const std::vector<std::string> lqg = {"omega_r", "omega_v", "omega_f", "sigma_u",
                                               "sigma_s"};
  static const std::vector<std::string> elqg = {"omega_r", "omega_v", "omega_f",
                                                "sigma_u", "sigma_v", "sigma_f",
                                                "sigma_e", "gamma",   "n_s"};
  switch (kind) {
    case ModelKind::kTwoOLEq: return two_ol;
    case ModelKind::kMinJerk: return minjerk;
    case ModelKind::kLQR: return lqr;
    case ModelKind::kLQG: return lqg;
    case ModelKind::kELQG: return elqg;
  }
  return two_ol;
}

void check_parameters(ModelKind kind, const ParameterMap& params) {
  const auto& names = parameter_names(kind);
  for (const auto& n : names) {
    if (!params.count(n)) throw ParameterError(n, "missing for model " + std::string(model_name(kind)));
  }
  for (const auto& [n, v] : params) {
    if (std::find(names.begin(), names.end(), n) == names.end()) {
      throw ParameterError(n, "not a parameter of model " + std::string(model_name(kind)));
    }
    if (!std::isfinite(v)) throw ParameterError(n, "must be finite");
  }
}

namespace {

LQCostWeights weights_of(const ParameterMap& p) {
  return {p.at("omega_r"), p.at("omega_v"), p.at("omega_f")};
}

KinematicSeries muscle_kinematics(const Trajectory& traj, double mass) {
  KinematicSeries k;
  k.position = traj.component(component::kPosition);
  k.velocity = traj.component(component::kVelocity);
  k.acceleration = traj.component(component::kForce);
  for (double& a : k.acceleration) a /= mass;
  for (const auto& u : traj.controls()) k.control.push_back(u(0));
  return k;
}

}  // namespace

StochasticProblem build_problem(ModelKind kind, const ParameterMap& params, const TaskSpec& task,
                                const ModelOptions& opts) {
  check_parameters(kind, params);
  if (kind == ModelKind::kLQG) {
    return make_lqg_problem(weights_of(params), {params.at("sigma_u"), params.at("sigma_s")},
                            task, opts.muscle);
  }
  if (kind == ModelKind::kELQG) {
    ELQGParams e{params.at("sigma_u"), params.at("sigma_v"), params.at("sigma_f"),
                 params.at("sigma_e"), params.at("gamma"),   params.at("n_s")};
    return make_elqg_problem(weights_of(params), e, task, opts.muscle);
  }
  throw ContractError(std::string(model_name(kind)) + " is not a stochastic model");
}

ModelRun run_model(ModelKind kind, const ParameterMap& params, const TaskSpec& task,
                   const ModelOptions& opts) {
  check_parameters(kind, params);
  task.validate();
  ModelRun run;
  run.kind = kind;
  switch (kind) {
    case ModelKind::kTwoOLEq: {
      const TwoOLParams p{params.at("k"), params.at("d")};
      Trajectory traj = simulate_2ol_eq(p, task);
      KinematicSeries& k = run.kinematics;
      k.position = traj.component(component::kPosition);
      k.velocity = traj.component(component::kVelocity);
      for (std::size_t n = 0; n < k.position.size(); ++n) {
        k.acceleration.push_back(p.k * (task.target - k.position[n]) - p.d * k.velocity[n]);
      }
      k.control.assign(task.n, p.k * task.target);
      run.trajectory = std::move(traj);
      break;
    }
    case ModelKind::kMinJerk: {
      Trajectory traj = minjerk_trajectory({params.at("n_mj")}, task);
      KinematicSeries& k = run.kinematics;
      k.position = traj.component(component::kPosition);
      k.velocity = traj.component(component::kVelocity);
      k.acceleration = traj.component(component::kAcceleration);
      for (const auto& u : traj.controls()) k.control.push_back(u(0));
      run.trajectory = std::move(traj);
      break;
    }
    case ModelKind::kLQR: {
      const LQCostWeights w = weights_of(params);
      ControlLaw law = solve_lqr(w, task, opts.muscle);
      const LinearSystem sys = build_muscle_system(opts.muscle, task.h);
      Trajectory traj = simulate_feedback(sys, law, initial_state(*sys.layout(), task));
      run.kinematics = muscle_kinematics(traj, opts.muscle.mass);
      run.trajectory = std::move(traj);
      run.law = std::move(law);
      break;
    }
    case ModelKind::kLQG:
    case ModelKind::kELQG: {
      StochasticProblem problem = build_problem(kind, params, task, opts);
      ControlLaw law = solve_stochastic(problem, opts.solver);
      ClosedLoopMoments moments = predict_moments(problem, law);
      KinematicSeries& k = run.kinematics;
      k.position = moments.state.mean_component(component::kPosition);
      k.velocity = moments.state.mean_component(component::kVelocity);
      k.acceleration = moments.state.mean_component(component::kForce);
      for (double& a : k.acceleration) a /= opts.muscle.mass;
      for (int n = 0; n < problem.steps(); ++n) {
        k.control.push_back(-(law.feedback[n] * moments.estimate_mean[n])(0));
      }
      run.problem = std::move(problem);
      run.law = std::move(law);
      run.moments = std::move(moments);
      break;
    }
  }
  return run;
}

KinematicSeries sample_kinematics(const ModelRun& run, std::uint64_t seed) {
  if (!is_stochastic(run.kind)) return run.kinematics;
  if (!run.problem || !run.law) throw ContractError("stochastic run has no solved problem");
  const Trajectory traj = sample_trajectory(*run.problem, *run.law, seed);
  // Mass is folded into the system's force-to-velocity entry.
  const auto& layout = *run.problem->system.layout();
  const double inv_mass = run.problem->system.a()(layout.index(component::kVelocity),
                                                  layout.index(component::kForce)) /
                          run.problem->system.h();
  KinematicSeries k = muscle_kinematics(traj, 1.0);
  for (double& a : k.acceleration) a *= inv_mass;
  return k;
}

}  // namespace ofc
