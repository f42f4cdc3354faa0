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

#ifndef OFC_MODEL_REGISTRY_H_
#define OFC_MODEL_REGISTRY_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ofc/lindyn.h"
#include "ofc/lqg.h"
#include "ofc/task.h"

namespace ofc {

enum class ModelKind { kTwoOLEq, kMinJerk, kLQR, kLQG, kELQG };

// "2ol-eq", "minjerk", "lqr", "lqg", "elqg".
std::string_view model_name(ModelKind kind);
// Throws ParameterError("model") for unknown names.
ModelKind parse_model(std::string_view name);
const std::vector<ModelKind>& all_models();

// LQG and E-LQG produce state distributions.
bool is_stochastic(ModelKind kind);

using ParameterMap = std::map<std::string, double>;

// Parameter names in fitting order.
const std::vector<std::string>& parameter_names(ModelKind kind);

// Throws ParameterError naming the first missing or unknown entry.
void check_parameters(ModelKind kind, const ParameterMap& params);

struct ModelOptions {
  MuscleParams muscle;
  SolverOptions solver;
};

struct KinematicSeries {
  std::vector<double> position;
  std::vector<double> velocity;
  std::vector<double> acceleration;
  std::vector<double> control;  // N entries
};

struct ModelRun {
  ModelKind kind = ModelKind::kTwoOLEq;
  KinematicSeries kinematics;   // mean behavior for stochastic models
  std::optional<Trajectory> trajectory;          // deterministic models
  std::optional<StochasticProblem> problem;      // stochastic models
  std::optional<ControlLaw> law;                 // LQR, LQG, E-LQG
  std::optional<ClosedLoopMoments> moments;      // stochastic models
};

// Stochastic models solve and propagate moments; deterministic models roll out.
ModelRun run_model(ModelKind kind, const ParameterMap& params, const TaskSpec& task,
                   const ModelOptions& opts = {});

// Builds the solver problem without solving. Only for LQG and E-LQG.
StochasticProblem build_problem(ModelKind kind, const ParameterMap& params, const TaskSpec& task,
                                const ModelOptions& opts = {});

// One noisy rollout as kinematic series; deterministic models return their mean.
KinematicSeries sample_kinematics(const ModelRun& run, std::uint64_t seed);

}  // namespace ofc

#endif  // OFC_MODEL_REGISTRY_H_
