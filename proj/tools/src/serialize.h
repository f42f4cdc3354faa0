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

#ifndef OFCPOINT_SERIALIZE_H_
#define OFCPOINT_SERIALIZE_H_

#include <cstdint>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "ofc/fitting.h"
#include "ofc/model_registry.h"
#include "ofc/preprocess.h"

namespace ofcpoint {

using nlohmann::json;

json to_json(const ofc::ParameterMap& p);
json to_json(const ofc::TaskSpec& t);
json to_json(const ofc::ConditionMeta& m);

ofc::TaskSpec task_from_json(const json& j);

// {model, params, loss, history, evals, seed, ...}
json fit_result_json(const ofc::FitResult& r, const std::string& condition);

struct StoredResult {
  ofc::ModelKind model;
  ofc::ParameterMap params;
  std::optional<ofc::TaskSpec> task;
  std::string label;
};
StoredResult read_result(const std::string& path);

// Per-frame mean and covariance over the full model state.
json distribution_json(const ofc::ModelRun& run, const ofc::TaskSpec& task);

// {meta, N, h, mean[], cov[][][]}; mean is (p, v) per frame, cov row-major 2x2.
json ensemble_json(const ofc::TrajectoryEnsemble& e);

void write_trajectory_csv(std::ostream& out, const ofc::ModelRun& run, const ofc::TaskSpec& task);

std::string dump(const json& j);

}  // namespace ofcpoint

#endif  // OFCPOINT_SERIALIZE_H_
