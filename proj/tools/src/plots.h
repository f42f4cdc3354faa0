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

#ifndef OFCPOINT_PLOTS_H_
#define OFCPOINT_PLOTS_H_

#include <string>
#include <vector>

#include "ofc/model_registry.h"
#include "ofc/preprocess.h"
#include "svg.h"

namespace ofcpoint {

// Bands are mean +/- 1.96 std per frame.
inline constexpr double kBandZ = 1.96;

std::vector<PlotPanel> run_panels(const ofc::ModelRun& run, const ofc::TaskSpec& task,
                                  const std::string& label);

std::vector<PlotPanel> ensemble_panels(const ofc::TrajectoryEnsemble& e, const std::string& label);

std::vector<PlotPanel> sweep_panels(const std::vector<ofc::ModelRun>& runs,
                                    const std::vector<double>& values, const std::string& param,
                                    const ofc::TaskSpec& task);

}  // namespace ofcpoint

#endif  // OFCPOINT_PLOTS_H_
