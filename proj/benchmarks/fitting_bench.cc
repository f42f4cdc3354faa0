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

#include <benchmark/benchmark.h>

#include "ofc/differential_evolution.h"
#include "ofc/fitting.h"
#include "ofc/preprocess.h"
#include "ofc/second_order_lag.h"

namespace {

using namespace ofc;

void BM_DeSphere(benchmark::State& state) {
  const ParameterSpace space({{"a", -5.0, 5.0}, {"b", -5.0, 5.0}, {"c", -5.0, 5.0}});
  FitConfig cfg;
  cfg.max_generations = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(differential_evolution(space, [](const Vec& x) { return x.squaredNorm(); }, cfg));
  }
}
BENCHMARK(BM_DeSphere)->Unit(benchmark::kMillisecond);

void BM_FitTwoOL(benchmark::State& state) {
  const TaskSpec task = TaskSpec::rest_to_rest(0.0, 0.212, 0.0141, 485);
  const ParameterMap gen = {{"k", 40.0}, {"d", TwoOLParams::from_zeta(40.0, 1.0).d}};
  ConditionMeta meta;
  meta.origin = 0.0;
  meta.target = 0.212;
  meta.width = 0.0141;
  const RawTrial t{"t0", {}, run_model(ModelKind::kTwoOLEq, gen, task).kinematics.position, false};
  const TrajectoryEnsemble ref = extend_and_align({t}, meta);
  FitConfig cfg;
  cfg.max_generations = 50;
  for (auto _ : state) benchmark::DoNotOptimize(fit(ModelKind::kTwoOLEq, task, ref, cfg));
}
BENCHMARK(BM_FitTwoOL)->Unit(benchmark::kMillisecond);

}  // namespace
