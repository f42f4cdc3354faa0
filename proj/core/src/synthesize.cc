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

#include "ofc/synthesize.h"

#include <cmath>
#include <random>

#include "ofc/errors.h"

namespace ofc {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Corpus synthesize_corpus(ModelKind kind, const ParameterMap& params, const TaskSpec& task,
                         int trials, std::uint64_t seed, const SynthesizeOptions& opts) {
  if (trials < 1) throw ParameterError("trials", "must be at least 1");
  if (!(opts.jitter >= 0.0) || !std::isfinite(opts.jitter)) {
    throw ParameterError("jitter", "must be nonnegative");
  }
  const ModelRun run = run_model(kind, params, task, opts.model);

  Corpus c;
  c.meta.participant = opts.participant;
  c.meta.condition = opts.condition.empty() ? std::string(model_name(kind)) : opts.condition;
  c.meta.direction = task.target >= task.origin ? Direction::kRight : Direction::kLeft;
  c.meta.origin = task.origin;
  c.meta.target = task.target;
  c.meta.width = task.width;
  c.meta.h = task.h;

  std::mt19937_64 jitter_rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < trials; ++i) {
    RawTrial t;
    t.id = "t" + std::to_string(i);
    if (is_stochastic(kind)) {
      t.position = sample_kinematics(run, derive_seed(seed, i)).position;
    } else {
      t.position = run.kinematics.position;
      if (opts.jitter > 0.0) {
        for (double& p : t.position) p += opts.jitter * normal(jitter_rng);
      }
    }
    t.time.resize(t.position.size());
    for (std::size_t n = 0; n < t.time.size(); ++n) t.time[n] = n * task.h;
    c.trials.push_back(std::move(t));
  }
  return c;
}

}  // namespace ofc
