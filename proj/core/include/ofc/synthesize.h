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

#ifndef OFC_SYNTHESIZE_H_
#define OFC_SYNTHESIZE_H_

#include <cstdint>
#include <string>

#include "ofc/corpus.h"
#include "ofc/model_registry.h"

namespace ofc {

struct SynthesizeOptions {
  double jitter = 0.0;  // additive position noise std for deterministic models, meters
  std::string participant = "synthetic";
  std::string condition;
  ModelOptions model;
};

// Trials sampled from the model in corpus form. Stochastic models draw one
// closed-loop rollout per trial; deterministic models repeat their trajectory
// with optional jitter. Deterministic given the seed.
Corpus synthesize_corpus(ModelKind kind, const ParameterMap& params, const TaskSpec& task,
                         int trials, std::uint64_t seed, const SynthesizeOptions& opts = {});

// Per-trial seed derived from a base seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace ofc

#endif  // OFC_SYNTHESIZE_H_
