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

#ifndef OFC_DIFFERENTIAL_EVOLUTION_H_
#define OFC_DIFFERENTIAL_EVOLUTION_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ofc/linalg.h"

namespace ofc {

enum class ParameterKind { kContinuous, kRelaxedInteger };

// Log-scaled entries are searched uniformly in log10; they need lower > 0.
enum class ParameterScale { kLinear, kLog };

struct ParameterBound {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
  ParameterKind kind = ParameterKind::kContinuous;
  ParameterScale scale = ParameterScale::kLinear;
};

class ParameterSpace {
 public:
  ParameterSpace() = default;
  explicit ParameterSpace(std::vector<ParameterBound> entries);

  std::size_t dim() const { return entries_.size(); }
  const std::vector<ParameterBound>& entries() const { return entries_; }
  const ParameterBound& operator[](std::size_t i) const { return entries_[i]; }
  std::size_t index(const std::string& name) const;
  bool contains(const Vec& x) const;

  // Search coordinates (log10 for log-scaled entries) and back.
  Vec to_search(const Vec& x) const;
  Vec from_search(const Vec& z) const;
  Vec search_lower() const;
  Vec search_upper() const;

 private:
  std::vector<ParameterBound> entries_;
};

struct FitConfig {
  int population = 0;  // 0 selects max(15, 5 dim)
  int max_generations = 300;
  double tolerance = 1e-8;  // relative best-loss improvement over `patience`
  int patience = 30;
  double mutation = 0.8;
  double crossover = 0.9;
  std::uint64_t seed = 0;
  int threads = 1;  // 0 selects the hardware concurrency
  // Budget for a bounded Nelder-Mead polish of the final best; 0 disables it.
  int polish_evaluations = 0;

  int population_for(std::size_t dim) const;
  void validate() const;
};

struct DEResult {
  Vec best;
  double best_loss = 0.0;
  std::vector<double> history;  // best loss after initialization and each generation
  long evaluations = 0;
  long failed_evaluations = 0;  // exceptions or non-finite losses
  int generations = 0;
  bool converged = false;
  bool success = false;  // false when every candidate had infinite loss
  long polish_evaluations = 0;
  double polish_gain = 0.0;  // loss reduction from polishing
};

// Loss in natural coordinates. Exceptions and non-finite values count as +inf.
using LossFunction = std::function<double(const Vec&)>;

// DE/rand/1/bin with clipping to the box and greedy selection; a trial
// replaces its parent only when strictly better. `history` covers the DE
// generations only; an optional polish can lower `best_loss` further.
DEResult differential_evolution(const ParameterSpace& space, const LossFunction& loss,
                                const FitConfig& cfg);

}  // namespace ofc

#endif  // OFC_DIFFERENTIAL_EVOLUTION_H_
