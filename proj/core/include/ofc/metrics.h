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

#ifndef OFC_METRICS_H_
#define OFC_METRICS_H_

#include <span>
#include <vector>

#include "ofc/lindyn.h"

namespace ofc {

struct Gaussian {
  Vec mean;
  Mat cov;
};

using GaussianSeries = std::vector<Gaussian>;

// Sum of squared differences. Throws ContractError on length mismatch.
double sse(std::span<const double> sim, std::span<const double> ref);

double max_error(std::span<const double> sim, std::span<const double> ref);

// 2-Wasserstein distance between Gaussians.
double wasserstein2(const Gaussian& a, const Gaussian& b);

// Time average of wasserstein2.
double mwd(const GaussianSeries& sim, const GaussianSeries& ref);

// D(a || b); a is the simulation, b the reference. Singular covariances are
// regularized by 1e-12 I.
double gaussian_kl(const Gaussian& a, const Gaussian& b);

// Time average of gaussian_kl.
double mkl(const GaussianSeries& sim, const GaussianSeries& ref);

// Marginal over the named components at each step.
GaussianSeries marginal_series(const DistributionTrajectory& d,
                               std::span<const std::string_view> names);

// Position/velocity marginal.
GaussianSeries position_velocity_series(const DistributionTrajectory& d);

}  // namespace ofc

#endif  // OFC_METRICS_H_
