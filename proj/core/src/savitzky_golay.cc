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

#include "ofc/savitzky_golay.h"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "ofc/errors.h"

namespace ofc {

std::vector<double> savitzky_golay(std::span<const double> y, int window, int order, int deriv,
                                   double h) {
  if (window < 1 || window % 2 == 0) throw ContractError("window must be odd and positive");
  if (order < 0 || order >= window) throw ContractError("order must be in [0, window)");
  if (deriv < 0 || deriv > order) throw ContractError("derivative order must be in [0, order]");
  if (!(h > 0.0)) throw ContractError("h must be positive");
  if (y.size() < static_cast<std::size_t>(window)) {
    throw ContractError("series of length " + std::to_string(y.size()) +
                        " is shorter than the window " + std::to_string(window));
  }

  // weights.row(s): estimator of the derivative at window offset s.
  Eigen::MatrixXd weights(window, window);
  double factorial = 1.0;
  for (int i = 2; i <= deriv; ++i) factorial *= i;
  const double scale = factorial / std::pow(h, deriv);
  for (int s = 0; s < window; ++s) {
    Eigen::MatrixXd v(window, order + 1);
    for (int i = 0; i < window; ++i) {
      double t = 1.0;
      for (int j = 0; j <= order; ++j) {
        v(i, j) = t;
        t *= (i - s);
      }
    }
    const Eigen::MatrixXd pinv =
        v.colPivHouseholderQr().solve(Eigen::MatrixXd::Identity(window, window));
    weights.row(s) = scale * pinv.row(deriv);
  }

  const int n = static_cast<int>(y.size());
  const int half = window / 2;
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    int start = i - half;
    if (start < 0) start = 0;
    if (start + window > n) start = n - window;
    const int s = i - start;
    double acc = 0.0;
    for (int j = 0; j < window; ++j) acc += weights(s, j) * y[start + j];
    out[i] = acc;
  }
  return out;
}

std::vector<double> reference_acceleration(std::span<const double> position, double h) {
  return savitzky_golay(position, 15, 3, 2, h);
}

}  // namespace ofc
