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

#ifndef OFC_TESTS_GAUSSIAN_ORACLE_H_
#define OFC_TESTS_GAUSSIAN_ORACLE_H_

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace oracle {

// Principal square root of a general matrix with positive spectrum
// (Denman-Beavers iteration); no symmetric reformulation involved.
inline Eigen::MatrixXd sqrtm_db(const Eigen::MatrixXd& m, int iterations = 60) {
  Eigen::MatrixXd y = m;
  Eigen::MatrixXd z = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  for (int i = 0; i < iterations; ++i) {
    const Eigen::MatrixXd yi = y.inverse();
    const Eigen::MatrixXd zi = z.inverse();
    y = 0.5 * (y + zi);
    z = 0.5 * (z + yi);
  }
  return y;
}

// Squared-Wasserstein closed form on positive definite inputs.
inline double w2(const Eigen::VectorXd& m1, const Eigen::MatrixXd& s1, const Eigen::VectorXd& m2,
                 const Eigen::MatrixXd& s2) {
  const double cross = sqrtm_db(s1 * s2).trace();
  const double r = (m1 - m2).squaredNorm() + s1.trace() + s2.trace() - 2 * cross;
  return std::sqrt(std::max(0.0, r));
}

// KL(N(m1, s1) || N(m2, s2)) by direct LU inverse and determinants.
inline double kl(const Eigen::VectorXd& m1, const Eigen::MatrixXd& s1, const Eigen::VectorXd& m2,
                 const Eigen::MatrixXd& s2) {
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(s2);
  const Eigen::MatrixXd inv = lu.inverse();
  const Eigen::VectorXd d = m2 - m1;
  const double k = static_cast<double>(m1.size());
  return 0.5 * ((inv * s1).trace() - k + d.dot(inv * d) +
                std::log(lu.determinant() / s1.determinant()));
}

}  // namespace oracle

#endif  // OFC_TESTS_GAUSSIAN_ORACLE_H_
