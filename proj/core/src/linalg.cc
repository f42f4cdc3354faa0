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

#include "ofc/linalg.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ofc/errors.h"

namespace ofc {

Mat symmetrize(const Mat& m) { return 0.5 * (m + m.transpose()); }

double min_eigenvalue(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> eig(symmetrize(m), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

bool all_finite(const Mat& m) { return m.allFinite(); }

Mat project_psd(const Mat& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw ContractError(std::string(what) + " is not square");
  }
  if (!m.allFinite()) {
    throw NumericalError(std::string(what) + " has non-finite entries");
  }
  Mat s = symmetrize(m);
  if (s.size() == 0) return s;
  Eigen::SelfAdjointEigenSolver<Mat> eig(s);
  const Vec& ev = eig.eigenvalues();
  if (ev.minCoeff() < -kPsdTolerance) {
    throw NumericalError(std::string(what) + " is not positive semidefinite (eigenvalue " +
                         std::to_string(ev.minCoeff()) + ")");
  }
  if (ev.minCoeff() >= 0.0) return s;
  Vec clamped = ev.cwiseMax(0.0);
  return symmetrize(eig.eigenvectors() * clamped.asDiagonal() * eig.eigenvectors().transpose());
}

Mat psd_sqrt(const Mat& m) {
  if (m.size() == 0) return m;
  Eigen::SelfAdjointEigenSolver<Mat> eig(symmetrize(m));
  Vec root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return symmetrize(eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose());
}

Mat psd_pinv(const Mat& m, double rel_tol) {
  if (m.size() == 0) return m;
  if (m.rows() == 1) {
    const double v = m(0, 0);
    return Mat::Constant(1, 1, v > 0.0 ? 1.0 / v : 0.0);
  }
  Eigen::SelfAdjointEigenSolver<Mat> eig(symmetrize(m));
  const Vec& ev = eig.eigenvalues();
  const double cutoff = rel_tol * std::max(ev.maxCoeff(), 0.0);
  Vec inv(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    inv(i) = ev(i) > cutoff && ev(i) > 0.0 ? 1.0 / ev(i) : 0.0;
  }
  return symmetrize(eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose());
}

}  // namespace ofc
