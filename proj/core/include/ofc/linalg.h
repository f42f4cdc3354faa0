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

#ifndef OFC_LINALG_H_
#define OFC_LINALG_H_

#include <Eigen/Dense>

namespace ofc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Tolerance below which a symmetric eigenvalue is treated as negative
// rather than as round-off.
inline constexpr double kPsdTolerance = 1e-9;

// (M + M^T) / 2.
Mat symmetrize(const Mat& m);

// Smallest eigenvalue of the symmetric part of `m`.
double min_eigenvalue(const Mat& m);

// Symmetrizes `m` and clamps eigenvalues in [-kPsdTolerance, 0) to zero.
// Throws NumericalError if an eigenvalue is below -kPsdTolerance or an entry
// is not finite. `what` names the matrix in the error message.
Mat project_psd(const Mat& m, const char* what = "matrix");

// Principal square root of a symmetric PSD matrix via eigendecomposition,
// negative eigenvalues clamped to zero.
Mat psd_sqrt(const Mat& m);

// Moore-Penrose inverse of a symmetric PSD matrix. Eigenvalues at or below
// `rel_tol * max_eigenvalue` are treated as zero.
Mat psd_pinv(const Mat& m, double rel_tol = 1e-12);

bool all_finite(const Mat& m);

}  // namespace ofc

#endif  // OFC_LINALG_H_
