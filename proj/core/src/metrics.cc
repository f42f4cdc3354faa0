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

#include "ofc/metrics.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ofc/errors.h"

namespace ofc {

namespace {

constexpr double kKlRegularization = 1e-12;

void check_lengths(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw ContractError(std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " +
                        std::to_string(b) + ")");
  }
}

void check_gaussian(const Gaussian& g) {
  const Eigen::Index k = g.mean.size();
  if (g.cov.rows() != k || g.cov.cols() != k) throw ContractError("covariance shape mismatch");
  if (!g.mean.allFinite() || !g.cov.allFinite()) throw ContractError("Gaussian is not finite");
  if (k > 0 && min_eigenvalue(g.cov) < -kPsdTolerance) {
    throw ContractError("covariance is not positive semidefinite");
  }
}

// tr((S1 S2)^{1/2}) for PSD S1, S2.
double trace_sqrt_product(const Mat& s1, const Mat& s2) {
  if (s1.rows() == 1) return std::sqrt(std::max(s1(0, 0) * s2(0, 0), 0.0));
  if (s1.rows() == 2) {
    // For 2x2 PSD M, tr sqrt(M) = sqrt(tr M + 2 sqrt(det M)); R = sqrt(S1) S2 sqrt(S1)
    // shares trace and determinant with S1 S2.
    const Eigen::Matrix2d a = s1;
    const Eigen::Matrix2d b = s2;
    const double tr = (a * b).trace();
    const double det = std::max(a.determinant() * b.determinant(), 0.0);
    return std::sqrt(std::max(tr + 2.0 * std::sqrt(det), 0.0));
  }
  const Mat r = psd_sqrt(s1);
  const Mat inner = symmetrize(r * s2 * r);
  Eigen::SelfAdjointEigenSolver<Mat> eig(inner, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
}

Mat regularized(const Mat& s) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(symmetrize(s), Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() > 0.0) return symmetrize(s);
  return symmetrize(s) + kKlRegularization * Mat::Identity(s.rows(), s.cols());
}

}  // namespace

double sse(std::span<const double> sim, std::span<const double> ref) {
  check_lengths(sim.size(), ref.size(), "sse");
  double s = 0.0;
  for (std::size_t i = 0; i < sim.size(); ++i) {
    const double d = sim[i] - ref[i];
    s += d * d;
  }
  return s;
}

double max_error(std::span<const double> sim, std::span<const double> ref) {
  check_lengths(sim.size(), ref.size(), "max_error");
  double m = 0.0;
  for (std::size_t i = 0; i < sim.size(); ++i) m = std::max(m, std::abs(sim[i] - ref[i]));
  return m;
}

double wasserstein2(const Gaussian& a, const Gaussian& b) {
  check_gaussian(a);
  check_gaussian(b);
  check_lengths(a.mean.size(), b.mean.size(), "wasserstein2");
  const double radicand = (a.mean - b.mean).squaredNorm() + a.cov.trace() + b.cov.trace() -
                          2.0 * trace_sqrt_product(a.cov, b.cov);
  return std::sqrt(std::max(radicand, 0.0));
}

double mwd(const GaussianSeries& sim, const GaussianSeries& ref) {
  check_lengths(sim.size(), ref.size(), "mwd");
  if (sim.empty()) throw ContractError("mwd: empty series");
  double s = 0.0;
  for (std::size_t i = 0; i < sim.size(); ++i) s += wasserstein2(sim[i], ref[i]);
  return s / static_cast<double>(sim.size());
}

double gaussian_kl(const Gaussian& a, const Gaussian& b) {
  check_gaussian(a);
  check_gaussian(b);
  check_lengths(a.mean.size(), b.mean.size(), "gaussian_kl");
  const Eigen::Index k = a.mean.size();
  const Mat sa = regularized(a.cov);
  const Mat sb = regularized(b.cov);
  Eigen::LDLT<Mat> lb(sb);
  Eigen::LDLT<Mat> la(sa);
  const Vec d = b.mean - a.mean;
  const double log_det_b = lb.vectorD().array().log().sum();
  const double log_det_a = la.vectorD().array().log().sum();
  const double kl = 0.5 * ((lb.solve(sa)).trace() + d.dot(lb.solve(d)) - static_cast<double>(k) +
                           log_det_b - log_det_a);
  return std::max(kl, 0.0);  // rounding can leave a tiny negative for equal inputs
}

double mkl(const GaussianSeries& sim, const GaussianSeries& ref) {
  check_lengths(sim.size(), ref.size(), "mkl");
  if (sim.empty()) throw ContractError("mkl: empty series");
  double s = 0.0;
  for (std::size_t i = 0; i < sim.size(); ++i) s += gaussian_kl(sim[i], ref[i]);
  return s / static_cast<double>(sim.size());
}

GaussianSeries marginal_series(const DistributionTrajectory& d,
                               std::span<const std::string_view> names) {
  std::vector<Eigen::Index> idx;
  for (auto n : names) idx.push_back(d.layout()->index(n));
  const auto k = static_cast<Eigen::Index>(idx.size());
  GaussianSeries out;
  out.reserve(d.size());
  for (const auto& step : d.steps()) {
    Gaussian g{Vec(k), Mat(k, k)};
    for (Eigen::Index i = 0; i < k; ++i) {
      g.mean(i) = step.mean()(idx[i]);
      for (Eigen::Index j = 0; j < k; ++j) g.cov(i, j) = step.covariance()(idx[i], idx[j]);
    }
    out.push_back(std::move(g));
  }
  return out;
}

GaussianSeries position_velocity_series(const DistributionTrajectory& d) {
  const std::string_view names[] = {component::kPosition, component::kVelocity};
  return marginal_series(d, names);
}

}  // namespace ofc
