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

#include "lqg_monte_carlo.h"

#include <cmath>
#include <random>

namespace oracle {

std::vector<FrameStats> monte_carlo(const MusclePlant& pl,
                                    const std::vector<Eigen::Matrix<double, 1, 5>>& feedback,
                                    const std::vector<Eigen::Matrix<double, 5, 3>>& kalman,
                                    const Vec5& x0, const Mat5& cov0, long rollouts,
                                    std::uint64_t seed, const std::vector<int>& frames) {
  const double h = pl.h;
  Mat5 a = Mat5::Identity();
  a(0, 1) = h;
  a(1, 2) = h / pl.mass;
  a(2, 2) = 1 - h / pl.tau2;
  a(2, 3) = h / pl.tau2;
  a(3, 3) = 1 - h / pl.tau1;
  Vec5 b = Vec5::Zero();
  b(3) = h / pl.tau1;
  Eigen::Matrix<double, 3, 5> obs = Eigen::Matrix<double, 3, 5>::Zero();
  obs(0, 0) = obs(1, 1) = obs(2, 2) = 1.0;
  const Eigen::Vector3d g = pl.sigma_s * Eigen::Vector3d(0.02, 0.2, 1.0);

  Eigen::SelfAdjointEigenSolver<Mat5> eig(cov0);
  const Mat5 root = eig.eigenvectors() *
                    eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                    eig.eigenvectors().transpose();

  const int steps = static_cast<int>(feedback.size());
  std::vector<int> slot(steps + 1, -1);
  for (std::size_t i = 0; i < frames.size(); ++i) slot[frames[i]] = static_cast<int>(i);

  // Shifted sums for numerically stable moments.
  std::vector<Vec5> s1(frames.size(), Vec5::Zero()), s2(frames.size(), Vec5::Zero());
  std::vector<double> p3(frames.size(), 0.0), p4(frames.size(), 0.0);
  std::vector<Vec5> shift(frames.size(), Vec5::Zero());
  std::vector<bool> shifted(frames.size(), false);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (long r = 0; r < rollouts; ++r) {
    Vec5 z;
    for (int i = 0; i < 5; ++i) z(i) = normal(rng);
    Vec5 x = x0 + root * z;
    Vec5 xhat = x0;
    for (int n = 0;; ++n) {
      if (slot[n] >= 0) {
        const int s = slot[n];
        if (!shifted[s]) shift[s] = x, shifted[s] = true;
        const Vec5 d = x - shift[s];
        s1[s] += d;
        s2[s] += d.cwiseProduct(d);
        // Raw power sums of position offsets for the fourth central moment.
        p3[s] += d(0) * d(0) * d(0);
        p4[s] += d(0) * d(0) * d(0) * d(0);
      }
      if (n == steps) break;
      const double u = -(feedback[n] * xhat)(0);
      const double eta = normal(rng);
      Eigen::Vector3d xi;
      for (int i = 0; i < 3; ++i) xi(i) = normal(rng);
      const Eigen::Vector3d y = obs * x + g.cwiseProduct(xi);
      const Vec5 xn = a * x + (1.0 + pl.sigma_u * eta) * u * b;
      xhat = a * xhat + u * b + kalman[n] * (y - obs * xhat);
      x = xn;
    }
  }

  std::vector<FrameStats> out;
  const double m = static_cast<double>(rollouts);
  for (std::size_t s = 0; s < frames.size(); ++s) {
    FrameStats f;
    f.frame = frames[s];
    const Vec5 mu = s1[s] / m;
    const Vec5 var = (s2[s] / m - mu.cwiseProduct(mu)) * (m / (m - 1));
    f.mean = shift[s] + mu;
    f.sem = (var.cwiseMax(0.0) / m).cwiseSqrt();
    f.var_p = var(0);
    // Central fourth moment from raw moments of the shifted position.
    const double e1 = mu(0), e2 = s2[s](0) / m, e3 = p3[s] / m, e4 = p4[s] / m;
    const double m4 = e4 - 4 * e1 * e3 + 6 * e1 * e1 * e2 - 3 * e1 * e1 * e1 * e1;
    const double m2 = e2 - e1 * e1;
    f.var_p_se = std::sqrt(std::max(0.0, m4 - m2 * m2) / m);
    out.push_back(f);
  }
  return out;
}

}  // namespace oracle
