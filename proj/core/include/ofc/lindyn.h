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

#ifndef OFC_LINDYN_H_
#define OFC_LINDYN_H_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ofc/linalg.h"

namespace ofc {

// Named index map over the components of a state vector. Names are unique.
class StateLayout {
 public:
  explicit StateLayout(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  bool contains(std::string_view name) const;
  // Throws ContractError for unknown names.
  Eigen::Index index(std::string_view name) const;

  bool operator==(const StateLayout& other) const { return names_ == other.names_; }

  // (p, v)
  static std::shared_ptr<const StateLayout> position_velocity();
  // (p, v, a)
  static std::shared_ptr<const StateLayout> position_velocity_acceleration();
  // (p, v, f, g, T)
  static std::shared_ptr<const StateLayout> muscle();
  // (p, v, f, g, T0, T)
  static std::shared_ptr<const StateLayout> muscle_with_origin();

 private:
  std::vector<std::string> names_;
};

using LayoutPtr = std::shared_ptr<const StateLayout>;

namespace component {
inline constexpr std::string_view kPosition = "p";
inline constexpr std::string_view kVelocity = "v";
inline constexpr std::string_view kAcceleration = "a";
inline constexpr std::string_view kForce = "f";
inline constexpr std::string_view kExcitation = "g";
inline constexpr std::string_view kOrigin = "T0";
inline constexpr std::string_view kTarget = "T";
}  // namespace component

// x_{n+1} = A x_n + B u_n with step duration h.
class LinearSystem {
 public:
  LinearSystem(Mat a, Mat b, double h, LayoutPtr layout);

  const Mat& a() const { return a_; }
  const Mat& b() const { return b_; }
  double h() const { return h_; }
  Eigen::Index state_dim() const { return a_.rows(); }
  Eigen::Index control_dim() const { return b_.cols(); }
  const LayoutPtr& layout() const { return layout_; }

 private:
  Mat a_;
  Mat b_;
  double h_;
  LayoutPtr layout_;
};

struct StateVector {
  Vec values;
  LayoutPtr layout;

  double operator[](std::string_view name) const { return values(layout->index(name)); }
};

// Gaussian over the state. The covariance is symmetrized and tiny negative
// eigenvalues are clamped on construction.
class StateDistribution {
 public:
  StateDistribution(Vec mean, const Mat& covariance);

  const Vec& mean() const { return mean_; }
  const Mat& covariance() const { return covariance_; }

 private:
  Vec mean_;
  Mat covariance_;
};

class Trajectory {
 public:
  Trajectory(LayoutPtr layout, double h);

  void push_state(Vec x);
  void push_control(Vec u);

  // Number of transitions N; states() has N + 1 entries once complete.
  std::size_t steps() const { return controls_.size(); }
  const std::vector<Vec>& states() const { return states_; }
  const std::vector<Vec>& controls() const { return controls_; }
  StateVector state(std::size_t n) const { return {states_.at(n), layout_}; }
  const LayoutPtr& layout() const { return layout_; }
  double h() const { return h_; }

  // Time series of one named component across all states.
  std::vector<double> component(std::string_view name) const;

  // True when states().size() == controls().size() + 1.
  bool complete() const { return states_.size() == controls_.size() + 1; }

 private:
  LayoutPtr layout_;
  double h_;
  std::vector<Vec> states_;
  std::vector<Vec> controls_;
};

class DistributionTrajectory {
 public:
  DistributionTrajectory(LayoutPtr layout, double h) : layout_(std::move(layout)), h_(h) {}

  void push(StateDistribution d) { steps_.push_back(std::move(d)); }
  const std::vector<StateDistribution>& steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }
  const LayoutPtr& layout() const { return layout_; }
  double h() const { return h_; }

  std::vector<double> mean_component(std::string_view name) const;
  std::vector<double> variance_component(std::string_view name) const;

 private:
  LayoutPtr layout_;
  double h_;
  std::vector<StateDistribution> steps_;
};

// A x + B u.
StateVector step(const LinearSystem& system, const StateVector& state, const Vec& control);

// states[0] = x0, states[n+1] = step(states[n], controls[n]).
Trajectory rollout(const LinearSystem& system, const StateVector& x0,
                   std::span<const Vec> controls);

// One closed-loop step u = -L x with exact state knowledge and
// signal-dependent control noise (1 + sigma_u * eta) B u.
StateDistribution propagate_moments(const LinearSystem& system, const StateDistribution& dist,
                                    const Mat& gain, double control_noise);

// Joint Gaussian over the true state x and the controller's estimate xhat,
// stacked as z = (x, xhat) of dimension 2k.
class JointDistribution {
 public:
  JointDistribution(Vec mean, const Mat& covariance);

  // x ~ N(mean, cov), xhat fixed at `estimate`.
  static JointDistribution from_prior(const StateDistribution& state, const Vec& estimate);

  const Vec& mean() const { return mean_; }
  const Mat& covariance() const { return covariance_; }
  Eigen::Index state_dim() const { return mean_.size() / 2; }

  StateDistribution true_state() const;
  StateDistribution estimate() const;

 private:
  Vec mean_;
  Mat covariance_;
};

// Everything needed for one step of the estimator-in-the-loop system
//   x'    = A x - (1 + sigma_u eta) B L xhat
//   xhat' = A xhat - B L xhat + K (H x + G xi - H xhat),   G G^T = obs_cov.
struct ClosedLoopStep {
  Mat feedback;       // L, m x k
  Mat kalman;         // K, k x l
  Mat observation;    // H, l x k
  Mat obs_cov;        // G G^T, l x l
  double control_noise = 0.0;
};

JointDistribution propagate_moments(const LinearSystem& system, const JointDistribution& dist,
                                    const ClosedLoopStep& step);

}  // namespace ofc

#endif  // OFC_LINDYN_H_
