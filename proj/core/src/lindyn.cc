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

#include "ofc/lindyn.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "ofc/errors.h"

namespace ofc {

StateLayout::StateLayout(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw ContractError("state layout contains an empty name");
    if (!seen.insert(n).second) throw ContractError("duplicate state component '" + n + "'");
  }
}

bool StateLayout::contains(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

Eigen::Index StateLayout::index(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    throw ContractError("state layout has no component '" + std::string(name) + "'");
  }
  return static_cast<Eigen::Index>(it - names_.begin());
}

LayoutPtr StateLayout::position_velocity() {
  static const auto layout = std::make_shared<const StateLayout>(std::vector<std::string>{"p", "v"});
  return layout;
}

LayoutPtr StateLayout::position_velocity_acceleration() {
  static const auto layout =
      std::make_shared<const StateLayout>(std::vector<std::string>{"p", "v", "a"});
  return layout;
}

LayoutPtr StateLayout::muscle() {
  static const auto layout =
      std::make_shared<const StateLayout>(std::vector<std::string>{"p", "v", "f", "g", "T"});
  return layout;
}

LayoutPtr StateLayout::muscle_with_origin() {
  static const auto layout = std::make_shared<const StateLayout>(
      std::vector<std::string>{"p", "v", "f", "g", "T0", "T"});
  return layout;
}

LinearSystem::LinearSystem(Mat a, Mat b, double h, LayoutPtr layout)
    : a_(std::move(a)), b_(std::move(b)), h_(h), layout_(std::move(layout)) {
  if (a_.rows() != a_.cols()) throw ContractError("A must be square");
  if (b_.rows() != a_.rows()) throw ContractError("B must have as many rows as A");
  if (!(h_ > 0.0) || !std::isfinite(h_)) throw ContractError("step duration h must be positive");
  if (!a_.allFinite() || !b_.allFinite()) throw ContractError("A and B must be finite");
  if (!layout_) throw ContractError("linear system requires a state layout");
  if (static_cast<Eigen::Index>(layout_->size()) != a_.rows()) {
    throw ContractError("state layout size does not match A");
  }
}

StateDistribution::StateDistribution(Vec mean, const Mat& covariance)
    : mean_(std::move(mean)) {
  if (covariance.rows() != mean_.size() || covariance.cols() != mean_.size()) {
    throw ContractError("covariance dimension does not match mean");
  }
  covariance_ = project_psd(covariance, "state covariance");
}

Trajectory::Trajectory(LayoutPtr layout, double h) : layout_(std::move(layout)), h_(h) {
  if (!layout_) throw ContractError("trajectory requires a state layout");
}

void Trajectory::push_state(Vec x) {
  if (static_cast<std::size_t>(x.size()) != layout_->size()) {
    throw ContractError("state length does not match layout");
  }
  states_.push_back(std::move(x));
}

void Trajectory::push_control(Vec u) { controls_.push_back(std::move(u)); }

std::vector<double> Trajectory::component(std::string_view name) const {
  const Eigen::Index i = layout_->index(name);
  std::vector<double> out;
  out.reserve(states_.size());
  for (const auto& x : states_) out.push_back(x(i));
  return out;
}

std::vector<double> DistributionTrajectory::mean_component(std::string_view name) const {
  const Eigen::Index i = layout_->index(name);
  std::vector<double> out;
  out.reserve(steps_.size());
  for (const auto& d : steps_) out.push_back(d.mean()(i));
  return out;
}

std::vector<double> DistributionTrajectory::variance_component(std::string_view name) const {
  const Eigen::Index i = layout_->index(name);
  std::vector<double> out;
  out.reserve(steps_.size());
  for (const auto& d : steps_) out.push_back(d.covariance()(i, i));
  return out;
}

StateVector step(const LinearSystem& system, const StateVector& state, const Vec& control) {
  if (state.values.size() != system.state_dim()) {
    throw ContractError("state length " + std::to_string(state.values.size()) +
                        " does not match system dimension " + std::to_string(system.state_dim()));
  }
  if (control.size() != system.control_dim()) {
    throw ContractError("control length " + std::to_string(control.size()) +
                        " does not match system control dimension " +
                        std::to_string(system.control_dim()));
  }
  return {system.a() * state.values + system.b() * control, system.layout()};
}

Trajectory rollout(const LinearSystem& system, const StateVector& x0,
                   std::span<const Vec> controls) {
  if (controls.empty()) throw ContractError("rollout requires at least one control");
  Trajectory traj(system.layout(), system.h());
  StateVector x = x0;
  traj.push_state(x.values);
  for (const auto& u : controls) {
    x = step(system, x, u);
    traj.push_control(u);
    traj.push_state(x.values);
  }
  return traj;
}

StateDistribution propagate_moments(const LinearSystem& system, const StateDistribution& dist,
                                    const Mat& gain, double control_noise) {
  const Eigen::Index k = system.state_dim();
  if (dist.mean().size() != k) throw ContractError("distribution dimension mismatch");
  if (gain.rows() != system.control_dim() || gain.cols() != k) {
    throw ContractError("feedback gain must be m x k");
  }
  if (control_noise < 0.0) throw ContractError("control noise level must be nonnegative");
  const Mat closed = system.a() - system.b() * gain;
  const Mat bl = system.b() * gain;
  const Mat second = dist.covariance() + dist.mean() * dist.mean().transpose();
  Mat cov = closed * dist.covariance() * closed.transpose() +
            control_noise * control_noise * bl * second * bl.transpose();
  return StateDistribution(closed * dist.mean(), symmetrize(cov));
}

JointDistribution::JointDistribution(Vec mean, const Mat& covariance) : mean_(std::move(mean)) {
  if (mean_.size() % 2 != 0) throw ContractError("joint distribution must have even dimension");
  if (covariance.rows() != mean_.size() || covariance.cols() != mean_.size()) {
    throw ContractError("joint covariance dimension does not match mean");
  }
  covariance_ = project_psd(covariance, "joint covariance");
}

JointDistribution JointDistribution::from_prior(const StateDistribution& state,
                                                const Vec& estimate) {
  const Eigen::Index k = state.mean().size();
  if (estimate.size() != k) throw ContractError("estimate dimension mismatch");
  Vec mean(2 * k);
  mean << state.mean(), estimate;
  Mat cov = Mat::Zero(2 * k, 2 * k);
  cov.topLeftCorner(k, k) = state.covariance();
  return JointDistribution(std::move(mean), cov);
}

StateDistribution JointDistribution::true_state() const {
  const Eigen::Index k = state_dim();
  return StateDistribution(mean_.head(k), covariance_.topLeftCorner(k, k));
}

StateDistribution JointDistribution::estimate() const {
  const Eigen::Index k = state_dim();
  return StateDistribution(mean_.tail(k), covariance_.bottomRightCorner(k, k));
}

JointDistribution propagate_moments(const LinearSystem& system, const JointDistribution& dist,
                                    const ClosedLoopStep& s) {
  const Eigen::Index k = system.state_dim();
  if (dist.state_dim() != k) throw ContractError("joint distribution dimension mismatch");
  if (s.feedback.rows() != system.control_dim() || s.feedback.cols() != k) {
    throw ContractError("feedback gain must be m x k");
  }
  const Eigen::Index l = s.observation.rows();
  if (s.observation.cols() != k || s.kalman.rows() != k || s.kalman.cols() != l ||
      s.obs_cov.rows() != l || s.obs_cov.cols() != l) {
    throw ContractError("observation model dimensions are inconsistent");
  }
  const Mat& a = system.a();
  const Mat bl = system.b() * s.feedback;
  const Mat kh = s.kalman * s.observation;

  Mat m(2 * k, 2 * k);
  m << a, -bl, kh, a - bl - kh;

  const Vec& mu = dist.mean();
  const Mat& c = dist.covariance();
  Mat cov = m * c * m.transpose();

  const Mat est_second = c.bottomRightCorner(k, k) + mu.tail(k) * mu.tail(k).transpose();
  cov.topLeftCorner(k, k) += s.control_noise * s.control_noise * bl * est_second * bl.transpose();
  cov.bottomRightCorner(k, k) += s.kalman * s.obs_cov * s.kalman.transpose();

  return JointDistribution(m * mu, symmetrize(cov));
}

}  // namespace ofc
