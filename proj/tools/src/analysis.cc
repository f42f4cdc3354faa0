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

#include "analysis.h"

#include <algorithm>
#include <cmath>

#include "ofc/errors.h"
#include "ofc/savitzky_golay.h"

namespace ofcpoint {

std::optional<int> time_to_target(std::span<const double> position, double target,
                                  double width) {
  for (std::size_t n = 0; n < position.size(); ++n) {
    if (std::abs(position[n] - target) <= 0.5 * width) return static_cast<int>(n);
  }
  return std::nullopt;
}

RunSummary summarize(const ofc::ModelRun& run, const ofc::TaskSpec& task) {
  const auto& k = run.kinematics;
  const double sign = task.distance() < 0 ? -1.0 : 1.0;
  RunSummary s;
  s.peak_velocity = -INFINITY;
  for (double v : k.velocity) s.peak_velocity = std::max(s.peak_velocity, sign * v);
  if (task.distance() == 0.0) {
    s.peak_velocity = 0.0;
    for (double v : k.velocity) s.peak_velocity = std::max(s.peak_velocity, std::abs(v));
  } else {
    s.peak_velocity *= sign;
  }
  s.time_to_target = time_to_target(k.position, task.target, task.width);
  s.final_position = k.position.back();
  for (double p : k.position) s.overshoot = std::max(s.overshoot, sign * (p - task.target));
  if (run.moments) {
    const auto& last = run.moments->state.steps().back();
    const auto ip = run.moments->state.layout()->index(ofc::component::kPosition);
    s.terminal_std = std::sqrt(std::max(0.0, last.covariance()(ip, ip)));
  }
  return s;
}

Spread run_spread(const ofc::ModelRun& run) {
  Spread s;
  if (!run.moments) return s;
  for (double v : run.moments->state.variance_component(ofc::component::kPosition)) {
    s.position.push_back(std::sqrt(std::max(0.0, v)));
  }
  for (double v : run.moments->state.variance_component(ofc::component::kVelocity)) {
    s.velocity.push_back(std::sqrt(std::max(0.0, v)));
  }
  return s;
}

Kinematics ensemble_kinematics(const ofc::TrajectoryEnsemble& e) {
  if (e.frames() < 15) {
    throw ofc::InputError("reference needs at least 15 frames for acceleration smoothing, got " +
                          std::to_string(e.frames()));
  }
  Kinematics k;
  k.position = e.mean_position;
  k.velocity = e.mean_velocity;
  k.acceleration = ofc::reference_acceleration(e.mean_position, e.h);
  k.distribution = e.gaussians();
  return k;
}

Kinematics run_kinematics(const ofc::ModelRun& run) {
  Kinematics k;
  k.position = run.kinematics.position;
  k.velocity = run.kinematics.velocity;
  k.acceleration = run.kinematics.acceleration;
  if (run.moments) {
    k.distribution = ofc::position_velocity_series(run.moments->state);
  } else {
    ofc::GaussianSeries d;
    d.reserve(k.position.size());
    for (std::size_t n = 0; n < k.position.size(); ++n) {
      d.push_back({Eigen::Vector2d(k.position[n], k.velocity[n]), Eigen::Matrix2d::Zero()});
    }
    k.distribution = std::move(d);
    k.point_mass = true;
  }
  return k;
}

namespace {

std::span<const double> head(const std::vector<double>& v, std::size_t n) {
  return std::span<const double>(v.data(), n);
}

}  // namespace

Comparison compare(const Kinematics& reference, const Kinematics& candidate) {
  for (const Kinematics* k : {&reference, &candidate}) {
    if (k->velocity.size() != k->position.size() || k->acceleration.size() != k->position.size()) {
      throw ofc::InputError("kinematic series have inconsistent lengths");
    }
  }
  Comparison c;
  c.reference_frames = reference.position.size();
  c.candidate_frames = candidate.position.size();
  c.frames = std::min(c.reference_frames, c.candidate_frames);
  if (c.frames == 0) throw ofc::InputError("nothing to compare: empty series");
  const std::size_t n = c.frames;
  c.sse_position = ofc::sse(head(candidate.position, n), head(reference.position, n));
  c.sse_velocity = ofc::sse(head(candidate.velocity, n), head(reference.velocity, n));
  c.sse_acceleration = ofc::sse(head(candidate.acceleration, n), head(reference.acceleration, n));
  c.max_position = ofc::max_error(head(candidate.position, n), head(reference.position, n));
  c.max_velocity = ofc::max_error(head(candidate.velocity, n), head(reference.velocity, n));
  c.max_acceleration =
      ofc::max_error(head(candidate.acceleration, n), head(reference.acceleration, n));
  if (reference.distribution && candidate.distribution) {
    ofc::GaussianSeries a(candidate.distribution->begin(), candidate.distribution->begin() + n);
    ofc::GaussianSeries b(reference.distribution->begin(), reference.distribution->begin() + n);
    c.mwd = ofc::mwd(a, b);
    if (!reference.point_mass && !candidate.point_mass) c.mkl = ofc::mkl(a, b);
  }
  return c;
}

}  // namespace ofcpoint
