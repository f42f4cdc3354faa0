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

#include "ofc/preprocess.h"

#include <algorithm>
#include <cmath>

#include "ofc/errors.h"

namespace ofc {

std::optional<std::size_t> movement_onset(std::span<const double> p, double h,
                                          Direction direction) {
  const std::size_t len = p.size();
  if (len < static_cast<std::size_t>(kOnsetPersistenceFrames) + 2) return std::nullopt;
  const double sign = direction == Direction::kRight ? 1.0 : -1.0;
  std::vector<double> v(len - 1);
  for (std::size_t n = 0; n + 1 < len; ++n) v[n] = sign * (p[n + 1] - p[n]) / h;
  std::vector<double> a(len - 2);
  for (std::size_t n = 0; n + 2 < len; ++n) a[n] = sign * (p[n + 2] - 2.0 * p[n + 1] + p[n]) / (h * h);

  const double peak = *std::max_element(v.begin(), v.end());
  if (!(peak > 0.0)) return std::nullopt;
  const double threshold = kOnsetVelocityFraction * peak;
  for (std::size_t n = 0; n + kOnsetPersistenceFrames <= a.size(); ++n) {
    if (v[n] < threshold) continue;
    bool persistent = true;
    for (int i = 0; i < kOnsetPersistenceFrames; ++i) {
      if (!(a[n + i] > 0.0)) {
        persistent = false;
        break;
      }
    }
    if (persistent) return n;
  }
  return std::nullopt;
}

RawTrial strip_reaction_time(const RawTrial& trial, double h, Direction direction) {
  RawTrial out = trial;
  if (trial.discarded) return out;
  const auto onset = movement_onset(trial.position, h, direction);
  if (!onset) {
    out.discarded = true;
    return out;
  }
  out.position.erase(out.position.begin(), out.position.begin() + *onset);
  if (out.time.size() == trial.position.size()) {
    out.time.erase(out.time.begin(), out.time.begin() + *onset);
  }
  return out;
}

namespace {

std::vector<double> held(const std::vector<double>& p, std::size_t len) {
  std::vector<double> out = p;
  out.resize(len, p.empty() ? 0.0 : p.back());
  return out;
}

}  // namespace

OutlierReport remove_outliers(std::vector<RawTrial> trials) {
  OutlierReport report;
  if (trials.size() < 3) {
    report.kept = std::move(trials);
    report.skipped = true;
    return report;
  }

  std::size_t len = 0;
  for (const auto& t : trials) len = std::max(len, t.size());
  std::vector<std::vector<double>> padded;
  for (const auto& t : trials) padded.push_back(held(t.position, len));
  const double count = static_cast<double>(trials.size());
  std::vector<bool> outlier(trials.size(), false);
  for (std::size_t n = 0; n < len; ++n) {
    double mean = 0.0;
    for (const auto& p : padded) mean += p[n];
    mean /= count;
    double var = 0.0;
    for (const auto& p : padded) var += (p[n] - mean) * (p[n] - mean);
    const double sd = std::sqrt(var / count);
    if (!(sd > 0.0)) continue;
    for (std::size_t i = 0; i < padded.size(); ++i) {
      if (std::abs(padded[i][n] - mean) > kOutlierSigmas * sd) outlier[i] = true;
    }
  }
  std::vector<RawTrial> stage1;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    if (outlier[i]) {
      report.positional.push_back(trials[i].id);
    } else {
      stage1.push_back(std::move(trials[i]));
    }
  }

  if (stage1.size() >= 3) {
    double mean = 0.0;
    for (const auto& t : stage1) mean += static_cast<double>(t.size());
    mean /= static_cast<double>(stage1.size());
    double var = 0.0;
    for (const auto& t : stage1) var += (t.size() - mean) * (t.size() - mean);
    const double sd = std::sqrt(var / static_cast<double>(stage1.size()));
    for (auto& t : stage1) {
      if (static_cast<double>(t.size()) > mean + kOutlierSigmas * sd) {
        report.duration.push_back(t.id);
      } else {
        report.kept.push_back(std::move(t));
      }
    }
  } else {
    report.kept = std::move(stage1);
  }
  return report;
}

std::vector<double> forward_velocity(std::span<const double> p, double h) {
  std::vector<double> v(p.size(), 0.0);
  for (std::size_t n = 0; n + 1 < p.size(); ++n) v[n] = (p[n + 1] - p[n]) / h;
  return v;
}

GaussianSeries TrajectoryEnsemble::gaussians() const {
  GaussianSeries out;
  out.reserve(frames());
  for (std::size_t n = 0; n < frames(); ++n) {
    Gaussian g{Vec(2), Mat(covariance[n])};
    g.mean << mean_position[n], mean_velocity[n];
    out.push_back(std::move(g));
  }
  return out;
}

TrajectoryEnsemble extend_and_align(const std::vector<RawTrial>& trials, const ConditionMeta& meta) {
  if (trials.empty()) throw InputError("no trials to align");
  TrajectoryEnsemble e;
  e.meta = meta;
  e.h = meta.h;
  std::size_t len = 0;
  for (const auto& t : trials) {
    if (t.size() == 0) throw InputError("trial '" + t.id + "' is empty");
    len = std::max(len, t.size());
  }
  std::vector<std::vector<double>> vel;
  for (const auto& t : trials) {
    e.lengths.push_back(t.size());
    e.trials.push_back(held(t.position, len));
    vel.push_back(forward_velocity(e.trials.back(), e.h));
  }
  const double count = static_cast<double>(trials.size());
  e.mean_position.assign(len, 0.0);
  e.mean_velocity.assign(len, 0.0);
  e.covariance.assign(len, Eigen::Matrix2d::Zero());
  for (std::size_t n = 0; n < len; ++n) {
    double mp = 0.0, mv = 0.0;
    for (std::size_t i = 0; i < e.trials.size(); ++i) {
      mp += e.trials[i][n];
      mv += vel[i][n];
    }
    mp /= count;
    mv /= count;
    Eigen::Matrix2d c = Eigen::Matrix2d::Zero();
    for (std::size_t i = 0; i < e.trials.size(); ++i) {
      const Eigen::Vector2d d(e.trials[i][n] - mp, vel[i][n] - mv);
      c += d * d.transpose();
    }
    e.mean_position[n] = mp;
    e.mean_velocity[n] = mv;
    e.covariance[n] = c / count;
  }
  return e;
}

PreprocessReport preprocess(const Corpus& corpus, const PreprocessOptions& opts) {
  PreprocessReport r;
  r.input_trials = corpus.trials.size();
  std::vector<RawTrial> trials;
  for (const auto& t : corpus.trials) {
    if (!opts.strip_reaction_time) {
      trials.push_back(t);
      continue;
    }
    RawTrial s = strip_reaction_time(t, corpus.meta.h, corpus.meta.direction);
    if (s.discarded) {
      r.no_onset.push_back(t.id);
    } else {
      trials.push_back(std::move(s));
    }
  }
  if (opts.remove_outliers) {
    OutlierReport o = remove_outliers(std::move(trials));
    r.positional = std::move(o.positional);
    r.duration = std::move(o.duration);
    r.outlier_stage_skipped = o.skipped;
    trials = std::move(o.kept);
  }
  if (trials.empty()) throw InputError("no trials survive preprocessing");
  r.ensemble = extend_and_align(trials, corpus.meta);
  return r;
}

TaskSpec task_from_ensemble(const TrajectoryEnsemble& e) {
  if (e.frames() < 3) throw InputError("ensemble needs at least three frames");
  if (!e.meta.target) throw InputError("ensemble metadata has no target position");
  if (!e.meta.width) throw InputError("ensemble metadata has no target width");
  TaskSpec t;
  t.n = e.steps();
  t.h = e.h;
  t.target = *e.meta.target;
  t.width = *e.meta.width;
  t.origin = e.meta.origin ? *e.meta.origin : e.mean_position.front();
  t.start_position = e.mean_position.front();
  t.start_velocity = e.mean_velocity.front();
  t.start_cov = e.covariance.front();
  t.validate();
  return t;
}

}  // namespace ofc
