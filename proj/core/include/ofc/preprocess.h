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

#ifndef OFC_PREPROCESS_H_
#define OFC_PREPROCESS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ofc/corpus.h"
#include "ofc/metrics.h"
#include "ofc/task.h"

namespace ofc {

inline constexpr double kOnsetVelocityFraction = 0.01;
inline constexpr int kOnsetPersistenceFrames = 20;  // 40 ms at 2 ms sampling
inline constexpr double kOutlierSigmas = 3.0;

// First frame n where the forward-difference velocity reaches 1% of its
// signed extremum in the movement direction and the second difference keeps
// that sign for 20 frames starting at n. Empty if no frame qualifies.
std::optional<std::size_t> movement_onset(std::span<const double> position, double h,
                                          Direction direction);

// Drops frames before the onset; flags the trial discarded if there is none.
RawTrial strip_reaction_time(const RawTrial& trial, double h, Direction direction);

struct OutlierReport {
  std::vector<RawTrial> kept;
  std::vector<std::string> positional;  // ids removed in stage one
  std::vector<std::string> duration;    // ids removed in stage two
  bool skipped = false;                 // fewer than three trials
};

// Stage one removes trials whose position is more than 3 standard deviations
// from the per-frame mean at any frame (shorter trials held at their last
// position for the comparison). Stage two removes trials longer than the mean
// duration plus 3 standard deviations.
OutlierReport remove_outliers(std::vector<RawTrial> trials);

struct TrajectoryEnsemble {
  ConditionMeta meta;
  double h = 0.002;
  std::vector<std::vector<double>> trials;  // padded to equal length
  std::vector<std::size_t> lengths;         // before padding
  std::vector<double> mean_position;
  std::vector<double> mean_velocity;
  std::vector<Eigen::Matrix2d> covariance;  // position/velocity per frame

  std::size_t frames() const { return mean_position.size(); }
  int steps() const { return static_cast<int>(frames()) - 1; }
  GaussianSeries gaussians() const;
};

// Holds each trial at its last position up to the longest length. Velocity
// is the forward difference, zero at the last frame. Statistics use the
// population (1/n) normalization.
TrajectoryEnsemble extend_and_align(const std::vector<RawTrial>& trials, const ConditionMeta& meta);

std::vector<double> forward_velocity(std::span<const double> position, double h);

struct PreprocessOptions {
  bool strip_reaction_time = true;
  bool remove_outliers = true;
};

struct PreprocessReport {
  TrajectoryEnsemble ensemble;
  std::size_t input_trials = 0;
  std::vector<std::string> no_onset;
  std::vector<std::string> positional;
  std::vector<std::string> duration;
  bool outlier_stage_skipped = false;
};

// Throws InputError if no trial survives.
PreprocessReport preprocess(const Corpus& corpus, const PreprocessOptions& opts = {});

// Task for fitting an ensemble: N = frames - 1, initial mean and
// position/velocity covariance from frame 0, target and width from metadata.
TaskSpec task_from_ensemble(const TrajectoryEnsemble& e);

}  // namespace ofc

#endif  // OFC_PREPROCESS_H_
