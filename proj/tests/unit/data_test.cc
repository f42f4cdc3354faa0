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

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ofc/corpus.h"
#include "ofc/errors.h"
#include "ofc/lqg.h"
#include "ofc/preprocess.h"
#include "ofc/savitzky_golay.h"
#include "ofc/synthesize.h"

namespace ofc {
namespace {

constexpr double kH = 0.002;

// `lead` resting frames at 0, then a symmetric accelerate/decelerate profile
// reaching `distance * sign`, then `tail` frames of hold.
std::vector<double> movement(int lead, int tail = 40, double sign = 1.0) {
  const double a = 5e-5, b = 1e-5;
  std::vector<double> v;
  for (int m = 0; m < 150; ++m) v.push_back(a + b * (2 * m + 1));
  for (int m = 149; m >= 0; --m) v.push_back(a + b * (2 * m + 1));
  std::vector<double> p(lead + 1, 0.0);
  for (double dv : v) p.push_back(p.back() + sign * dv);
  for (int i = 0; i < tail; ++i) p.push_back(p.back());
  return p;
}

RawTrial trial(std::string id, std::vector<double> p) {
  RawTrial t{std::move(id), {}, std::move(p), false};
  for (std::size_t n = 0; n < t.position.size(); ++n) t.time.push_back(n * kH);
  return t;
}

ConditionMeta meta() {
  ConditionMeta m;
  m.participant = "p1";
  m.condition = "id4";
  m.origin = 0.0;
  m.target = 0.212;
  m.width = 0.0141;
  return m;
}

TEST(Corpus, WellFormedFile) {
  std::istringstream in(
      "# participant=p7\n# direction=left\n# target_m=-0.2\n"
      "trial_id,frame,time_s,pos_m\nA,0,0,0.0\nA,1,0.002,-0.01\nA,2,0.004,-0.03\n");
  const Corpus c = read_corpus(in);
  ASSERT_EQ(c.trials.size(), 1u);
  EXPECT_EQ(c.trials[0].size(), 3u);
  EXPECT_EQ(c.meta.participant, "p7");
  EXPECT_EQ(c.meta.direction, Direction::kLeft);
  EXPECT_EQ(*c.meta.target, -0.2);
  EXPECT_FALSE(c.meta.width);
}

TEST(Corpus, RoundTripIsIdentity) {
  Corpus c;
  c.meta = meta();
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 3; ++i) {
    std::vector<double> p(50 + i);
    for (double& x : p) x = nd(rng) / 7.0;
    c.trials.push_back(trial("t" + std::to_string(i), p));
  }
  std::stringstream s;
  write_corpus(s, c);
  const Corpus back = read_corpus(s);
  ASSERT_EQ(back.trials.size(), c.trials.size());
  for (std::size_t i = 0; i < c.trials.size(); ++i) {
    EXPECT_EQ(back.trials[i].id, c.trials[i].id);
    EXPECT_EQ(back.trials[i].position, c.trials[i].position);
    EXPECT_EQ(back.trials[i].time, c.trials[i].time);
  }
  EXPECT_EQ(back.meta.participant, "p1");
  EXPECT_EQ(back.meta.target, c.meta.target);
  EXPECT_EQ(back.meta.width, c.meta.width);
  EXPECT_EQ(back.meta.h, c.meta.h);
}

void expect_input_error(const std::string& text, const std::string& fragment) {
  std::istringstream in(text);
  try {
    read_corpus(in);
    FAIL() << "accepted: " << text;
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(Corpus, RejectsMalformedInput) {
  const std::string head = "trial_id,frame,time_s,pos_m\n";
  expect_input_error(head + "A,0,0,0\nA,1,0.002,0\nA,2,0.002,0\n", "line 4");
  expect_input_error(head + "A,0,0,0\nA,1,0.003,0\n", "non-uniform");
  expect_input_error("trial_id,frame,pos_m\nA,0,0\n", "time_s");
  expect_input_error("", "empty");
  expect_input_error(head + "A,0,0,zero\n", "line 2");
  expect_input_error(head + "A,0,0,0\nB,0,0,0\nA,1,0.002,0\n", "contiguous");
  expect_input_error(head + "A,0,0,0\nA,2,0.002,0\n", "frame");
}

TEST(Corpus, ScaleConvertsPixels) {
  std::istringstream in("# width_m=51\ntrial_id,frame,time_s,pos_m\nA,0,0,765\n");
  const Corpus c = read_corpus(in, 1.0 / 3000.0);
  EXPECT_DOUBLE_EQ(c.trials[0].position[0], 765.0 / 3000.0);
  EXPECT_DOUBLE_EQ(*c.meta.width, 51.0 / 3000.0);
}

TEST(Strip, RemovesExactlyTheLeadingRestFrames) {
  const RawTrial t = trial("a", movement(100));
  const RawTrial s = strip_reaction_time(t, kH, Direction::kRight);
  ASSERT_FALSE(s.discarded);
  EXPECT_EQ(t.size() - s.size(), 100u);
  EXPECT_TRUE(std::equal(s.position.begin(), s.position.end(), t.position.begin() + 100));
  EXPECT_EQ(s.time.front(), t.time[100]);
}

TEST(Strip, LeftwardMovementUsesMinimum) {
  const RawTrial t = trial("a", movement(37, 40, -1.0));
  EXPECT_EQ(movement_onset(t.position, kH, Direction::kLeft), 37u);
  EXPECT_FALSE(movement_onset(t.position, kH, Direction::kRight).has_value());
}

TEST(Strip, AlreadyStrippedTrialIsUnchanged) {
  const RawTrial once = strip_reaction_time(trial("a", movement(60)), kH, Direction::kRight);
  const RawTrial twice = strip_reaction_time(once, kH, Direction::kRight);
  EXPECT_EQ(twice.position, once.position);
  EXPECT_EQ(twice.time, once.time);
}

TEST(Strip, ConstantTrialIsDiscarded) {
  const RawTrial s = strip_reaction_time(trial("a", std::vector<double>(300, 0.1)), kH,
                                         Direction::kRight);
  EXPECT_TRUE(s.discarded);
}

TEST(Strip, ShortAccelerationBurstIsNotAnOnset) {
  // A 10-frame twitch before the real movement fails the 20-frame persistence test.
  std::vector<double> p = movement(120);
  for (int n = 20; n < 30; ++n) p[n + 1] = p[n] + 1e-5 * (n - 19);
  for (int n = 31; n <= 120; ++n) p[n] = p[30];
  for (std::size_t n = 121; n < p.size(); ++n) p[n] += p[30];
  const auto onset = movement_onset(p, kH, Direction::kRight);
  ASSERT_TRUE(onset);
  EXPECT_EQ(*onset, 120u);
}

std::vector<RawTrial> spread_trials(int count, int len) {
  std::vector<RawTrial> out;
  const std::vector<double> base = movement(0, len - 301);
  for (int i = 0; i < count; ++i) {
    std::vector<double> p = base;
    for (double& x : p) x += 1e-4 * (i - (count - 1) / 2.0);
    out.push_back(trial("t" + std::to_string(i), p));
  }
  return out;
}

TEST(Outliers, IdenticalTrialsAreKept) {
  std::vector<RawTrial> t(5, trial("x", movement(0)));
  for (int i = 0; i < 5; ++i) t[i].id = "t" + std::to_string(i);
  const OutlierReport r = remove_outliers(t);
  EXPECT_EQ(r.kept.size(), 5u);
  EXPECT_TRUE(r.positional.empty());
  EXPECT_TRUE(r.duration.empty());
}

TEST(Outliers, PositionalSpikeRemovesThatTrial) {
  auto t = spread_trials(20, 400);
  t[7].position[50] += 0.5;
  const OutlierReport r = remove_outliers(t);
  EXPECT_EQ(r.positional, std::vector<std::string>{"t7"});
  EXPECT_TRUE(r.duration.empty());
  EXPECT_EQ(r.kept.size(), 19u);
}

TEST(Outliers, LongTrialIsDurationOutlier) {
  std::vector<RawTrial> t;
  for (int i = 0; i < 19; ++i) t.push_back(trial("t" + std::to_string(i), movement(0, 40)));
  t.push_back(trial("long", movement(0, 340)));
  const OutlierReport r = remove_outliers(t);
  EXPECT_TRUE(r.positional.empty());
  EXPECT_EQ(r.duration, std::vector<std::string>{"long"});
  EXPECT_EQ(r.kept.size(), 19u);
}

TEST(Outliers, ShortTrialIsNotDurationOutlier) {
  std::vector<RawTrial> t;
  for (int i = 0; i < 19; ++i) t.push_back(trial("t" + std::to_string(i), movement(0, 340)));
  t.push_back(trial("short", movement(0, 0)));
  const OutlierReport r = remove_outliers(t);
  EXPECT_TRUE(r.duration.empty());
}

TEST(Outliers, FewTrialsPassThrough) {
  auto t = spread_trials(2, 400);
  t[0].position[10] += 5.0;
  const OutlierReport r = remove_outliers(t);
  EXPECT_TRUE(r.skipped);
  EXPECT_EQ(r.kept.size(), 2u);
}

TEST(Align, SingleTrialIsItsOwnMean) {
  const RawTrial t = trial("a", movement(0));
  const TrajectoryEnsemble e = extend_and_align({t}, meta());
  EXPECT_EQ(e.mean_position, t.position);
  for (const auto& c : e.covariance) EXPECT_EQ(c, Eigen::Matrix2d::Zero());
}

TEST(Align, ShortTrialHeldAtLastPosition) {
  const TrajectoryEnsemble e =
      extend_and_align({trial("a", {0, 1, 2, 3, 4}), trial("b", {0, 1, 2, 3, 4, 5, 6})}, meta());
  EXPECT_EQ(e.frames(), 7u);
  EXPECT_EQ(e.trials[0], (std::vector<double>{0, 1, 2, 3, 4, 4, 4}));
  EXPECT_EQ(e.trials[1], (std::vector<double>{0, 1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(e.lengths, (std::vector<std::size_t>{5, 7}));
  EXPECT_DOUBLE_EQ(e.mean_velocity[5], 0.5 / kH);
  EXPECT_EQ(e.mean_velocity[6], 0.0);
}

TEST(Align, MirroredTrialsHaveSquaredVariance) {
  std::vector<double> p = movement(0), q = p;
  for (double& x : q) x = -x;
  const TrajectoryEnsemble e = extend_and_align({trial("a", p), trial("b", q)}, meta());
  for (std::size_t n = 0; n < p.size(); ++n) {
    EXPECT_EQ(e.mean_position[n], 0.0);
    EXPECT_DOUBLE_EQ(e.covariance[n](0, 0), p[n] * p[n]);
  }
}

TEST(Align, NeverAltersOriginalSamples) {
  auto t = spread_trials(4, 320);
  t[2].position.resize(250);
  const TrajectoryEnsemble e = extend_and_align(t, meta());
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_GE(e.trials[i].size(), t[i].size());
    EXPECT_TRUE(std::equal(t[i].position.begin(), t[i].position.end(), e.trials[i].begin()));
  }
  for (const auto& c : e.covariance) {
    EXPECT_EQ(c, c.transpose());
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(c).eigenvalues().minCoeff(), -1e-15);
  }
  EXPECT_THROW(extend_and_align({}, meta()), InputError);
}

TEST(Align, IdenticalTrialsMeanIsTheTrial) {
  const RawTrial t = trial("a", movement(0));
  const TrajectoryEnsemble e = extend_and_align({t, t, t}, meta());
  ASSERT_EQ(e.frames(), t.size());
  for (std::size_t n = 0; n < t.size(); ++n) EXPECT_NEAR(e.mean_position[n], t.position[n], 1e-16) << n;
  for (const auto& c : e.covariance) EXPECT_LT(c.norm(), 1e-24);
}

TEST(Preprocess, PipelineStripsAndAligns) {
  Corpus c;
  c.meta = meta();
  for (int i = 0; i < 10; ++i) c.trials.push_back(trial("t" + std::to_string(i), movement(30 + 7 * i)));
  c.trials.push_back(trial("still", std::vector<double>(200, 0.0)));
  const PreprocessReport r = preprocess(c);
  EXPECT_EQ(r.input_trials, 11u);
  EXPECT_EQ(r.no_onset, std::vector<std::string>{"still"});
  EXPECT_EQ(r.ensemble.trials.size(), 10u);
  for (std::size_t l : r.ensemble.lengths) EXPECT_EQ(l, r.ensemble.lengths.front());
  const TaskSpec task = task_from_ensemble(r.ensemble);
  EXPECT_EQ(task.n, static_cast<int>(r.ensemble.frames()) - 1);
  EXPECT_EQ(task.target, 0.212);
  Corpus empty = c;
  empty.trials = {trial("still", std::vector<double>(200, 0.0))};
  EXPECT_THROW(preprocess(empty), InputError);
}

TEST(SavitzkyGolay, QuadraticHasConstantAcceleration) {
  std::vector<double> p(100);
  for (int n = 0; n < 100; ++n) p[n] = 0.5 * n * n;
  const auto a = reference_acceleration(p, 1.0);
  for (double x : a) EXPECT_NEAR(x, 1.0, 1e-9);
  std::vector<double> q(100);
  for (int n = 0; n < 100; ++n) q[n] = 1e-3 * n * n;
  const auto b = reference_acceleration(q, kH);
  for (double x : b) EXPECT_NEAR(x, 2e-3 / (kH * kH), 1e-9 * 2e-3 / (kH * kH));
}

TEST(SavitzkyGolay, LinearHasZeroAcceleration) {
  std::vector<double> p(60);
  for (int n = 0; n < 60; ++n) p[n] = 0.3 - 0.01 * n;
  for (double x : reference_acceleration(p, 1.0)) EXPECT_NEAR(x, 0.0, 1e-12);
}

TEST(SavitzkyGolay, SmoothsNoisySine) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> nd(0.0, 1e-5);
  const int len = 500;
  const double w = 2 * M_PI / (len * kH);
  std::vector<double> p(len);
  for (int n = 0; n < len; ++n) p[n] = 0.1 * std::sin(w * n * kH) + nd(rng);
  const auto sg = reference_acceleration(p, kH);
  double e_sg = 0, e_raw = 0;
  int count = 0;
  for (int n = 1; n + 1 < len; ++n) {
    const double exact = -0.1 * w * w * std::sin(w * n * kH);
    const double raw = (p[n + 1] - 2 * p[n] + p[n - 1]) / (kH * kH);
    e_sg += std::pow(sg[n] - exact, 2);
    e_raw += std::pow(raw - exact, 2);
    ++count;
  }
  EXPECT_LT(std::sqrt(e_sg / count), std::sqrt(e_raw / count));
}

TEST(SavitzkyGolay, RejectsShortSeries) {
  EXPECT_THROW(reference_acceleration(std::vector<double>(14, 0.0), kH), ContractError);
}

const ParameterMap kLqg = {{"omega_r", 5e-7}, {"omega_v", 2.0}, {"omega_f", 2.0},
                           {"sigma_u", 0.5},  {"sigma_s", 0.5}};

TEST(Synthesize, StochasticCorpusIsReproducible) {
  const TaskSpec task = TaskSpec::rest_to_rest(0, 0.212, 0.0141, 485);
  const Corpus a = synthesize_corpus(ModelKind::kLQG, kLqg, task, 100, 42);
  const Corpus b = synthesize_corpus(ModelKind::kLQG, kLqg, task, 100, 42);
  ASSERT_EQ(a.trials.size(), 100u);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.trials[i].position, b.trials[i].position);
  EXPECT_NE(a.trials[0].position, a.trials[1].position);
  EXPECT_EQ(*a.meta.target, 0.212);
}

TEST(Synthesize, EnsembleVarianceMatchesPrediction) {
  const TaskSpec task = TaskSpec::rest_to_rest(0, 0.212, 0.0141, 485);
  const int trials = 2000;
  const Corpus c = synthesize_corpus(ModelKind::kLQG, kLqg, task, trials, 3);
  const TrajectoryEnsemble e = extend_and_align(c.trials, c.meta);
  const ModelRun run = run_model(ModelKind::kLQG, kLqg, task);
  const auto var = run.moments->state.variance_component("p");
  for (int n = 50; n <= task.n; n += 50) {
    const double se = var[n] * std::sqrt(2.0 / (trials - 1));
    EXPECT_NEAR(e.covariance[n](0, 0), var[n], 5 * se + 1e-15) << n;
  }
}

TEST(Synthesize, DeterministicModelWithoutJitterRepeats) {
  const TaskSpec task = TaskSpec::rest_to_rest(0, 0.212, 0.0141, 485);
  const Corpus c = synthesize_corpus(ModelKind::kTwoOLEq, {{"k", 40}, {"d", 12}}, task, 5, 1);
  for (const auto& t : c.trials) EXPECT_EQ(t.position, c.trials[0].position);
  SynthesizeOptions o;
  o.jitter = 1e-3;
  const Corpus j = synthesize_corpus(ModelKind::kTwoOLEq, {{"k", 40}, {"d", 12}}, task, 5, 1, o);
  EXPECT_NE(j.trials[0].position, j.trials[1].position);
}

}  // namespace
}  // namespace ofc
