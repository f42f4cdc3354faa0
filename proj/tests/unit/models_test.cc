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
#include <vector>

#include <gtest/gtest.h>

#include "dp_oracle.h"
#include "ofc/errors.h"
#include "ofc/linalg.h"
#include "ofc/lqr.h"
#include "ofc/minimum_jerk.h"
#include "ofc/model_registry.h"
#include "ofc/muscle_system.h"
#include "ofc/second_order_lag.h"

namespace ofc {
namespace {

constexpr double kTarget = 0.212;
constexpr double kWidth = 0.0141;

TaskSpec fig_task(int n = 485) { return TaskSpec::rest_to_rest(0.0, kTarget, kWidth, n); }

TEST(TwoOL, SystemMatricesBySubstitution) {
  const double d = 2 * std::sqrt(15.0);
  const LinearSystem s = build_2ol_system({15.0, d}, 0.002);
  Eigen::Matrix2d a;
  a << 1, 0.002, -0.03, 1 - 0.002 * d;
  EXPECT_LT((s.a() - a).norm(), 1e-15);
  EXPECT_EQ(s.b(), Eigen::Vector2d(0, 0.002));
  EXPECT_NEAR(TwoOLParams::from_zeta(15.0, 1.0).d, d, 1e-12);
}

TEST(TwoOL, SmallStepApproachesIdentity) {
  const LinearSystem s = build_2ol_system({15.0, 7.0}, 1e-9);
  EXPECT_LT((s.a() - Mat::Identity(2, 2)).norm(), 1e-7);
}

TEST(TwoOL, RejectsNonPositiveParameters) {
  EXPECT_THROW(build_2ol_system({0.0, 0.0}, 0.002), ParameterError);
  EXPECT_THROW(build_2ol_system({10.0, -1.0}, 0.002), ParameterError);
}

TEST(TwoOL, EquilibriumIsConstant) {
  TaskSpec task = fig_task();
  task.start_position = kTarget;
  const Trajectory t = simulate_2ol_eq(TwoOLParams::from_zeta(25.0, 1.0), task);
  for (const Vec& x : t.states()) {
    EXPECT_DOUBLE_EQ(x(0), kTarget);
    EXPECT_EQ(x(1), 0.0);
  }
}

TEST(TwoOL, CriticalDampingDoesNotOvershoot) {
  const Trajectory t = simulate_2ol_eq(TwoOLParams::from_zeta(25.0, 1.0), fig_task(2000));
  const auto p = t.component("p");
  for (std::size_t n = 1; n < p.size(); ++n) {
    EXPECT_LE(p[n], kTarget + 1e-9);
    EXPECT_GE(p[n], p[n - 1] - 1e-15);
  }
}

TEST(TwoOL, UnderdampingOscillatesAroundTarget) {
  const Trajectory t = simulate_2ol_eq(TwoOLParams::from_zeta(25.0, 0.5), fig_task(2000));
  const auto p = t.component("p");
  int changes = 0;
  for (std::size_t n = 2; n < p.size(); ++n) {
    if ((p[n] - kTarget) * (p[n - 1] - kTarget) < 0) ++changes;
  }
  EXPECT_GE(changes, 1);
}

TEST(TwoOL, ZetaRoundTrip) {
  const TwoOLParams p = TwoOLParams::from_zeta(40.0, 0.71);
  EXPECT_NEAR(p.zeta(), 0.71, 1e-12);
}

TEST(MinJerk, EqualBoundariesGiveConstantTrajectory) {
  MinJerkBoundary b;
  b.start << kTarget, 0, 0;
  b.end << kTarget, 0, 0;
  const Trajectory t = minjerk_trajectory({200.0}, fig_task(), b);
  for (const Vec& x : t.states()) {
    EXPECT_NEAR(x(0), kTarget, 1e-15);
    EXPECT_NEAR(x(1), 0.0, 1e-12);
  }
}

TEST(MinJerk, MidpointIsHalfDistance) {
  const Trajectory t = minjerk_trajectory({224.0}, fig_task());
  EXPECT_NEAR(t.states()[112](0), kTarget / 2, 1e-12);
}

TEST(MinJerk, PeakVelocityOnFineGrid) {
  const double nmj = 223.0, h = 0.002, tf = nmj * h;
  MinJerkBoundary b = MinJerkBoundary::from_task(fig_task());
  const auto c = minjerk_coefficients(b, tf);
  double peak = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double tau = i / 200000.0;
    double v = 0;
    for (int k = 5; k >= 1; --k) v = v * tau + k * c(k);
    peak = std::max(peak, v / tf);
  }
  EXPECT_NEAR(peak, 1.875 * kTarget / tf, 1e-9);
}

TEST(MinJerk, BoundaryConditionsAndHold) {
  const Trajectory t = minjerk_trajectory({223.0}, fig_task());
  const Vec& first = t.states().front();
  EXPECT_EQ(first(0), 0.0);
  EXPECT_NEAR(first(1), 0.0, 1e-12);
  EXPECT_NEAR(first(2), 0.0, 1e-12);
  for (std::size_t n = 223; n < t.states().size(); ++n) {
    EXPECT_NEAR(t.states()[n](0), kTarget, 1e-12);
    EXPECT_NEAR(t.states()[n](1), 0.0, 1e-9);
    EXPECT_NEAR(t.states()[n](2), 0.0, 1e-9);
  }
}

TEST(MinJerk, SurgeIsQuinticInSteps) {
  // Sixth finite differences vanish on any quintic.
  const auto p = minjerk_trajectory({300.0}, fig_task()).component("p");
  const int binom[7] = {1, -6, 15, -20, 15, -6, 1};
  for (int n = 0; n + 6 <= 300; ++n) {
    double d = 0;
    for (int k = 0; k <= 6; ++k) d += binom[k] * p[n + k];
    EXPECT_LT(std::abs(d), 1e-12);
  }
}

TEST(MinJerk, RejectsSurgeLongerThanTask) {
  EXPECT_THROW(minjerk_trajectory({486.0}, fig_task()), ParameterError);
  EXPECT_THROW(minjerk_trajectory({-1.0}, fig_task()), ParameterError);
}

TEST(MinJerk, ZeroSurgeHoldsTarget) {
  const Trajectory t = minjerk_trajectory({0.0}, fig_task());
  for (const Vec& x : t.states()) EXPECT_EQ(x(0), kTarget);
}

LinearSystem scalar_system() {
  auto layout = std::make_shared<const StateLayout>(std::vector<std::string>{"x"});
  return LinearSystem(Mat::Ones(1, 1), Mat::Ones(1, 1), 1.0, layout);
}

TEST(Riccati, MatchesDynamicProgramming) {
  const std::vector<double> dp = oracle::dp_gains({1.0, 1.0, 1.0, 1.0, 3});
  const std::vector<Mat> q(4, Mat::Ones(1, 1));
  const RiccatiSolution sol = solve_riccati(scalar_system(), q, Mat::Ones(1, 1));
  ASSERT_EQ(sol.gains.size(), 3u);
  for (int n = 0; n < 3; ++n) EXPECT_NEAR(sol.gains[n](0, 0), dp[n], 1e-3) << n;
}

TEST(Riccati, ScalarClosedForm) {
  // S_3 = 1, S_2 = 1.5, S_1 = 1.6, gains S_{n+1} / (1 + S_{n+1}).
  const std::vector<Mat> q(4, Mat::Ones(1, 1));
  const RiccatiSolution sol = solve_riccati(scalar_system(), q, Mat::Ones(1, 1));
  EXPECT_NEAR(sol.gains[2](0, 0), 0.5, 1e-15);
  EXPECT_NEAR(sol.gains[1](0, 0), 0.6, 1e-15);
  EXPECT_NEAR(sol.gains[0](0, 0), 1.6 / 2.6, 1e-15);
}

TEST(Riccati, CostToGoIsSymmetricPsd) {
  const TaskSpec task = fig_task();
  const LinearSystem sys = build_muscle_system({}, task.h);
  const LQCostWeights w{5e-3, 0.01, 1e-4};
  const auto q = state_cost_sequence(state_cost(*sys.layout(), w), task.n, CostSchedule::kEveryStep);
  const auto sol = solve_riccati(sys, q, Mat::Constant(1, 1, effort_cost(w, task.n)));
  for (const Mat& s : sol.cost_to_go) {
    EXPECT_EQ(s, s.transpose());
    EXPECT_GE(min_eigenvalue(s), -1e-9 * std::max(1.0, s.norm()));
  }
}

TEST(Lqr, EffortDominationBarelyMoves) {
  const Trajectory t = simulate_lqr({1e6, 0.01, 1e-4}, fig_task());
  EXPECT_GT(std::abs(t.states().back()(0) - kTarget), 0.9 * kTarget);
}

TEST(Lqr, FittedScaleWeightsReachAndStay) {
  const Trajectory t = simulate_lqr({5e-3, 0.01, 1e-4}, fig_task());
  const auto p = t.component("p");
  EXPECT_LT(std::abs(p.back() - kTarget), kWidth / 2);
  for (std::size_t n = p.size() - 50; n < p.size(); ++n) {
    EXPECT_LT(std::abs(p[n] - kTarget), kWidth / 2);
  }
}

TEST(Lqr, OptimalGainsBeatPerturbedGains) {
  const TaskSpec task = fig_task();
  const LQCostWeights w{5e-3, 0.01, 1e-4};
  const LinearSystem sys = build_muscle_system({}, task.h);
  const auto q = state_cost_sequence(state_cost(*sys.layout(), w), task.n, CostSchedule::kEveryStep);
  const Mat r = Mat::Constant(1, 1, effort_cost(w, task.n));
  const Vec x0 = initial_state(*sys.layout(), task);
  const ControlLaw law = solve_lqr(w, task);
  const double best = quadratic_cost(simulate_feedback(sys, law, x0), q, r);
  for (double f : {0.99, 1.01}) {
    for (int comp = 0; comp < 5; ++comp) {
      ControlLaw p = law;
      for (Mat& l : p.feedback) l(0, comp) *= f;
      EXPECT_GT(quadratic_cost(simulate_feedback(sys, p, x0), q, r), best) << f << " " << comp;
    }
  }
}

TEST(Lqr, ScalingAllCostsLeavesGainsUnchanged) {
  const TaskSpec task = fig_task(100);
  const LinearSystem sys = build_muscle_system({}, task.h);
  const LQCostWeights w{5e-3, 0.01, 1e-4};
  auto q = state_cost_sequence(state_cost(*sys.layout(), w), task.n, CostSchedule::kEveryStep);
  const Mat r = Mat::Constant(1, 1, effort_cost(w, task.n));
  const auto base = solve_riccati(sys, q, r);
  for (Mat& m : q) m *= 7.0;
  const auto scaled = solve_riccati(sys, q, 7.0 * r);
  for (int n = 0; n < task.n; ++n) {
    EXPECT_LT((base.gains[n] - scaled.gains[n]).norm(), 1e-9 * (1.0 + base.gains[n].norm()));
  }
}

TEST(Lqr, LawShape) {
  const ControlLaw law = solve_lqr({5e-3, 0.01, 1e-4}, fig_task());
  EXPECT_EQ(law.steps(), 485u);
  EXPECT_FALSE(law.has_kalman());
  EXPECT_EQ(law.feedback[0].rows(), 1);
  EXPECT_EQ(law.feedback[0].cols(), 5);
}

TEST(Lqr, RejectsNonPositiveEffortWeight) {
  EXPECT_THROW(solve_lqr({0.0, 0.01, 1e-4}, fig_task()), ParameterError);
}

TEST(Registry, NamesAndParameterChecks) {
  for (ModelKind k : all_models()) EXPECT_EQ(parse_model(model_name(k)), k);
  EXPECT_THROW(parse_model("pid"), ParameterError);
  EXPECT_NO_THROW(check_parameters(ModelKind::kTwoOLEq, {{"k", 1}, {"d", 1}}));
  try {
    check_parameters(ModelKind::kTwoOLEq, {{"k", 1}});
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_EQ(e.field(), "d");
  }
  try {
    check_parameters(ModelKind::kMinJerk, {{"n_mj", 1}, {"zeta", 1}});
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_EQ(e.field(), "zeta");
  }
}

TEST(Registry, RunModelKinematicsMatchTrajectory) {
  const ModelRun run = run_model(ModelKind::kTwoOLEq, {{"k", 40}, {"d", 2 * std::sqrt(40.0)}},
                                 fig_task());
  ASSERT_TRUE(run.trajectory);
  EXPECT_EQ(run.kinematics.position, run.trajectory->component("p"));
  EXPECT_EQ(run.kinematics.position.size(), 486u);
  EXPECT_EQ(run.kinematics.control.size(), 485u);
}

}  // namespace
}  // namespace ofc
