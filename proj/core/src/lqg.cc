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

#include "ofc/lqg.h"

#include <cmath>
#include <random>

#include "ofc/errors.h"

namespace ofc {

FixedObservation::FixedObservation(Mat h, Mat g) : h_(std::move(h)), g_(std::move(g)) {
  if (h_.rows() == 0) throw ContractError("observation must have at least one channel");
  if (g_.rows() != h_.rows()) throw ContractError("noise factor must have one row per channel");
  if (!h_.allFinite() || !g_.allFinite()) throw ContractError("observation model must be finite");
}

void LQGNoiseParams::validate() const {
  if (!(sigma_u >= 0.0) || !std::isfinite(sigma_u)) {
    throw ParameterError("sigma_u", "control noise must be nonnegative");
  }
  if (!(sigma_s >= 0.0) || !std::isfinite(sigma_s)) {
    throw ParameterError("sigma_s", "observation noise must be nonnegative");
  }
}

void StochasticProblem::validate() const {
  const Eigen::Index k = system.state_dim();
  const Eigen::Index m = system.control_dim();
  if (state_costs.size() < 2) throw ContractError("problem needs at least one step");
  for (const auto& q : state_costs) {
    if (q.rows() != k || q.cols() != k) throw ContractError("state cost must be k x k");
  }
  if (effort.rows() != m || effort.cols() != m) throw ContractError("effort cost must be m x m");
  if (!(control_noise >= 0.0)) throw ContractError("control noise must be nonnegative");
  if (!observation) throw ContractError("problem has no observation model");
  if (observation->state_dim() != k) throw ContractError("observation model dimension mismatch");
  if (initial_mean.size() != k || initial_estimate.size() != k) {
    throw ContractError("initial state dimension mismatch");
  }
  if (initial_cov.rows() != k || initial_cov.cols() != k) {
    throw ContractError("initial covariance dimension mismatch");
  }
}

StochasticProblem make_lqg_problem(const LQCostWeights& w, const LQGNoiseParams& noise,
                                   const TaskSpec& task, const MuscleParams& muscle,
                                   CostSchedule schedule) {
  w.validate();
  noise.validate();
  task.validate();
  LinearSystem sys = build_muscle_system(muscle, task.h);
  const StateLayout& layout = *sys.layout();
  Mat h = Mat::Zero(3, layout.size());
  h(0, layout.index(component::kPosition)) = 1.0;
  h(1, layout.index(component::kVelocity)) = 1.0;
  h(2, layout.index(component::kForce)) = 1.0;
  Mat g = Eigen::Vector3d(0.02, 0.2, 1.0).asDiagonal();
  g *= noise.sigma_s;

  Vec x0 = initial_state(layout, task);
  Mat cov0 = project_psd(initial_covariance(layout, task), "initial covariance");
  auto q = state_cost_sequence(state_cost(layout, w), task.n, schedule);
  return StochasticProblem{std::move(sys),
                           std::move(q),
                           Mat::Constant(1, 1, effort_cost(w, task.n)),
                           noise.sigma_u,
                           std::make_shared<FixedObservation>(std::move(h), std::move(g)),
                           x0,
                           std::move(cov0),
                           x0};
}

namespace {

constexpr int kSmall = 8;
using SmallMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kSmall, kSmall>;

template <class M>
using VecOf = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, M::MaxRowsAtCompileTime, 1>;

template <class M>
M pinv_sym(const M& m) {
  if (m.rows() == 1) {
    M out(1, 1);
    out(0, 0) = m(0, 0) > 0.0 ? 1.0 / m(0, 0) : 0.0;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<M> eig(0.5 * (m + m.transpose()));
  const auto& ev = eig.eigenvalues();
  const double cutoff = 1e-12 * std::max(ev.maxCoeff(), 0.0);
  VecOf<M> inv(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    inv(i) = ev(i) > cutoff && ev(i) > 0.0 ? 1.0 / ev(i) : 0.0;
  }
  return eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
}

template <class M>
struct Context {
  using V = VecOf<M>;

  explicit Context(const StochasticProblem& p)
      : problem(p),
        n(p.steps()),
        a(p.system.a()),
        b(p.system.b()),
        r(p.effort),
        sigma2(p.control_noise * p.control_noise),
        x0(p.initial_mean),
        xhat0(p.initial_estimate),
        cov0(p.initial_cov) {
    q.reserve(n + 1);
    for (const auto& qn : p.state_costs) q.emplace_back(qn);
    h.reserve(n);
    for (int i = 0; i < n; ++i) {
      Mat hn = p.observation->matrix(i);
      if (hn.rows() != p.observation->dim() || hn.cols() != a.rows()) {
        throw ContractError("observation matrix has wrong shape at step " + std::to_string(i));
      }
      h.emplace_back(std::move(hn));
    }
  }

  M omega_at(int step, const V& mean_state) const {
    const Mat g = problem.observation->noise_factor(step, Vec(mean_state));
    return M(g * g.transpose());
  }

  const StochasticProblem& problem;
  int n;
  M a, b, r;
  std::vector<M> q;
  std::vector<M> h;
  double sigma2;
  V x0, xhat0;
  M cov0;
};

// Value function x'Sx x + e'Se e + s with e = x - xhat.
template <class M>
double backward(const Context<M>& c, const std::vector<M>& kalman, const std::vector<M>& omega,
                std::vector<M>& feedback) {
  using V = VecOf<M>;
  const Eigen::Index k = c.a.rows();
  M sx = c.q[c.n];
  M se = M::Zero(k, k);
  double s = 0.0;
  feedback.resize(c.n);
  for (int i = c.n - 1; i >= 0; --i) {
    const M bsx = c.b.transpose() * sx;
    const M bse = c.b.transpose() * se;
    const M lam = c.r + bsx * c.b + c.sigma2 * (bsx + bse) * c.b;
    const M l = pinv_sym(M(0.5 * (lam + lam.transpose()))) * (bsx * c.a);
    M akh = c.a;
    if (!kalman.empty()) {
      akh.noalias() -= kalman[i] * c.h[i];
      s += (se * kalman[i] * omega[i] * kalman[i].transpose()).trace();
    }
    M se_next = c.a.transpose() * bsx.transpose() * l + akh.transpose() * se * akh;
    M sx_next = c.q[i] + c.a.transpose() * sx * (c.a - c.b * l);
    se = 0.5 * (se_next + se_next.transpose());
    sx = 0.5 * (sx_next + sx_next.transpose());
    feedback[i] = l;
  }
  const V d = c.x0 - c.xhat0;
  return c.x0.dot(sx * c.x0) + (sx * c.cov0).trace() + d.dot(se * d) + (se * c.cov0).trace() + s;
}

// Uncentered moments of the estimate and the estimation error. With
// `optimize` set, K_n is the Kalman gain for the current L and is written to
// `kalman`; otherwise `kalman` is read.
template <class M>
double forward(const Context<M>& c, const std::vector<M>& feedback, std::vector<M>& kalman,
               std::vector<M>& omega, bool optimize) {
  using V = VecOf<M>;
  const Eigen::Index k = c.a.rows();
  V me = c.x0 - c.xhat0;
  V mx = c.xhat0;
  M pe = c.cov0 + me * me.transpose();
  M px = mx * mx.transpose();
  M pxe = mx * me.transpose();
  if (optimize) kalman.resize(c.n);
  omega.resize(c.n);
  double j = 0.0;
  for (int i = 0; i < c.n; ++i) {
    const M& l = feedback[i];
    const M& h = c.h[i];
    const M exx = px + pe + pxe + pxe.transpose();
    j += (c.q[i] * exx).trace() + (l.transpose() * c.r * l * px).trace();

    omega[i] = c.omega_at(i, V(mx + me));
    if (optimize) {
      const M hp = h * pe;
      kalman[i] = c.a * hp.transpose() * pinv_sym(M(hp * h.transpose() + omega[i]));
    }
    const M& kg = kalman[i];
    const M bl = c.b * l;
    const M acl = c.a - bl;
    const M kh = kg * h;
    const M akh = c.a - kh;
    const M kok = kg * omega[i] * kg.transpose();

    M pe_next = akh * pe * akh.transpose() + kok + c.sigma2 * bl * px * bl.transpose();
    const M cross = acl * pxe * kh.transpose();
    M px_next = acl * px * acl.transpose() + kh * pe * kh.transpose() + kok + cross +
                cross.transpose();
    M pxe_next = acl * pxe * akh.transpose() + kh * pe * akh.transpose() - kok;
    V mx_next = acl * mx + kh * me;
    V me_next = akh * me;

    pe = 0.5 * (pe_next + pe_next.transpose());
    px = 0.5 * (px_next + px_next.transpose());
    pxe = std::move(pxe_next);
    mx = std::move(mx_next);
    me = std::move(me_next);
  }
  const M exx = px + pe + pxe + pxe.transpose();
  j += (c.q[c.n] * exx).trace();
  (void)k;
  return j;
}

template <class M>
std::vector<Mat> to_dynamic(const std::vector<M>& v) {
  std::vector<Mat> out;
  out.reserve(v.size());
  for (const auto& m : v) out.emplace_back(m);
  return out;
}

template <class M>
std::vector<M> from_dynamic(const std::vector<Mat>& v) {
  std::vector<M> out;
  out.reserve(v.size());
  for (const auto& m : v) out.emplace_back(m);
  return out;
}

template <class M>
ControlLaw solve_impl(const StochasticProblem& problem, const SolverOptions& opts) {
  const Context<M> c(problem);
  const Eigen::Index k = c.a.rows();
  const Eigen::Index l = problem.observation->dim();
  std::vector<M> kalman(c.n, M::Zero(k, l));
  std::vector<M> omega(c.n, M::Zero(l, l));
  std::vector<M> feedback;

  ControlLaw law;
  law.converged = false;
  double previous = 0.0;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    std::vector<M> kept_feedback, kept_kalman;
    if (it > 1) {
      kept_feedback = feedback;
      kept_kalman = kalman;
    }
    backward(c, kalman, omega, feedback);
    const double j = forward(c, feedback, kalman, omega, true);
    if (!std::isfinite(j)) throw DivergenceError(it, "expected cost is not finite");
    if (it > 1 && j > previous) {
      // Noise evaluated along the mean makes the feedback step inexact; an
      // iterate that raises the objective is dropped and ends the descent.
      feedback = std::move(kept_feedback);
      kalman = std::move(kept_kalman);
      law.converged = true;
      break;
    }
    law.cost_history.push_back(j);
    law.iterations = it;
    law.cost = j;
    if (it > 1 && (previous - j) <= opts.tolerance * std::abs(previous)) {
      law.converged = true;
      break;
    }
    previous = j;
  }
  law.feedback = to_dynamic(feedback);
  law.kalman = to_dynamic(kalman);
  return law;
}

bool fits_small(const StochasticProblem& p) {
  return p.system.state_dim() <= kSmall && p.system.control_dim() <= kSmall &&
         p.observation->dim() <= kSmall;
}

void check_law(const StochasticProblem& problem, const ControlLaw& law) {
  const auto n = static_cast<std::size_t>(problem.steps());
  if (law.feedback.size() != n) throw ContractError("control law length does not match problem");
  if (!law.kalman.empty() && law.kalman.size() != n) {
    throw ContractError("Kalman gain sequence length does not match problem");
  }
}

}  // namespace

ControlLaw solve_stochastic(const StochasticProblem& problem, const SolverOptions& opts) {
  problem.validate();
  if (opts.max_iterations < 1) throw ParameterError("max_iterations", "must be at least 1");
  if (!(opts.tolerance >= 0.0)) throw ParameterError("tolerance", "must be nonnegative");
  if (fits_small(problem)) return solve_impl<SmallMat>(problem, opts);
  return solve_impl<Mat>(problem, opts);
}

ControlLaw solve_lqg(const LQCostWeights& w, const LQGNoiseParams& noise, const TaskSpec& task,
                     const MuscleParams& muscle, const SolverOptions& opts) {
  return solve_stochastic(make_lqg_problem(w, noise, task, muscle), opts);
}

BackwardPass feedback_pass(const StochasticProblem& problem, const ControlLaw& law) {
  problem.validate();
  check_law(problem, law);
  const Context<Mat> c(problem);
  std::vector<Mat> k = law.kalman;
  if (k.empty()) k.assign(c.n, Mat::Zero(c.a.rows(), problem.observation->dim()));
  std::vector<Mat> omega;
  forward(c, law.feedback, k, omega, false);
  BackwardPass out;
  out.cost = backward(c, k, omega, out.feedback);
  return out;
}

double expected_cost(const StochasticProblem& problem, const ControlLaw& law) {
  problem.validate();
  check_law(problem, law);
  const Context<Mat> c(problem);
  std::vector<Mat> k = law.kalman;
  if (k.empty()) k.assign(c.n, Mat::Zero(c.a.rows(), problem.observation->dim()));
  std::vector<Mat> omega;
  return forward(c, law.feedback, k, omega, false);
}

ClosedLoopMoments predict_moments(const StochasticProblem& problem, const ControlLaw& law) {
  problem.validate();
  check_law(problem, law);
  const LinearSystem& sys = problem.system;
  const Eigen::Index k = sys.state_dim();
  const Eigen::Index l = problem.observation->dim();
  const Mat zero_k = Mat::Zero(k, l);

  ClosedLoopMoments out{DistributionTrajectory(sys.layout(), sys.h()), {}};
  JointDistribution joint = JointDistribution::from_prior(
      StateDistribution(problem.initial_mean, problem.initial_cov), problem.initial_estimate);
  for (int n = 0; n <= problem.steps(); ++n) {
    out.state.push(joint.true_state());
    out.estimate_mean.push_back(joint.mean().tail(k));
    if (n == problem.steps()) break;
    const Mat g = problem.observation->noise_factor(n, joint.mean().head(k));
    ClosedLoopStep step{law.feedback[n], law.has_kalman() ? law.kalman[n] : zero_k,
                        problem.observation->matrix(n), g * g.transpose(),
                        problem.control_noise};
    joint = propagate_moments(sys, joint, step);
  }
  return out;
}

DistributionTrajectory predict_distribution(const StochasticProblem& problem,
                                            const ControlLaw& law) {
  return predict_moments(problem, law).state;
}

Trajectory sample_trajectory(const StochasticProblem& problem, const ControlLaw& law,
                             std::uint64_t seed) {
  problem.validate();
  check_law(problem, law);
  const LinearSystem& sys = problem.system;
  const Eigen::Index k = sys.state_dim();
  const Eigen::Index l = problem.observation->dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&](Eigen::Index size) {
    Vec z(size);
    for (Eigen::Index i = 0; i < size; ++i) z(i) = normal(rng);
    return z;
  };

  Vec x = problem.initial_mean + psd_sqrt(problem.initial_cov) * draw(k);
  Vec xhat = problem.initial_estimate;
  Trajectory traj(sys.layout(), sys.h());
  traj.push_state(x);
  for (int n = 0; n < problem.steps(); ++n) {
    Vec u = -law.feedback[n] * xhat;
    const double eta = normal(rng);
    const Vec xi = draw(l);
    const Mat h = problem.observation->matrix(n);
    const Vec y = h * x + problem.observation->noise_factor(n, x) * xi;
    Vec x_next = sys.a() * x + (1.0 + problem.control_noise * eta) * (sys.b() * u);
    Vec xhat_next = sys.a() * xhat + sys.b() * u;
    if (law.has_kalman()) xhat_next += law.kalman[n] * (y - h * xhat);
    x = std::move(x_next);
    xhat = std::move(xhat_next);
    traj.push_control(std::move(u));
    traj.push_state(x);
  }
  return traj;
}

}  // namespace ofc
