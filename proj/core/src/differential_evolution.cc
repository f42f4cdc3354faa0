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

#include "ofc/differential_evolution.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "ofc/errors.h"

namespace ofc {

ParameterSpace::ParameterSpace(std::vector<ParameterBound> entries) : entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (!std::isfinite(e.lower) || !std::isfinite(e.upper) || !(e.lower < e.upper)) {
      throw ParameterError(e.name, "bounds must satisfy lower < upper");
    }
    if (e.scale == ParameterScale::kLog && !(e.lower > 0.0)) {
      throw ParameterError(e.name, "log-scaled bounds must be positive");
    }
  }
}

std::size_t ParameterSpace::index(const std::string& name) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].name == name) return i;
  }
  throw ParameterError(name, "not in parameter space");
}

bool ParameterSpace::contains(const Vec& x) const {
  if (static_cast<std::size_t>(x.size()) != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!(x(i) >= entries_[i].lower && x(i) <= entries_[i].upper)) return false;
  }
  return true;
}

Vec ParameterSpace::to_search(const Vec& x) const {
  Vec z = x;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (entries_[i].scale == ParameterScale::kLog) z(i) = std::log10(x(i));
  }
  return z;
}

Vec ParameterSpace::from_search(const Vec& z) const {
  Vec x = z;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (entries_[i].scale == ParameterScale::kLog) x(i) = std::pow(10.0, z(i));
    // Guard the round trip through log10 at the bounds.
    x(i) = std::clamp(x(i), entries_[i].lower, entries_[i].upper);
  }
  return x;
}

Vec ParameterSpace::search_lower() const {
  Vec l(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    l(i) = entries_[i].scale == ParameterScale::kLog ? std::log10(entries_[i].lower)
                                                     : entries_[i].lower;
  }
  return l;
}

Vec ParameterSpace::search_upper() const {
  Vec u(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    u(i) = entries_[i].scale == ParameterScale::kLog ? std::log10(entries_[i].upper)
                                                     : entries_[i].upper;
  }
  return u;
}

int FitConfig::population_for(std::size_t dim) const {
  if (population > 0) return population;
  return std::max(15, static_cast<int>(5 * dim));
}

void FitConfig::validate() const {
  if (population != 0 && population < 4) throw ParameterError("population", "must be at least 4");
  if (max_generations < 0) throw ParameterError("max_generations", "must be nonnegative");
  if (!(tolerance >= 0.0)) throw ParameterError("tolerance", "must be nonnegative");
  if (patience < 1) throw ParameterError("patience", "must be at least 1");
  if (!(mutation > 0.0 && mutation <= 2.0)) throw ParameterError("mutation", "must be in (0, 2]");
  if (!(crossover >= 0.0 && crossover <= 1.0)) {
    throw ParameterError("crossover", "must be in [0, 1]");
  }
  if (threads < 0) throw ParameterError("threads", "must be nonnegative");
  if (polish_evaluations < 0) throw ParameterError("polish_evaluations", "must be nonnegative");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Evaluator {
 public:
  Evaluator(const ParameterSpace& space, const LossFunction& loss, int threads)
      : space_(space), loss_(loss), threads_(threads) {}

  // Evaluates candidates given in search coordinates.
  std::vector<double> operator()(const std::vector<Vec>& candidates) {
    std::vector<double> out(candidates.size(), kInf);
    std::atomic<long> failed{0};
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const Vec x = space_.from_search(candidates[i]);
        if (!space_.contains(x)) throw ContractError("candidate outside parameter bounds");
        double v = kInf;
        try {
          v = loss_(x);
        } catch (const ContractError&) {
          throw;
        } catch (const std::exception&) {
          v = kInf;
        }
        if (!std::isfinite(v)) {
          v = kInf;
          ++failed;
        }
        out[i] = v;
      }
    };
    const std::size_t n = candidates.size();
    const std::size_t t = std::min<std::size_t>(threads_, n);
    if (t <= 1) {
      work(0, n);
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(t);
      for (std::size_t w = 0; w < t; ++w) {
        const std::size_t begin = n * w / t;
        const std::size_t end = n * (w + 1) / t;
        pool.emplace_back([&, w, begin, end] {
          try {
            work(begin, end);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& th : pool) th.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    evaluations += static_cast<long>(n);
    failures += failed.load();
    return out;
  }

  long evaluations = 0;
  long failures = 0;

 private:
  const ParameterSpace& space_;
  const LossFunction& loss_;
  int threads_;
};

struct Polished {
  Vec z;
  double loss;
};

// Nelder-Mead in unbounded coordinates t, mapped onto the box by
// lo + (hi - lo) (sin t + 1) / 2.
Polished nelder_mead(Evaluator& eval, const Vec& lo, const Vec& hi, Vec z0, double f0, int budget) {
  const Eigen::Index dim = z0.size();
  const Vec span = (hi - lo).cwiseMax(1e-300);
  auto to_box = [&](const Vec& t) {
    const Vec z = lo + span.cwiseProduct(((t.array().sin() + 1.0) * 0.5).matrix());
    return Vec(z.cwiseMax(lo).cwiseMin(hi));
  };
  auto f = [&](const Vec& t) { return eval({to_box(t)}).front(); };

  const Vec u0 = (z0 - lo).cwiseQuotient(span).cwiseMax(0.0).cwiseMin(1.0);
  const Vec t0 = (2.0 * u0.array() - 1.0).asin().matrix();
  std::vector<Vec> s{t0};
  std::vector<double> fs{f0};
  for (Eigen::Index j = 0; j < dim; ++j) {
    Vec t = t0;
    t(j) += t(j) > 0.0 ? -0.25 : 0.25;
    s.push_back(t);
    fs.push_back(f(t));
  }
  long used = dim;
  std::vector<std::size_t> order(s.size());
  while (used + 2 <= budget) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];
    if (std::isfinite(fs[worst]) && fs[worst] - fs[best] <= 1e-12 * std::abs(fs[best])) break;
    Vec centroid = Vec::Zero(dim);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i != worst) centroid += s[i];
    }
    centroid /= static_cast<double>(dim);
    const Vec xr = 2.0 * centroid - s[worst];
    const double fr = f(xr);
    ++used;
    if (fr < fs[best]) {
      const Vec xe = 3.0 * centroid - 2.0 * s[worst];
      const double fe = f(xe);
      ++used;
      if (fe < fr) {
        s[worst] = xe;
        fs[worst] = fe;
      } else {
        s[worst] = xr;
        fs[worst] = fr;
      }
    } else if (fr < fs[second]) {
      s[worst] = xr;
      fs[worst] = fr;
    } else {
      const bool outside = fr < fs[worst];
      const Vec xc = outside ? Vec(0.5 * (centroid + xr)) : Vec(0.5 * (centroid + s[worst]));
      const double fc = f(xc);
      ++used;
      if (fc < std::min(fr, fs[worst])) {
        s[worst] = xc;
        fs[worst] = fc;
      } else {
        if (used + dim > budget) break;
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (i == best) continue;
          s[i] = 0.5 * (s[best] + s[i]);
          fs[i] = f(s[i]);
        }
        used += dim;
      }
    }
  }
  const std::size_t best =
      static_cast<std::size_t>(std::min_element(fs.begin(), fs.end()) - fs.begin());
  return {to_box(s[best]), fs[best]};
}

}  // namespace

DEResult differential_evolution(const ParameterSpace& space, const LossFunction& loss,
                                const FitConfig& cfg) {
  cfg.validate();
  if (space.dim() == 0) throw ParameterError("space", "parameter space is empty");
  const std::size_t dim = space.dim();
  const int np = cfg.population_for(dim);
  int threads = cfg.threads;
  if (threads == 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Vec lo = space.search_lower();
  const Vec hi = space.search_upper();

  std::vector<Vec> pop(np, Vec(dim));
  for (auto& member : pop) {
    for (std::size_t j = 0; j < dim; ++j) member(j) = lo(j) + unit(rng) * (hi(j) - lo(j));
  }
  Evaluator eval(space, loss, threads);
  std::vector<double> fitness = eval(pop);

  auto best_index = [&] {
    return static_cast<std::size_t>(std::min_element(fitness.begin(), fitness.end()) -
                                    fitness.begin());
  };
  DEResult result;
  result.history.push_back(fitness[best_index()]);

  std::uniform_int_distribution<int> pick(0, np - 1);
  std::uniform_int_distribution<std::size_t> pick_dim(0, dim - 1);
  std::vector<Vec> trials(np, Vec(dim));
  for (int g = 1; g <= cfg.max_generations; ++g) {
    for (int i = 0; i < np; ++i) {
      int a, b, c;
      do a = pick(rng); while (a == i);
      do b = pick(rng); while (b == i || b == a);
      do c = pick(rng); while (c == i || c == a || c == b);
      const std::size_t jrand = pick_dim(rng);
      Vec& t = trials[i];
      for (std::size_t j = 0; j < dim; ++j) {
        const double u = unit(rng);
        if (u < cfg.crossover || j == jrand) {
          t(j) = std::clamp(pop[a](j) + cfg.mutation * (pop[b](j) - pop[c](j)), lo(j), hi(j));
        } else {
          t(j) = pop[i](j);
        }
      }
    }
    const std::vector<double> trial_fitness = eval(trials);
    for (int i = 0; i < np; ++i) {
      if (trial_fitness[i] < fitness[i]) {
        pop[i] = trials[i];
        fitness[i] = trial_fitness[i];
      }
    }
    result.generations = g;
    const double best = fitness[best_index()];
    result.history.push_back(best);
    if (g >= cfg.patience && std::isfinite(best)) {
      const double past = result.history[g - cfg.patience];
      if (std::isfinite(past) && past - best <= cfg.tolerance * std::abs(past)) {
        result.converged = true;
        break;
      }
    }
  }

  const std::size_t bi = best_index();
  result.best = space.from_search(pop[bi]);
  result.best_loss = fitness[bi];
  if (cfg.polish_evaluations > 0 && std::isfinite(result.best_loss)) {
    const long before = eval.evaluations;
    const Polished p = nelder_mead(eval, lo, hi, pop[bi], fitness[bi], cfg.polish_evaluations);
    result.polish_evaluations = eval.evaluations - before;
    if (p.loss < result.best_loss) {
      result.polish_gain = result.best_loss - p.loss;
      result.best = space.from_search(p.z);
      result.best_loss = p.loss;
    }
  }
  result.evaluations = eval.evaluations;
  result.failed_evaluations = eval.failures;
  result.success = std::isfinite(result.best_loss);
  return result;
}

}  // namespace ofc
