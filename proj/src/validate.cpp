// Copyright 2026 The mgl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mgl/validate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mgl/agents.hpp"
#include "mgl/game.hpp"
#include "mgl/harness.hpp"
#include "mgl/klearn.hpp"

namespace mgl {
namespace {

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double unif(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Interior simplex point, bounded away from the faces.
std::vector<double> interior(std::size_t n, Rng& rng) {
  auto p = sample_simplex(n, rng);
  std::vector<double> y(p.probs().begin(), p.probs().end());
  for (double& v : y) v = 0.9 * v + 0.1 / static_cast<double>(n);
  return y;
}

void tally(CheckResult& r, bool good, double err) {
  good ? ++r.passed : ++r.failed;
  r.worst = std::max(r.worst, err);
}

}  // namespace

BeliefState random_belief(Rng& rng) {
  const std::size_t m = pick(rng, 1, 4), k = pick(rng, 1, 4);
  BeliefState b(m, k, unif(rng, -1.0, 1.0), unif(rng, 0.2, 2.0), unif(rng, 0.5, 2.0));
  std::normal_distribution<double> n01(0.0, 1.0);
  const std::size_t obs = pick(rng, 0, 20);
  for (std::size_t s = 0; s < obs; ++s) b.observe(pick(rng, 0, m - 1), pick(rng, 0, k - 1), n01(rng));
  return b;
}

CheckResult check_solver(std::size_t cases, std::uint64_t seed) {
  CheckResult res;
  res.name = "solver vs brute force";
  Rng rng = make_rng(seed, 101);
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t m = pick(rng, 1, 4), k = pick(rng, 1, 4);
    Matrix a(m, k);
    for (double& v : a.data()) v = unif(rng, -1.0, 1.0);
    const PayoffMatrix g(a);
    const auto lp = solve_zero_sum(g);
    const auto bf = brute_force_solution(g);
    const double err = std::abs(lp.value - bf.value);
    const double cert = std::max(
        {std::abs(column_guarantee(g, lp.x_star) - lp.value),
         std::abs(row_guarantee(g, lp.y_star) - lp.value),
         std::abs(column_guarantee(g, bf.x_star) - bf.value),
         std::abs(row_guarantee(g, bf.y_star) - bf.value)});
    tally(res, err <= 1e-6 && cert <= 2e-6, std::max(err, cert));
  }
  return res;
}

CheckResult check_gradients(std::size_t cases, std::uint64_t seed) {
  CheckResult res;
  res.name = "finite-difference gradients";
  Rng rng = make_rng(seed, 102);
  constexpr double h = 1e-5;
  for (std::size_t c = 0; c < cases; ++c) {
    const BeliefState b = random_belief(rng);
    std::vector<double> y = interior(b.m(), rng);
    const double tau = std::exp(unif(rng, std::log(0.2), std::log(5.0)));
    const auto e = klearn::evaluate(b, y, tau);
    double err = 0.0;
    auto rel = [](double a, double fd) { return std::abs(a - fd) / std::max(1.0, std::abs(fd)); };
    for (std::size_t i = 0; i < b.m(); ++i) {
      auto yp = y, ym = y;
      yp[i] += h;
      ym[i] -= h;
      const double fd =
          (klearn::evaluate(b, yp, tau).value - klearn::evaluate(b, ym, tau).value) / (2 * h);
      err = std::max(err, rel(e.grad_y[i], fd));
    }
    const double fp = klearn::evaluate(b, y, tau + h).value;
    const double fm = klearn::evaluate(b, y, tau - h).value;
    err = std::max(err, rel(e.d_tau, (fp - fm) / (2 * h)));
    const double dp = klearn::evaluate(b, y, tau + h).d_tau;
    const double dm = klearn::evaluate(b, y, tau - h).d_tau;
    err = std::max(err, rel(e.d2_tau, (dp - dm) / (2 * h)));
    tally(res, err <= 1e-4, err);
  }
  return res;
}

CheckResult check_convexity(std::size_t cases, std::uint64_t seed) {
  CheckResult res;
  res.name = "midpoint convexity";
  Rng rng = make_rng(seed, 103);
  for (std::size_t c = 0; c < cases; ++c) {
    const BeliefState b = random_belief(rng);
    const auto y1 = interior(b.m(), rng), y2 = interior(b.m(), rng);
    const double t1 = std::exp(unif(rng, std::log(0.05), std::log(20.0)));
    const double t2 = std::exp(unif(rng, std::log(0.05), std::log(20.0)));
    std::vector<double> ym(b.m());
    for (std::size_t i = 0; i < b.m(); ++i) ym[i] = 0.5 * (y1[i] + y2[i]);
    const double f1 = klearn::evaluate(b, y1, t1).value;
    const double f2 = klearn::evaluate(b, y2, t2).value;
    const double fm = klearn::evaluate(b, ym, 0.5 * (t1 + t2)).value;
    const double excess = fm - 0.5 * (f1 + f2);
    tally(res, excess <= 1e-10 * std::max(1.0, std::abs(fm)), std::max(excess, 0.0));
  }
  return res;
}

CheckResult check_optimism(std::size_t cases, std::uint64_t seed) {
  CheckResult res;
  res.name = "optimism certificate";
  Rng rng = make_rng(seed, 104);
  for (std::size_t c = 0; c < cases; ++c) {
    const BeliefState b = random_belief(rng);
    const auto y = interior(b.m(), rng);
    const double tau = std::exp(unif(rng, std::log(1e-3), std::log(100.0)));
    const double f = klearn::evaluate(b, y, tau).value;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.k(); ++j) {
      double mu = 0.0;
      for (std::size_t i = 0; i < b.m(); ++i) mu += b.post_mean(i, j) * y[i];
      best = std::max(best, mu);
    }
    const double gap = best - f;
    tally(res, gap <= 1e-12 * std::max(1.0, std::abs(f)), std::max(gap, 0.0));
  }
  return res;
}

CheckResult check_pigeonhole(std::size_t cases, std::uint64_t seed) {
  CheckResult res;
  res.name = "pigeonhole counting";
  Rng rng = make_rng(seed, 105);
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t q = pick(rng, 1, 10);
    const std::size_t horizon = pick(rng, 1, 1000);
    // Mix of adversarial (point mass on the least-picked index) and random.
    const bool greedy = c % 3 == 0;
    std::vector<std::vector<double>> probs(horizon);
    std::vector<std::size_t> picks(horizon);
    std::vector<std::size_t> counts(q, 0);
    for (std::size_t t = 0; t < horizon; ++t) {
      if (greedy) {
        const auto lo = std::min_element(counts.begin(), counts.end()) - counts.begin();
        probs[t].assign(q, 0.0);
        probs[t][static_cast<std::size_t>(lo)] = 1.0;
      } else {
        auto p = sample_simplex(q, rng);
        probs[t].assign(p.probs().begin(), p.probs().end());
      }
      std::discrete_distribution<std::size_t> d(probs[t].begin(), probs[t].end());
      picks[t] = d(rng);
      ++counts[picks[t]];
    }
    const double sum = pigeonhole_sum(probs, picks);
    const double lt = std::log(static_cast<double>(horizon));
    const double q_d = static_cast<double>(q);
    tally(res, sum <= q_d * (2.0 + lt), sum / (q_d * (1.0 + lt)));
  }
  res.note = "worst is max ratio to q(1+log T)";
  return res;
}

std::vector<CheckResult> run_validation(std::uint64_t seed) {
  return {check_solver(200, seed), check_gradients(100, seed), check_convexity(1000, seed),
          check_optimism(1000, seed), check_pigeonhole(1000, seed)};
}

}  // namespace mgl
