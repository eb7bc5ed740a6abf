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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mgl/agents.hpp"
#include "mgl/config.hpp"
#include "mgl/klearn.hpp"
#include "mgl/presets.hpp"
#include "mgl/validate.hpp"

using namespace mgl;
namespace kl = mgl::klearn;

namespace {

BeliefState fresh_with(std::size_t m, std::size_t k,
                       std::initializer_list<std::tuple<std::size_t, std::size_t, double>> obs) {
  BeliefState b(m, k, 0.0, 1.0, 1.0);
  for (const auto& [i, j, r] : obs) b.observe(i, j, r);
  return b;
}

// Known-matrix belief: every entry pinned at A.
BeliefState pinned(const PayoffMatrix& a) {
  return BeliefState(a.entries(), Matrix(a.m(), a.k(), kVarianceFloor), 1.0);
}

BeliefState counterexample_belief() {
  auto cfg = counterexample_2x2("klearn");
  return cfg.column.prior.make_belief(2, 2, 1.0);
}

}  // namespace

TEST(Objective, DegenerateBeliefGivesLogK) {
  const auto b = pinned(PayoffMatrix(Matrix(2, 4, 0.0)));
  EXPECT_NEAR(kl::objective(b, MixedStrategy{0.3, 0.7}, 1.0), std::log(4.0), 1e-9);
}

TEST(Objective, SingleColumnReduction) {
  auto b = fresh_with(2, 1, {{0, 0, 0.4}, {1, 0, -1.0}, {1, 0, 0.2}});
  const MixedStrategy y{0.35, 0.65};
  const double tau = 0.8;
  double want = 0.0;
  for (std::size_t i = 0; i < 2; ++i)
    want += b.post_mean(i, 0) * y[i] + b.post_var(i, 0) * y[i] * y[i] / (2 * tau);
  EXPECT_NEAR(kl::objective(b, y, tau), want, 1e-14);
}

TEST(Objective, RejectsNonPositiveTau) {
  const BeliefState b(2, 2, 0.0, 1.0, 1.0);
  EXPECT_THROW(kl::objective(b, MixedStrategy{0.5, 0.5}, 0.0), InvalidInput);
  EXPECT_THROW(kl::objective(b, MixedStrategy{0.5, 0.5}, -1.0), InvalidInput);
}

TEST(Lagrangian, MaxOverXIsObjective) {
  auto b = fresh_with(2, 3, {{0, 0, 0.5}, {1, 2, -0.4}});
  const MixedStrategy y{0.6, 0.4};
  for (double tau : {0.1, 1.0, 7.0}) {
    const auto e = kl::evaluate(b, y.probs(), tau);
    EXPECT_NEAR(kl::lagrangian(b, MixedStrategy(e.x), y, tau), e.value, 1e-9);
    // any other x does no better
    EXPECT_LE(kl::lagrangian(b, MixedStrategy{0.2, 0.5, 0.3}, y, tau), e.value + 1e-12);
  }
}

TEST(Lagrangian, PointMassAndUniform) {
  auto b = fresh_with(2, 2, {{0, 1, 0.9}});
  const MixedStrategy y{0.25, 0.75};
  const std::vector<double> yv{0.25, 0.75};
  EXPECT_NEAR(kl::lagrangian(b, MixedStrategy{0, 1}, y, 1.0), cgf(b, 1, yv), 1e-14);
  const auto z = pinned(PayoffMatrix(Matrix(2, 3, 0.0)));
  EXPECT_NEAR(kl::lagrangian(z, MixedStrategy::uniform(3), y, 1.0), std::log(3.0), 1e-9);
}

TEST(Solve, PinnedRockPaperScissors) {
  const auto s = kl::solve(pinned(rps_matrix()), 1e-8);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(s.y_star[i], 1.0 / 3, 0.02);
    EXPECT_NEAR(s.x_star[i], 1.0 / 3, 0.02);
  }
  EXPECT_NEAR(s.objective, 0.0, 1e-6 * std::log(3.0) + 0.02);
}

TEST(Solve, CounterexamplePlaysFirstColumn) {
  const auto s = kl::solve(counterexample_belief(), 1e-8);
  EXPECT_GE(s.x_star[0], 0.99);
}

// Minima from an independent multi-start Nelder-Mead search
// (tests/oracles/klearn_min.py).
TEST(Solve, MatchesIndependentMinimum) {
  const auto b1 = fresh_with(2, 3, {{0, 0, 0.5}, {0, 1, -0.3}, {1, 2, 1.2}, {1, 0, -0.7}, {0, 0, 0.1}});
  const auto s1 = kl::solve(b1, 1e-9);
  EXPECT_NEAR(s1.objective, 0.957622673833, 1e-8);
  EXPECT_NEAR(s1.y_star[0], 0.53919907, 1e-5);
  EXPECT_NEAR(s1.tau_star, 0.43319920, 1e-5);

  const auto b2 = fresh_with(3, 2, {{0, 0, 1.0}, {1, 1, -1.0}, {2, 0, 0.3}, {2, 1, 0.4}, {0, 1, -0.2}});
  const auto s2 = kl::solve(b2, 1e-9);
  EXPECT_NEAR(s2.objective, 0.605595721559, 1e-8);
  EXPECT_NEAR(s2.y_star[0], 0.23989617, 1e-5);
  EXPECT_NEAR(s2.y_star[1], 0.37804217, 1e-5);
  EXPECT_NEAR(s2.tau_star, 0.43287792, 1e-5);
}

TEST(Solve, SolutionInvariants) {
  Rng rng = make_rng(21, 0);
  for (int c = 0; c < 50; ++c) {
    const auto b = random_belief(rng);
    const auto s = kl::solve(b, 1e-7);
    EXPECT_LE(s.stationarity, 1e-7);
    EXPECT_GE(s.tau_star, 1e-6);
    EXPECT_LE(s.tau_star, 1e4);
    const auto e = kl::evaluate(b, s.y_star.probs(), s.tau_star);
    EXPECT_NEAR(s.objective, e.value, 1e-9);
    for (std::size_t j = 0; j < b.k(); ++j) EXPECT_NEAR(s.x_star[j], e.x[j], 1e-12);
  }
}

TEST(Solve, SaddleProperty) {
  Rng rng = make_rng(22, 0);
  std::uniform_real_distribution<double> logt(std::log(0.01), std::log(100.0));
  for (int c = 0; c < 30; ++c) {
    const auto b = random_belief(rng);
    const auto s = kl::solve(b, 1e-9);
    const double at_star = kl::lagrangian(b, s.x_star, s.y_star, s.tau_star);
    for (int d = 0; d < 20; ++d) {
      const auto y = sample_simplex(b.m(), rng);
      EXPECT_LE(at_star, kl::lagrangian(b, s.x_star, y, std::exp(logt(rng))) + 1e-7);
    }
  }
}

TEST(Solve, Deterministic) {
  Rng rng = make_rng(23, 0);
  const auto b = random_belief(rng);
  const auto s1 = kl::solve(b, 1e-8), s2 = kl::solve(b, 1e-8);
  EXPECT_EQ(s1.y_star, s2.y_star);
  EXPECT_EQ(s1.x_star, s2.x_star);
  EXPECT_EQ(s1.tau_star, s2.tau_star);
  EXPECT_EQ(s1.iterations, s2.iterations);
}

TEST(Solve, WarmStartAgrees) {
  Rng rng = make_rng(24, 0);
  auto b = random_belief(rng);
  const auto cold = kl::solve(b, 1e-9);
  b.observe(0, 0, 0.3);
  const auto fresh = kl::solve(b, 1e-9);
  const auto warm = kl::solve(b, 1e-9, {}, &cold);
  EXPECT_NEAR(warm.objective, fresh.objective, 1e-8);
}

TEST(Solve, SingleColumn) {
  const auto b = fresh_with(3, 1, {{0, 0, 2.0}});
  const auto s = kl::solve(b, 1e-8);
  EXPECT_EQ(s.x_star.size(), 1u);
  EXPECT_DOUBLE_EQ(s.x_star[0], 1.0);
}

TEST(Solve, IterationCapThrowsWithBestIterate) {
  Rng rng = make_rng(25, 0);
  BeliefState b(4, 4, 0.0, 1.0, 1.0);
  std::normal_distribution<double> n01(0.0, 1.0);
  for (int s = 0; s < 40; ++s) b.observe(s % 4, (s / 4) % 4, n01(rng));
  kl::Options opts;
  opts.max_iterations = 1;
  try {
    kl::solve(b, 1e-14, opts);
    FAIL() << "expected NonConvergence";
  } catch (const kl::NonConvergence& e) {
    EXPECT_EQ(e.best().y_star.size(), 4u);
    EXPECT_GT(e.best().iterations, 0);
  }
}

TEST(Solve, RejectsBadTolerance) {
  const BeliefState b(2, 2, 0.0, 1.0, 1.0);
  EXPECT_THROW(kl::solve(b, 0.0), InvalidInput);
}

TEST(ProjectToSimplex, Examples) {
  const std::vector<double> v{0.5, 0.5, 0.5};
  const auto p = kl::project_to_simplex(v);
  for (double e : p) EXPECT_NEAR(e, 1.0 / 3, 1e-15);
  const std::vector<double> w{2.0, 0.0, -1.0};
  const auto q = kl::project_to_simplex(w);
  EXPECT_DOUBLE_EQ(q[0], 1.0);
  EXPECT_DOUBLE_EQ(q[1], 0.0);
  EXPECT_DOUBLE_EQ(q[2], 0.0);
}

TEST(Numerics, ValidationSuite) {
  for (const auto& r : {check_gradients(100, 1), check_convexity(1000, 1), check_optimism(1000, 1)})
    EXPECT_TRUE(r.ok()) << r.name << " failed " << r.failed << " worst " << r.worst;
}
