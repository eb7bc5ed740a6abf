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

#include <algorithm>
#include <cmath>
#include <random>

#include "mgl/belief.hpp"
#include "mgl/config.hpp"

using namespace mgl;

TEST(Belief, SingleObservation) {
  const auto b = update(BeliefState(2, 2, 0.0, 1.0, 1.0), 0, 0, 1.0);
  EXPECT_EQ(b.count(0, 0), 1);
  EXPECT_DOUBLE_EQ(b.emp_mean(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(b.post_var(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(b.post_mean(0, 0), 0.5);
}

TEST(Belief, TwoObservations) {
  auto b = BeliefState(2, 2, 0.0, 1.0, 1.0);
  b = update(b, 0, 0, 0.0);
  b = update(b, 0, 0, 1.0);
  EXPECT_EQ(b.count(0, 0), 2);
  EXPECT_DOUBLE_EQ(b.emp_mean(0, 0), 0.5);
  EXPECT_NEAR(b.post_var(0, 0), 1.0 / 3, 1e-15);
  EXPECT_NEAR(b.post_mean(0, 0), 1.0 / 3, 1e-15);
}

TEST(Belief, UpdateLeavesOtherEntries) {
  const auto before = BeliefState(2, 2, 0.3, 2.0, 1.5);
  const auto after = update(before, 0, 0, 4.0);
  EXPECT_EQ(after.count(0, 1), before.count(0, 1));
  EXPECT_EQ(after.emp_mean(0, 1), before.emp_mean(0, 1));
  EXPECT_EQ(after.post_mean(0, 1), before.post_mean(0, 1));
  EXPECT_EQ(after.post_var(0, 1), before.post_var(0, 1));
}

TEST(Belief, Errors) {
  auto b = BeliefState(2, 3, 0.0, 1.0, 1.0);
  EXPECT_THROW(update(b, 2, 0, 1.0), InvalidInput);
  EXPECT_THROW(update(b, 0, 3, 1.0), InvalidInput);
  EXPECT_THROW(update(b, 0, 0, std::nan("")), InvalidInput);
  EXPECT_THROW(BeliefState(2, 2, 0.0, -1.0, 1.0), InvalidInput);
  EXPECT_THROW(BeliefState(2, 2, 0.0, 1.0, 0.0), InvalidInput);
}

TEST(Belief, PosteriorFormulaInvariants) {
  Rng rng = make_rng(3, 0);
  std::normal_distribution<double> n01(0.0, 1.0);
  BeliefState b(3, 3, 0.2, 1.7, 0.6);
  double prev = b.post_var(1, 2);
  for (int s = 0; s < 50; ++s) {
    b.observe(1, 2, n01(rng));
    const double n = static_cast<double>(b.count(1, 2));
    const double var = 1.0 / (1.0 / 1.7 + n / 0.6);
    EXPECT_NEAR(b.post_var(1, 2), var, 1e-15);
    EXPECT_NEAR(b.post_mean(1, 2), var * (0.2 / 1.7 + n * b.emp_mean(1, 2) / 0.6), 1e-12);
    EXPECT_LE(b.post_var(1, 2), prev);
    prev = b.post_var(1, 2);
  }
  EXPECT_EQ(b.emp_mean(0, 0), 0.0);
  EXPECT_EQ(b.count(0, 0), 0);
}

TEST(Belief, VarianceFloor) {
  BeliefState b(1, 1, 0.0, 1.0, 1e-20);
  b.observe(0, 0, 2.0);
  EXPECT_EQ(b.post_var(0, 0), kVarianceFloor);
}

TEST(Belief, OrderInsensitive) {
  std::vector<double> r{0.4, -1.3, 2.2, 0.0, 0.7, -0.1};
  BeliefState a(1, 1, 0.0, 1.0, 1.0), b = a;
  for (double v : r) a.observe(0, 0, v);
  std::reverse(r.begin(), r.end());
  std::swap(r[1], r[3]);
  for (double v : r) b.observe(0, 0, v);
  EXPECT_NEAR(a.emp_mean(0, 0), b.emp_mean(0, 0), 1e-12);
  EXPECT_EQ(a.count(0, 0), b.count(0, 0));
  EXPECT_NEAR(a.post_mean(0, 0), b.post_mean(0, 0), 1e-12);
  EXPECT_NEAR(a.post_var(0, 0), b.post_var(0, 0), 1e-12);
}

TEST(Ucb, BonusExamples) {
  UcbParams p;
  p.horizon = 10;
  p.delta = std::exp(-1.0);
  BeliefState b(1, 2, 0.0, 1.0, 1.0);
  EXPECT_NEAR(ucb_matrix(b, p)(0, 0), std::sqrt(2.0), 1e-15);
  b.set_statistics(0, 1, 8, 0.5);
  EXPECT_NEAR(ucb_matrix(b, p)(0, 1), 1.0, 1e-15);
  b.set_statistics(0, 1, 32, 0.5);
  EXPECT_NEAR(ucb_matrix(b, p)(0, 1), 0.75, 1e-15);
}

TEST(Ucb, ForHorizonAndValidation) {
  const auto p = UcbParams::for_horizon(1000, 2, 3);
  EXPECT_NEAR(p.log_inv_delta(), std::log(2.0 * 1000 * 1000 * 6), 1e-9);
  UcbParams bad;
  bad.delta = 0.9;  // 2 log(1/delta) < 1
  EXPECT_THROW(bad.validate(), InvalidInput);
  bad.delta = 0.0;
  EXPECT_THROW(bad.validate(), InvalidInput);
}

TEST(Ucb, DominatesEmpiricalMeanAndShrinks) {
  Rng rng = make_rng(4, 0);
  std::normal_distribution<double> n01(0.0, 1.0);
  const auto p = UcbParams::for_horizon(100, 2, 2);
  BeliefState b(2, 2, 0.0, 1.0, 1.0);
  for (int s = 0; s < 40; ++s) {
    const auto u = ucb_matrix(b, p);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) EXPECT_GT(u(i, j), b.emp_mean(i, j));
    const double bonus = u(1, 0) - b.emp_mean(1, 0);
    b.observe(1, 0, n01(rng));
    // Counts are floored at one, so the first observation leaves the bonus unchanged.
    if (s == 0)
      EXPECT_DOUBLE_EQ(ucb_matrix(b, p)(1, 0) - b.emp_mean(1, 0), bonus);
    else
      EXPECT_LT(ucb_matrix(b, p)(1, 0) - b.emp_mean(1, 0), bonus);
  }
}

TEST(SampleMatrix, TightPosteriorConcentrates) {
  BeliefState b(2, 2, 0.0, 1.0, 1e-14);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) b.observe(i, j, static_cast<double>(i + 2 * j));
  Rng rng = make_rng(5, 0);
  const auto s = sample_matrix(b, rng);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      EXPECT_LE(std::abs(s(i, j) - b.post_mean(i, j)), 6.0 * std::sqrt(b.post_var(i, j)));
}

TEST(SampleMatrix, PriorMoments) {
  const BeliefState b(1, 1, 0.0, 1.0, 1.0);
  Rng rng = make_rng(6, 0);
  double sum = 0.0, sq = 0.0;
  constexpr int n = 10000;
  for (int s = 0; s < n; ++s) {
    const double v = sample_matrix(b, rng)(0, 0);
    sum += v;
    sq += v * v;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.0, 0.05);
  EXPECT_NEAR(sq / n - mean * mean, 1.0, 0.1);
}

TEST(SampleMatrix, DeterministicGivenStream) {
  const BeliefState b(3, 2, 0.1, 0.5, 1.0);
  Rng r1 = make_rng(9, 4), r2 = make_rng(9, 4);
  EXPECT_EQ(sample_matrix(b, r1), sample_matrix(b, r2));
}

TEST(Cgf, Examples) {
  BeliefState b(Matrix{{0.2}, {0.8}}, Matrix{{1.0}, {1.0}}, 1.0);
  const std::vector<double> zero{0.0, 0.0}, v{1.0, 0.0};
  EXPECT_DOUBLE_EQ(cgf(b, 0, zero), 0.0);
  EXPECT_NEAR(cgf(b, 0, v), 0.7, 1e-15);
  const std::vector<double> bad{1.0, INFINITY};
  EXPECT_THROW(cgf(b, 0, bad), InvalidInput);
  const std::vector<double> shortv{1.0};
  EXPECT_THROW(cgf(b, 0, shortv), InvalidInput);
}

TEST(Cgf, QuadraticScaling) {
  Rng rng = make_rng(12, 0);
  std::normal_distribution<double> n01(0.0, 1.0);
  BeliefState b(3, 2, 0.4, 1.3, 0.8);
  for (int s = 0; s < 10; ++s) b.observe(s % 3, s % 2, n01(rng));
  for (int c = 0; c < 50; ++c) {
    std::vector<double> v(3), v2(3);
    for (std::size_t i = 0; i < 3; ++i) {
      v[i] = n01(rng);
      v2[i] = 2 * v[i];
    }
    double quad = 0.0;
    for (std::size_t i = 0; i < 3; ++i) quad += b.post_var(i, 1) * v[i] * v[i];
    EXPECT_NEAR(cgf(b, 1, v2) - 2 * cgf(b, 1, v), quad, 1e-12);
  }
}

TEST(Cgf, ConvexAndDominatesMean) {
  Rng rng = make_rng(13, 0);
  std::normal_distribution<double> n01(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  BeliefState b(3, 2, -0.2, 0.9, 1.0);
  b.set_two_point_prior(2, 0, {-1.0, 1.0, 0.3});
  for (int s = 0; s < 12; ++s) b.observe(s % 3, s % 2, n01(rng));
  for (int c = 0; c < 500; ++c) {
    std::vector<double> v1(3), v2(3), vm(3);
    const double lam = u(rng);
    for (std::size_t i = 0; i < 3; ++i) {
      v1[i] = 3 * n01(rng);
      v2[i] = 3 * n01(rng);
      vm[i] = lam * v1[i] + (1 - lam) * v2[i];
    }
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_LE(cgf(b, j, vm), lam * cgf(b, j, v1) + (1 - lam) * cgf(b, j, v2) + 1e-12);
      double mean = 0.0;
      for (std::size_t i = 0; i < 3; ++i) {
        const double mu = b.kind(i, j) == PriorKind::kTwoPoint
                              ? -1.0 + 2.0 * b.two_point_prob(i, j)
                              : b.post_mean(i, j);
        mean += mu * v1[i];
      }
      EXPECT_GE(cgf(b, j, v1), mean - 1e-12);
    }
  }
}

TEST(Cgf, SubGaussianConcentration) {
  Rng rng = make_rng(14, 0);
  std::normal_distribution<double> n01(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  BeliefState b(3, 3, 0.0, 1.0, 1.0);
  for (int s = 0; s < 30; ++s) b.observe(s % 3, (s / 3) % 3, n01(rng));
  for (int c = 0; c < 200; ++c) {
    std::vector<double> y(3), v(3);
    const double tau = u(rng);
    for (std::size_t i = 0; i < 3; ++i) {
      y[i] = n01(rng);
      v[i] = y[i] / tau;
    }
    for (std::size_t j = 0; j < 3; ++j) {
      double bound = 0.0;
      for (std::size_t i = 0; i < 3; ++i)
        bound += b.post_mean(i, j) * y[i] +
                 y[i] * y[i] / (2 * tau * std::max<double>(1.0, b.count(i, j)));
      EXPECT_LE(tau * cgf(b, j, v), bound + 1e-12);
    }
  }
}

// Two-point entry: exact Bayes on {lo, hi} under Gaussian noise.
TEST(TwoPoint, PosteriorAndCgf) {
  BeliefState b(1, 1, 0.0, 1.0, 1.0);
  b.set_two_point_prior(0, 0, {-1.0, 1.0, 0.5});
  EXPECT_DOUBLE_EQ(b.two_point_prob(0, 0), 0.5);
  const std::vector<double> v{0.7};
  EXPECT_NEAR(cgf(b, 0, v), std::log(std::cosh(0.7)), 1e-15);
  b.observe(0, 0, 0.3);
  // log-odds = 2 * 0.3 / 1
  const double p = 1.0 / (1.0 + std::exp(-0.6));
  EXPECT_NEAR(b.two_point_prob(0, 0), p, 1e-15);
  EXPECT_NEAR(cgf(b, 0, v), std::log((1 - p) * std::exp(-0.7) + p * std::exp(0.7)), 1e-14);
  EXPECT_NEAR(b.entry_cgf_d1(0, 0, 0.0), 2 * p - 1, 1e-15);
}

TEST(TwoPoint, StableAtExtremes) {
  BeliefState b(1, 1, 0.0, 1.0, 1.0);
  b.set_two_point_prior(0, 0, {-1.0, 1.0, 0.5});
  for (double v : {-1e6, -800.0, 800.0, 1e6}) {
    EXPECT_TRUE(std::isfinite(b.entry_cgf(0, 0, v)));
    EXPECT_NEAR(b.entry_cgf(0, 0, v), std::abs(v) - std::log(2.0), 1e-9 * std::abs(v));
    EXPECT_TRUE(std::isfinite(b.entry_cgf_excess(0, 0, v)));
    EXPECT_NEAR(b.entry_cgf_excess(0, 0, v), -std::log(2.0), 1e-9);
  }
}
