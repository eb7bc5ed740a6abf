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

#include "mgl/config.hpp"
#include "mgl/game.hpp"
#include "mgl/rng.hpp"
#include "mgl/types.hpp"

using namespace mgl;

namespace {

void expect_strategy(const MixedStrategy& s, std::vector<double> want, double tol) {
  ASSERT_EQ(s.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(s[i], want[i], tol) << i;
}

PayoffMatrix random_game(Rng& rng, std::size_t m, std::size_t k) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix a(m, k);
  for (double& v : a.data()) v = u(rng);
  return PayoffMatrix(a);
}

}  // namespace

TEST(Types, PayoffMatrixRejectsEmptyAndNonFinite) {
  EXPECT_THROW(PayoffMatrix(Matrix(0, 3)), InvalidInput);
  EXPECT_THROW(PayoffMatrix(Matrix{{1.0, std::nan("")}}), InvalidInput);
  EXPECT_THROW(PayoffMatrix(Matrix{{1.0, INFINITY}}), InvalidInput);
}

TEST(Types, MirroredIsNegativeTranspose) {
  const PayoffMatrix a{{1, 2, 3}, {4, 5, 6}};
  const auto b = a.mirrored();
  ASSERT_EQ(b.m(), 3u);
  ASSERT_EQ(b.k(), 2u);
  EXPECT_EQ(b(2, 1), -6.0);
  EXPECT_EQ(b(0, 1), -4.0);
}

TEST(Types, MixedStrategyValidation) {
  EXPECT_THROW(MixedStrategy({0.5, 0.6}), InvalidInput);
  EXPECT_THROW(MixedStrategy({1.2, -0.2}), InvalidInput);
  EXPECT_THROW(MixedStrategy(std::vector<double>{}), InvalidInput);
  EXPECT_NO_THROW(MixedStrategy({0.25, 0.75}));
  EXPECT_THROW(MixedStrategy::point_mass(3, 3), InvalidInput);
  const auto w = MixedStrategy::from_weights({2.0, -1e-15, 2.0});
  expect_strategy(w, {0.5, 0.0, 0.5}, 0.0);
}

TEST(SolveZeroSum, RockPaperScissors) {
  const auto s = solve_zero_sum(rps_matrix());
  EXPECT_NEAR(s.value, 0.0, 1e-12);
  expect_strategy(s.x_star, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 1e-12);
  expect_strategy(s.y_star, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 1e-12);
}

TEST(SolveZeroSum, OneByOne) {
  const auto s = solve_zero_sum(PayoffMatrix{{-2.5}});
  EXPECT_DOUBLE_EQ(s.value, -2.5);
  expect_strategy(s.x_star, {1.0}, 0.0);
  expect_strategy(s.y_star, {1.0}, 0.0);
}

TEST(SolveZeroSum, CounterexamplePositiveR) {
  const auto s = solve_zero_sum(counterexample_matrix(1.0));
  EXPECT_NEAR(s.value, 0.0, 1e-12);
  expect_strategy(s.y_star, {0.0, 1.0}, 1e-12);
  expect_strategy(s.x_star, {1.0, 0.0}, 1e-12);
}

TEST(SolveZeroSum, CounterexampleNegativeR) {
  const auto s = solve_zero_sum(counterexample_matrix(-1.0));
  EXPECT_NEAR(s.value, -0.5, 1e-12);
  expect_strategy(s.x_star, {0.5, 0.5}, 1e-12);
}

TEST(SolveZeroSum, MatchesBruteForceOnRandomGames) {
  Rng rng = make_rng(7, 0);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  for (int c = 0; c < 300; ++c) {
    const auto a = random_game(rng, dim(rng), dim(rng));
    const auto lp = solve_zero_sum(a);
    const auto bf = brute_force_solution(a);
    EXPECT_NEAR(lp.value, bf.value, 1e-6);
    EXPECT_LE(lp.gap, 2e-9);
    EXPECT_LE(row_guarantee(a, lp.y_star) - column_guarantee(a, lp.x_star), 2e-9);
  }
}

TEST(SolveZeroSum, TransposeAntisymmetry) {
  Rng rng = make_rng(8, 0);
  for (int c = 0; c < 100; ++c) {
    const auto a = random_game(rng, 3, 4);
    const auto s = solve_zero_sum(a);
    const auto t = solve_zero_sum(a.mirrored());
    EXPECT_NEAR(t.value, -s.value, 1e-8);
    // Roles swap: x of the mirrored game is a minimax strategy for the row.
    EXPECT_NEAR(row_guarantee(a, t.x_star), s.value, 1e-8);
    EXPECT_NEAR(column_guarantee(a, t.y_star), s.value, 1e-8);
  }
}

TEST(SolveZeroSum, ConstantShift) {
  Rng rng = make_rng(9, 0);
  for (int c = 0; c < 100; ++c) {
    const auto a = random_game(rng, 4, 3);
    const double shift = 3.7;
    const auto s = solve_zero_sum(a);
    const PayoffMatrix b(a.entries().shifted(shift));
    const auto t = solve_zero_sum(b);
    EXPECT_NEAR(t.value, s.value + shift, 1e-9);
    EXPECT_NEAR(column_guarantee(b, s.x_star), t.value, 1e-9);
    EXPECT_NEAR(row_guarantee(b, s.y_star), t.value, 1e-9);
  }
}

TEST(SolveZeroSum, Deterministic) {
  Rng rng = make_rng(10, 0);
  const auto a = random_game(rng, 4, 4);
  const auto s1 = solve_zero_sum(a), s2 = solve_zero_sum(a);
  EXPECT_EQ(s1.x_star, s2.x_star);
  EXPECT_EQ(s1.y_star, s2.y_star);
  EXPECT_EQ(s1.value, s2.value);
}

TEST(SolveZeroSum, DegenerateGamesStillCertify) {
  // Constant, duplicated rows and columns, dominated strategies.
  for (const auto& a : {PayoffMatrix{{1, 1}, {1, 1}}, PayoffMatrix{{0, 0, 0}},
                        PayoffMatrix{{1, 2}, {1, 2}, {0, 3}}, PayoffMatrix{{2}, {-1}, {5}}}) {
    const auto s = solve_zero_sum(a);
    EXPECT_LE(s.gap, 1e-9);
    EXPECT_NEAR(s.value, brute_force_solution(a).value, 1e-9);
  }
}

TEST(BruteForce, KnownValues) {
  EXPECT_NEAR(brute_force_solution(rps_matrix()).value, 0.0, 1e-12);
  EXPECT_NEAR(brute_force_solution(counterexample_matrix(1.0)).value, 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(brute_force_solution(PayoffMatrix{{4.0}}).value, 4.0);
}

TEST(BruteForce, RejectsLargeGames) {
  EXPECT_THROW(brute_force_solution(PayoffMatrix(Matrix(6, 2))), InvalidInput);
}

TEST(BestResponse, Examples) {
  auto br = best_response_row(rps_matrix(), MixedStrategy{1, 0, 0});
  EXPECT_EQ(br.row, 1u);
  EXPECT_DOUBLE_EQ(br.value, -1.0);
  br = best_response_row(counterexample_matrix(1.0), MixedStrategy{1, 0});
  EXPECT_EQ(br.row, 1u);
  EXPECT_DOUBLE_EQ(br.value, 0.0);
  br = best_response_row(PayoffMatrix{{3.0}}, MixedStrategy{1});
  EXPECT_EQ(br.row, 0u);
  EXPECT_DOUBLE_EQ(br.value, 3.0);
  EXPECT_THROW(best_response_row(rps_matrix(), MixedStrategy{0.5, 0.5}), InvalidInput);
}

TEST(BestResponse, NeverWorseThanAnyRowStrategy) {
  Rng rng = make_rng(11, 0);
  const auto a = random_game(rng, 4, 3);
  const MixedStrategy x{0.2, 0.5, 0.3};
  const auto br = best_response_row(a, x);
  std::exponential_distribution<double> e(1.0);
  for (int c = 0; c < 100; ++c) {
    std::vector<double> w(4);
    for (double& v : w) v = e(rng);
    EXPECT_LE(br.value, expected_payoff(a, x, MixedStrategy::from_weights(w)) + 1e-12);
  }
}

TEST(ExpectedPayoff, Examples) {
  EXPECT_NEAR(expected_payoff(rps_matrix(), MixedStrategy::uniform(3), MixedStrategy::uniform(3)),
              0.0, 1e-15);
  EXPECT_DOUBLE_EQ(
      expected_payoff(counterexample_matrix(1.0), MixedStrategy{0.5, 0.5}, MixedStrategy{0, 1}),
      -0.5);
  EXPECT_DOUBLE_EQ(expected_payoff(PayoffMatrix{{1.5}}, MixedStrategy{1}, MixedStrategy{1}), 1.5);
  EXPECT_THROW(expected_payoff(rps_matrix(), MixedStrategy{1, 0}, MixedStrategy::uniform(3)),
               InvalidInput);
}

TEST(KlDivergence, Examples) {
  EXPECT_DOUBLE_EQ(kl_divergence(MixedStrategy::uniform(3), MixedStrategy::uniform(3)), 0.0);
  EXPECT_NEAR(kl_divergence(MixedStrategy{1, 0, 0}, MixedStrategy::uniform(3)), std::log(3.0),
              1e-15);
  EXPECT_EQ(kl_divergence(MixedStrategy{1, 0}, MixedStrategy{0, 1}), kKlInfinity);
  EXPECT_THROW(kl_divergence(MixedStrategy{1, 0}, MixedStrategy::uniform(3)), InvalidInput);
}
