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

#pragma once

#include <cstddef>
#include <limits>

#include "mgl/types.hpp"

namespace mgl {

// A saddle point (x*, y*, V*) of a known matrix. x* belongs to the column
// (maximizing) player, y* to the row (minimizing) player.
struct GameSolution {
  MixedStrategy x_star;
  MixedStrategy y_star;
  double value = 0.0;
  // max_j (A^T y*)_j - min_i (A x*)_i; zero for an exact saddle point.
  double gap = 0.0;
};

// Solves the zero-sum game exactly with a dense tableau simplex (Bland's
// rule). Throws InvalidInput for tol <= 0 and SolverError if the pivot budget
// 10 (m + k + 2)^2 is exhausted or the certificate gap exceeds tol.
GameSolution solve_zero_sum(const PayoffMatrix& a, double tol = 1e-9);

// Independent test oracle: support enumeration over equal-size support pairs.
// Only defined for m, k <= kBruteForceMaxDim.
inline constexpr std::size_t kBruteForceMaxDim = 5;
GameSolution brute_force_solution(const PayoffMatrix& a, double tol = 1e-9);

struct BestResponse {
  std::size_t row = 0;
  double value = 0.0;
};

// argmin_i (A x)_i, lowest index on ties.
BestResponse best_response_row(const PayoffMatrix& a, const MixedStrategy& x);

// y^T A x.
double expected_payoff(const PayoffMatrix& a, const MixedStrategy& x,
                       const MixedStrategy& y);

// Worst-case guarantees of each side: min_i (A x)_i and max_j (A^T y)_j.
double column_guarantee(const PayoffMatrix& a, const MixedStrategy& x);
double row_guarantee(const PayoffMatrix& a, const MixedStrategy& y);

// KL(p || q) in nats. Returns kKlInfinity when p puts mass where q has none.
inline constexpr double kKlInfinity = std::numeric_limits<double>::infinity();
double kl_divergence(const MixedStrategy& p, const MixedStrategy& q);

}  // namespace mgl
