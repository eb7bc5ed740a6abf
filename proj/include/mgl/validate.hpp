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

#include <cstdint>
#include <string>
#include <vector>

#include "mgl/belief.hpp"
#include "mgl/rng.hpp"

namespace mgl {

struct CheckResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  double worst = 0.0;  // largest error (or ratio) seen
  std::string note;
  bool ok() const { return failed == 0 && passed > 0; }
};

// LP solver vs support enumeration on random m, k <= 4, entries U[-1, 1].
CheckResult check_solver(std::size_t cases, std::uint64_t seed);
// Analytic K-learning derivatives vs central differences (step 1e-5).
CheckResult check_gradients(std::size_t cases, std::uint64_t seed);
// Midpoint convexity of the objective in (y, tau).
CheckResult check_convexity(std::size_t cases, std::uint64_t seed);
// objective(y, tau) >= max_j mu_j^T y.
CheckResult check_optimism(std::size_t cases, std::uint64_t seed);
// Counting sum against q (2 + log T); worst is the max ratio to q (1 + log T).
CheckResult check_pigeonhole(std::size_t cases, std::uint64_t seed);

std::vector<CheckResult> run_validation(std::uint64_t seed);

// Random Gaussian belief with a handful of observations, m, k in [1, 4].
BeliefState random_belief(Rng& rng);

}  // namespace mgl
