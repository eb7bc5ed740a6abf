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

#include <string>

#include "mgl/config.hpp"

namespace mgl {

// Run configurations of the standard experiments. All use T = 1000, seeds
// 0..99 and unit noise unless the caller overrides the returned fields.

// Rock-paper-scissors, `alg` in both seats, prior N(0, 1).
RunConfig rps_selfplay(const std::string& alg);
// `alg` as maximizer against a best-responding minimizer.
RunConfig rps_vs_best_response(const std::string& alg);
// alg1 as maximizer, alg2 as minimizer.
RunConfig rps_head_to_head(const std::string& alg1, const std::string& alg2);
// [[r, 0], [0, -1]] with r = +-1 per seed. The learner knows every entry
// except A(0, 0), which is +-1 with equal odds; the minimizer plays the
// true equilibrium.
RunConfig counterexample_2x2(const std::string& alg);

enum class RobustOpponent { kNature, kBestResponse };
RobustOpponent robust_opponent_from(const std::string& name);
// 10 agent actions, 5 outcomes, entries N(0.5, 2.0) per seed (variance),
// matched prior. Nature redraws a uniform random policy every 50 rounds.
RunConfig robust_bandit(const std::string& alg, RobustOpponent vs);

inline constexpr std::int64_t kDefaultHorizon = 1000;
inline constexpr std::size_t kDefaultSeeds = 100;

}  // namespace mgl
