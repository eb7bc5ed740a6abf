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

#include "mgl/presets.hpp"

#include <algorithm>

namespace mgl {
namespace {

void require_learner(const std::string& alg) {
  const auto& names = learner_names();
  if (std::find(names.begin(), names.end(), alg) != names.end()) return;
  std::string all;
  for (const auto& n : names) all += (all.empty() ? "" : ", ") + n;
  throw InvalidInput("unknown algorithm '" + alg + "'; valid options: " + all);
}

AgentSpec learner(const std::string& alg, double prior_mean, double prior_var) {
  require_learner(alg);
  AgentSpec a;
  a.name = alg;
  a.prior.mean = prior_mean;
  a.prior.var = prior_var;
  return a;
}

RunConfig base(const std::string& experiment) {
  RunConfig c;
  c.experiment = experiment;
  c.horizon = kDefaultHorizon;
  c.noise_var = 1.0;
  c.seeds = seed_range(0, kDefaultSeeds);
  return c;
}

RunConfig rps(const std::string& experiment) {
  RunConfig c = base(experiment);
  c.game.kind = GameSpec::Kind::kMatrix;
  c.game.matrix = rps_matrix().entries();
  return c;
}

}  // namespace

RunConfig rps_selfplay(const std::string& alg) {
  RunConfig c = rps("rps-selfplay");
  c.column = learner(alg, 0.0, 1.0);
  c.row = learner(alg, 0.0, 1.0);
  return c;
}

RunConfig rps_vs_best_response(const std::string& alg) {
  RunConfig c = rps("rps-br");
  c.column = learner(alg, 0.0, 1.0);
  c.row.name = "best_response";
  return c;
}

RunConfig rps_head_to_head(const std::string& alg1, const std::string& alg2) {
  RunConfig c = rps("rps-h2h");
  c.column = learner(alg1, 0.0, 1.0);
  c.row = learner(alg2, 0.0, 1.0);
  return c;
}

RunConfig counterexample_2x2(const std::string& alg) {
  RunConfig c = base("counterexample");
  c.game.kind = GameSpec::Kind::kCounterexample;
  c.game.counterexample_r = 0.0;
  c.column = learner(alg, 0.0, 1.0);
  // Known entries get the floor variance; A(0, 0) is the only unknown.
  c.column.prior.means = Matrix{{0.0, 0.0}, {0.0, -1.0}};
  c.column.prior.vars = Matrix{{1.0, kVarianceFloor}, {kVarianceFloor, kVarianceFloor}};
  c.column.prior.two_point = {{0, 0, TwoPointPrior{-1.0, 1.0, 0.5}}};
  c.row.name = "nash";
  return c;
}

RobustOpponent robust_opponent_from(const std::string& name) {
  if (name == "nature") return RobustOpponent::kNature;
  if (name == "best_response") return RobustOpponent::kBestResponse;
  throw InvalidInput("unknown robust-bandit opponent '" + name +
                     "'; valid options: nature, best_response");
}

RunConfig robust_bandit(const std::string& alg, RobustOpponent vs) {
  RunConfig c = base("robust-bandit");
  c.game.kind = GameSpec::Kind::kGaussian;
  c.game.mean = 0.5;
  c.game.var = 2.0;
  c.game.m = 5;
  c.game.k = 10;
  c.column = learner(alg, 0.5, 2.0);
  c.row.name = vs == RobustOpponent::kNature ? "nature" : "best_response";
  c.row.period = 50;
  return c;
}

}  // namespace mgl
