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
#include <stdexcept>
#include <string>
#include <vector>

#include "mgl/config.hpp"
#include "mgl/game.hpp"
#include "mgl/types.hpp"

namespace mgl {

// One round of play, accounted against the true A and its saddle point.
struct StepRecord {
  std::uint64_t seed = 0;
  std::int64_t t = 0;
  std::size_t i = 0;  // realized row action
  std::size_t j = 0;  // realized column action
  double r = 0.0;     // noisy payment to the column player
  MixedStrategy x;    // column strategy emitted this round
  MixedStrategy y;    // row strategy emitted this round
  double expected_payoff = 0.0;  // y^T A x
  double v_star = 0.0;
  double abs_regret_cum = 0.0;     // sum_s |V* - y_s^T A x_s|
  double signed_regret_cum = 0.0;  // sum_s (V* - y_s^T A x_s)
  double kl_x = 0.0;  // KL(x_t || x*), kKlInfinity when undefined
  double kl_y = 0.0;

  bool operator==(const StepRecord&) const = default;
};

struct Episode {
  std::uint64_t seed = 0;
  PayoffMatrix game{{0.0}};
  GameSolution solution;
  std::vector<StepRecord> steps;
};

// An agent failed (e.g. the K-learning solver did not converge) at `round`.
class AgentFailure : public std::runtime_error {
 public:
  AgentFailure(const std::string& what, std::int64_t round)
      : std::runtime_error(what), round_(round) {}
  std::int64_t round() const { return round_; }

 private:
  std::int64_t round_;
};

// Plays cfg.horizon rounds on the game drawn for `seed`. Reproducible from
// (cfg, seed) alone.
Episode run_episode(const RunConfig& cfg, std::uint64_t seed);

// All seeds of cfg, one after another. Reference for run_seeds.
std::vector<Episode> run_seeds_serial(const RunConfig& cfg);
// All seeds of cfg in parallel (OpenMP, `cfg.jobs` threads or the default).
// Output is identical to run_seeds_serial.
std::vector<Episode> run_seeds(const RunConfig& cfg);

struct FieldStats {
  std::vector<double> mean;
  std::vector<double> std;  // population convention
};

// Per-round statistics over seeds. Infinite KL values are left out of the
// KL averages; kl_*_excluded counts them per round.
struct Aggregate {
  std::size_t seeds = 0;
  FieldStats r, expected_payoff, abs_regret_cum, signed_regret_cum, kl_x, kl_y;
  std::vector<std::size_t> kl_x_excluded, kl_y_excluded;
};

Aggregate aggregate(const std::vector<std::vector<StepRecord>>& runs);
Aggregate aggregate(const std::vector<Episode>& episodes);

// max_c sum_t A(i_t, c) - sum_t r_t, from the column player's seat.
double hindsight_regret(const std::vector<StepRecord>& steps, const PayoffMatrix& a);

struct NegativeReturnStats {
  double fraction = 0.0;  // share of rounds with y^T A x < 0
  double mean = 0.0;      // mean of y^T A x
};

NegativeReturnStats negative_return_stats(const std::vector<StepRecord>& steps);
NegativeReturnStats negative_return_stats(const std::vector<Episode>& episodes);

// sum_t sum_i p^t_i / max(1, n^t_i) for a selection process with per-round
// distributions `probs[t]` and realized picks `picks[t]`; n^t counts picks
// strictly before round t.
double pigeonhole_sum(const std::vector<std::vector<double>>& probs,
                      const std::vector<std::size_t>& picks);

}  // namespace mgl
