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
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mgl/belief.hpp"
#include "mgl/game.hpp"
#include "mgl/klearn.hpp"
#include "mgl/rng.hpp"
#include "mgl/types.hpp"

namespace mgl {

// ---------------------------------------------------------------------------
// Per-decision operations. Every learner reasons as the column (maximizing)
// player of the matrix it sees; see SeatedAgent for the row seat.

MixedStrategy ucb_agent_act(const BeliefState& b, const UcbParams& p);
MixedStrategy ts_agent_act(const BeliefState& b, Rng& rng);
MixedStrategy klearn_agent_act(const BeliefState& b, double tol);

struct Exp3State {
  std::vector<double> cum_est;  // sum_s r^_si
  std::int64_t round = 1;

  explicit Exp3State(std::size_t k = 1) : cum_est(k, 0.0) {}
};

// gamma_t = min(sqrt(k log k / t), 1) and rho_t = sqrt(2 log k / (t k)).
double exp3_gamma(std::size_t k, std::int64_t t);
double exp3_rho(std::size_t k, std::int64_t t);
MixedStrategy exp3_agent_act(const Exp3State& s);
Exp3State exp3_agent_observe(Exp3State s, std::size_t action, double reward,
                             const MixedStrategy& x_played);

// Statistics a naive bandit keeps about its own arms, ignoring the opponent.
struct ArmStats {
  std::vector<std::int64_t> counts;
  std::vector<double> means;

  explicit ArmStats(std::size_t k = 1) : counts(k, 0), means(k, 0.0) {}
  void observe(std::size_t arm, double reward);
};

MixedStrategy naive_ucb_act(const ArmStats& s, std::int64_t t);
// Gaussian posterior per arm: prior N(prior_mean, prior_var), known noise.
MixedStrategy naive_ts_act(const ArmStats& s, double prior_mean, double prior_var,
                           double noise_var, Rng& rng);

// Point mass on best_response_row(a, x).
MixedStrategy best_response_opponent_act(const PayoffMatrix& a, const MixedStrategy& x);

// Uniform draw from the simplex (symmetric Dirichlet with all parameters 1).
MixedStrategy sample_simplex(std::size_t n, Rng& rng);

// ---------------------------------------------------------------------------
// Stateful agents.

// Independent-entry prior description in the agent's own frame.
struct TwoPointEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  TwoPointPrior prior;
  bool operator==(const TwoPointEntry&) const = default;
};

struct PriorSpec {
  double mean = 0.0;
  double var = 1.0;
  // Optional per-entry overrides (m x k of the seat's frame).
  std::optional<Matrix> means;
  std::optional<Matrix> vars;
  std::vector<TwoPointEntry> two_point;

  BeliefState make_belief(std::size_t m, std::size_t k, double noise_var) const;
  // The same prior expressed for the opposite seat (game -A^T).
  PriorSpec mirrored() const;
  bool operator==(const PriorSpec&) const = default;
};

// Everything needed to build one seat's agent.
struct AgentSpec {
  std::string name;       // see agent_names()
  PriorSpec prior;        // ts, klearn, naive_ts
  double tol = 1e-6;      // klearn solver tolerance
  std::vector<double> strategy;  // fixed
  std::int64_t period = 50;      // nature
  bool operator==(const AgentSpec&) const = default;
};

const std::vector<std::string>& agent_names();
const std::vector<std::string>& learner_names();

// One decision maker in its own frame: it owns `own` actions and faces an
// opponent with `opp` actions; payoffs are to be maximized.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::string name() const = 0;
  // t counts rounds from 1. `opponent` is the strategy the opponent announced
  // this round; only agents that report needs_opponent_strategy() read it.
  virtual MixedStrategy act(std::int64_t t, const MixedStrategy* opponent) = 0;
  virtual void observe(std::size_t own_action, std::size_t opp_action, double reward) = 0;
  virtual void reset(std::uint64_t seed) = 0;
  virtual bool needs_opponent_strategy() const { return false; }
};

enum class Seat { kColumn, kRow };

// Everything the factory may need about the true game. Scripted opponents
// (nash, best_response) are the only agents that read `truth`.
struct SeatContext {
  Seat seat = Seat::kColumn;
  const PayoffMatrix* truth = nullptr;  // A, never mirrored
  std::int64_t horizon = 1000;
  double noise_var = 1.0;
};

std::unique_ptr<Agent> make_agent(const AgentSpec& spec, const SeatContext& ctx);

// Seats a maximizer-frame agent at either side of A. At the row seat the
// agent plays the column role of -A^T: observations (i, j, r) arrive as
// (own = i, opp = j, reward = -r).
class SeatedAgent {
 public:
  SeatedAgent(std::unique_ptr<Agent> agent, Seat seat)
      : agent_(std::move(agent)), seat_(seat) {}

  Seat seat() const { return seat_; }
  Agent& agent() { return *agent_; }
  MixedStrategy act(std::int64_t t, const MixedStrategy* opponent) {
    return agent_->act(t, opponent);
  }
  void observe(std::size_t i, std::size_t j, double r) {
    if (seat_ == Seat::kColumn)
      agent_->observe(j, i, r);
    else
      agent_->observe(i, j, -r);
  }
  bool needs_opponent_strategy() const { return agent_->needs_opponent_strategy(); }

 private:
  std::unique_ptr<Agent> agent_;
  Seat seat_;
};

}  // namespace mgl
