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

#include "mgl/agents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mgl {
namespace {

std::size_t argmax_lowest(std::span<const double> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

std::string join_names(const std::vector<std::string>& names) {
  std::ostringstream os;
  for (std::size_t i = 0; i < names.size(); ++i) os << (i ? ", " : "") << names[i];
  return os.str();
}

class UcbAgent : public Agent {
 public:
  UcbAgent(std::size_t opp, std::size_t own, std::int64_t horizon, double noise_var)
      : opp_(opp), own_(own), noise_var_(noise_var),
        params_(UcbParams::for_horizon(horizon, opp, own)),
        belief_(opp, own, 0.0, 1.0, noise_var) {}
  std::string name() const override { return "ucb"; }
  MixedStrategy act(std::int64_t, const MixedStrategy*) override {
    return ucb_agent_act(belief_, params_);
  }
  void observe(std::size_t own, std::size_t opp, double r) override {
    belief_.observe(opp, own, r);
  }
  void reset(std::uint64_t) override { belief_ = BeliefState(opp_, own_, 0.0, 1.0, noise_var_); }

 private:
  std::size_t opp_, own_;
  double noise_var_;
  UcbParams params_;
  BeliefState belief_;
};

class ThompsonAgent : public Agent {
 public:
  explicit ThompsonAgent(BeliefState prior) : prior_(prior), belief_(std::move(prior)) {}
  std::string name() const override { return "ts"; }
  MixedStrategy act(std::int64_t, const MixedStrategy*) override {
    return ts_agent_act(belief_, rng_);
  }
  void observe(std::size_t own, std::size_t opp, double r) override {
    belief_.observe(opp, own, r);
  }
  void reset(std::uint64_t seed) override {
    belief_ = prior_;
    rng_ = make_rng(seed, 0);
  }

 private:
  BeliefState prior_;
  BeliefState belief_;
  Rng rng_;
};

class KLearnAgent : public Agent {
 public:
  KLearnAgent(BeliefState prior, double tol)
      : prior_(prior), belief_(std::move(prior)), tol_(tol) {}
  std::string name() const override { return "klearn"; }
  MixedStrategy act(std::int64_t, const MixedStrategy*) override {
    last_ = klearn::solve(belief_, tol_, {}, last_ ? &*last_ : nullptr);
    return last_->x_star;
  }
  void observe(std::size_t own, std::size_t opp, double r) override {
    belief_.observe(opp, own, r);
  }
  void reset(std::uint64_t) override {
    belief_ = prior_;
    last_.reset();
  }

 private:
  BeliefState prior_;
  BeliefState belief_;
  double tol_;
  std::optional<klearn::Solution> last_;
};

class Exp3Agent : public Agent {
 public:
  explicit Exp3Agent(std::size_t own) : own_(own), state_(own) {}
  std::string name() const override { return "exp3"; }
  MixedStrategy act(std::int64_t, const MixedStrategy*) override {
    last_ = exp3_agent_act(state_);
    return last_;
  }
  void observe(std::size_t own, std::size_t, double r) override {
    state_ = exp3_agent_observe(std::move(state_), own, r, last_);
  }
  void reset(std::uint64_t) override { state_ = Exp3State(own_); }

 private:
  std::size_t own_;
  Exp3State state_;
  MixedStrategy last_;
};

class NaiveUcbAgent : public Agent {
 public:
  explicit NaiveUcbAgent(std::size_t own) : own_(own), stats_(own) {}
  std::string name() const override { return "naive_ucb"; }
  MixedStrategy act(std::int64_t t, const MixedStrategy*) override {
    return naive_ucb_act(stats_, t);
  }
  void observe(std::size_t own, std::size_t, double r) override { stats_.observe(own, r); }
  void reset(std::uint64_t) override { stats_ = ArmStats(own_); }

 private:
  std::size_t own_;
  ArmStats stats_;
};

class NaiveTsAgent : public Agent {
 public:
  NaiveTsAgent(std::size_t own, double prior_mean, double prior_var, double noise_var)
      : own_(own), prior_mean_(prior_mean), prior_var_(prior_var),
        noise_var_(noise_var), stats_(own) {}
  std::string name() const override { return "naive_ts"; }
  MixedStrategy act(std::int64_t, const MixedStrategy*) override {
    return naive_ts_act(stats_, prior_mean_, prior_var_, noise_var_, rng_);
  }
  void observe(std::size_t own, std::size_t, double r) override { stats_.observe(own, r); }
  void reset(std::uint64_t seed) override {
    stats_ = ArmStats(own_);
    rng_ = make_rng(seed, 0);
  }

 private:
  std::size_t own_;
  double prior_mean_, prior_var_, noise_var_;
  ArmStats stats_;
  Rng rng_;
};

// Knows the true matrix (in its own frame: rows = opponent actions) and
// best-responds to the strategy the opponent announced this round.
class BestResponseAgent : public Agent {
 public:
  explicit BestResponseAgent(const PayoffMatrix& frame)
      : response_(PayoffMatrix(-frame.entries().transposed())) {}
  std::string name() const override { return "best_response"; }
  MixedStrategy act(std::int64_t, const MixedStrategy* opponent) override {
    if (opponent == nullptr)
      throw InvalidInput("best_response needs the opponent's announced strategy");
    return best_response_opponent_act(response_, *opponent);
  }
  void observe(std::size_t, std::size_t, double) override {}
  void reset(std::uint64_t) override {}
  bool needs_opponent_strategy() const override { return true; }

 private:
  PayoffMatrix response_;  // -frame^T: rows are own actions, minimized
};

class FixedAgent : public Agent {
 public:
  FixedAgent(std::string name, MixedStrategy s) : name_(std::move(name)), s_(std::move(s)) {}
  std::string name() const override { return name_; }
  MixedStrategy act(std::int64_t, const MixedStrategy*) override { return s_; }
  void observe(std::size_t, std::size_t, double) override {}
  void reset(std::uint64_t) override {}

 private:
  std::string name_;
  MixedStrategy s_;
};

// Redraws a uniform simplex point at rounds 1, period + 1, 2 period + 1, ...
class NatureAgent : public Agent {
 public:
  NatureAgent(std::size_t own, std::int64_t period) : own_(own), period_(period) {
    if (period < 1) throw InvalidInput("nature period must be >= 1");
  }
  std::string name() const override { return "nature"; }
  MixedStrategy act(std::int64_t t, const MixedStrategy*) override {
    if (current_.size() == 0 || (t - 1) % period_ == 0) current_ = sample_simplex(own_, rng_);
    return current_;
  }
  void observe(std::size_t, std::size_t, double) override {}
  void reset(std::uint64_t seed) override {
    rng_ = make_rng(seed, 0);
    current_ = MixedStrategy();
  }

 private:
  std::size_t own_;
  std::int64_t period_;
  Rng rng_;
  MixedStrategy current_;
};

}  // namespace

MixedStrategy ucb_agent_act(const BeliefState& b, const UcbParams& p) {
  return solve_zero_sum(ucb_matrix(b, p)).x_star;
}

MixedStrategy ts_agent_act(const BeliefState& b, Rng& rng) {
  return solve_zero_sum(sample_matrix(b, rng)).x_star;
}

MixedStrategy klearn_agent_act(const BeliefState& b, double tol) {
  return klearn::solve(b, tol).x_star;
}

double exp3_gamma(std::size_t k, std::int64_t t) {
  const double kk = static_cast<double>(k);
  return std::min(std::sqrt(kk * std::log(kk) / static_cast<double>(t)), 1.0);
}

double exp3_rho(std::size_t k, std::int64_t t) {
  const double kk = static_cast<double>(k);
  return std::sqrt(2.0 * std::log(kk) / (static_cast<double>(t) * kk));
}

MixedStrategy exp3_agent_act(const Exp3State& s) {
  if (s.round < 1) throw InvalidInput("Exp3 round must be >= 1");
  const std::size_t k = s.cum_est.size();
  const double gamma = exp3_gamma(k, s.round);
  const double rho = exp3_rho(k, s.round);
  const double top = *std::max_element(s.cum_est.begin(), s.cum_est.end());
  std::vector<double> w(k);
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    w[i] = std::exp(rho * (s.cum_est[i] - top));
    sum += w[i];
  }
  for (double& wi : w) wi = gamma / static_cast<double>(k) + (1.0 - gamma) * wi / sum;
  return MixedStrategy::from_weights(std::move(w));
}

Exp3State exp3_agent_observe(Exp3State s, std::size_t action, double reward,
                             const MixedStrategy& x_played) {
  if (action >= s.cum_est.size() || x_played.size() != s.cum_est.size())
    throw InvalidInput("Exp3 observation does not match the action set");
  if (!(x_played[action] > 0.0))
    throw InvalidInput("Exp3 realized an action it gave zero probability");
  if (!std::isfinite(reward)) throw InvalidInput("Exp3 reward must be finite");
  s.cum_est[action] += reward / x_played[action];
  ++s.round;
  return s;
}

void ArmStats::observe(std::size_t arm, double reward) {
  if (arm >= counts.size()) throw InvalidInput("arm index out of range");
  ++counts[arm];
  means[arm] += (reward - means[arm]) / static_cast<double>(counts[arm]);
}

MixedStrategy naive_ucb_act(const ArmStats& s, std::int64_t t) {
  const double log_t = std::log(static_cast<double>(std::max<std::int64_t>(t, 1)));
  std::vector<double> index(s.counts.size());
  for (std::size_t a = 0; a < index.size(); ++a) {
    const double n = std::max<double>(1.0, static_cast<double>(s.counts[a]));
    index[a] = s.means[a] + std::sqrt(2.0 * log_t / n);
  }
  return MixedStrategy::point_mass(index.size(), argmax_lowest(index));
}

MixedStrategy naive_ts_act(const ArmStats& s, double prior_mean, double prior_var,
                           double noise_var, Rng& rng) {
  std::vector<double> draw(s.counts.size());
  for (std::size_t a = 0; a < draw.size(); ++a) {
    const double n = static_cast<double>(s.counts[a]);
    const double var = std::max(1.0 / (1.0 / prior_var + n / noise_var), kVarianceFloor);
    const double mean = var * (prior_mean / prior_var + n * s.means[a] / noise_var);
    std::normal_distribution<double> dist(mean, std::sqrt(var));
    draw[a] = dist(rng);
  }
  return MixedStrategy::point_mass(draw.size(), argmax_lowest(draw));
}

MixedStrategy best_response_opponent_act(const PayoffMatrix& a, const MixedStrategy& x) {
  return MixedStrategy::point_mass(a.m(), best_response_row(a, x).row);
}

MixedStrategy sample_simplex(std::size_t n, Rng& rng) {
  std::vector<double> g(n);
  for (double& v : g) {
    std::exponential_distribution<double> exp1(1.0);
    v = exp1(rng);
  }
  return MixedStrategy::from_weights(std::move(g));
}

BeliefState PriorSpec::make_belief(std::size_t m, std::size_t k, double noise_var) const {
  Matrix pm = means ? *means : Matrix(m, k, mean);
  Matrix pv = vars ? *vars : Matrix(m, k, var);
  if (pm.rows() != m || pm.cols() != k || pv.rows() != m || pv.cols() != k)
    throw InvalidInput("prior matrices do not match the game dimensions");
  BeliefState b(std::move(pm), std::move(pv), noise_var);
  for (const auto& e : two_point) b.set_two_point_prior(e.i, e.j, e.prior);
  return b;
}

PriorSpec PriorSpec::mirrored() const {
  PriorSpec out;
  out.mean = -mean;
  out.var = var;
  if (means) out.means = -means->transposed();
  if (vars) out.vars = vars->transposed();
  for (const auto& e : two_point)
    out.two_point.push_back({e.j, e.i, {-e.prior.hi, -e.prior.lo, 1.0 - e.prior.p_hi}});
  return out;
}

const std::vector<std::string>& agent_names() {
  static const std::vector<std::string> names = {
      "ucb", "ts", "klearn", "exp3", "naive_ucb", "naive_ts",
      "nash", "fixed", "nature", "best_response"};
  return names;
}

const std::vector<std::string>& learner_names() {
  static const std::vector<std::string> names = {"ucb",  "ts",        "klearn",
                                                 "exp3", "naive_ucb", "naive_ts"};
  return names;
}

std::unique_ptr<Agent> make_agent(const AgentSpec& spec, const SeatContext& ctx) {
  if (ctx.truth == nullptr) throw InvalidInput("make_agent needs the game");
  const PayoffMatrix frame = ctx.seat == Seat::kColumn ? *ctx.truth : ctx.truth->mirrored();
  const std::size_t opp = frame.m();
  const std::size_t own = frame.k();
  const PriorSpec prior = ctx.seat == Seat::kColumn ? spec.prior : spec.prior.mirrored();

  const std::string& n = spec.name;
  if (n == "ucb") return std::make_unique<UcbAgent>(opp, own, ctx.horizon, ctx.noise_var);
  if (n == "ts")
    return std::make_unique<ThompsonAgent>(prior.make_belief(opp, own, ctx.noise_var));
  if (n == "klearn") {
    if (!(spec.tol > 0.0)) throw InvalidInput("klearn tolerance must be positive");
    return std::make_unique<KLearnAgent>(prior.make_belief(opp, own, ctx.noise_var), spec.tol);
  }
  if (n == "exp3") return std::make_unique<Exp3Agent>(own);
  if (n == "naive_ucb") return std::make_unique<NaiveUcbAgent>(own);
  if (n == "naive_ts")
    return std::make_unique<NaiveTsAgent>(own, prior.mean, prior.var, ctx.noise_var);
  if (n == "best_response") return std::make_unique<BestResponseAgent>(frame);
  if (n == "nash") {
    const GameSolution sol = solve_zero_sum(*ctx.truth);
    return std::make_unique<FixedAgent>(
        "nash", ctx.seat == Seat::kColumn ? sol.x_star : sol.y_star);
  }
  if (n == "fixed") {
    if (spec.strategy.size() != own)
      throw InvalidInput("fixed strategy needs " + std::to_string(own) + " entries");
    return std::make_unique<FixedAgent>("fixed", MixedStrategy(spec.strategy));
  }
  if (n == "nature") return std::make_unique<NatureAgent>(own, spec.period);
  throw InvalidInput("unknown agent '" + n + "'; valid options: " + join_names(agent_names()));
}

}  // namespace mgl
