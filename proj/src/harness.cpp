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

#include "mgl/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>

#include <omp.h>

#include "mgl/agents.hpp"
#include "mgl/rng.hpp"

namespace mgl {
namespace {

constexpr std::uint64_t kNoiseStream = 2;
constexpr std::uint64_t kColumnAgentStream = 3;
constexpr std::uint64_t kRowAgentStream = 4;
constexpr std::uint64_t kColumnActionStream = 5;
constexpr std::uint64_t kRowActionStream = 6;

std::size_t sample_action(const MixedStrategy& p, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  double cum = 0.0;
  std::size_t last = 0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p[a] <= 0.0) continue;
    last = a;
    cum += p[a];
    if (u < cum) return a;
  }
  return last;
}

void accumulate(FieldStats& f, std::size_t t, double v) { f.mean[t] += v; f.std[t] += v * v; }

void finish(FieldStats& f, const std::vector<std::size_t>& n) {
  for (std::size_t t = 0; t < f.mean.size(); ++t) {
    if (n[t] == 0) {
      f.mean[t] = std::numeric_limits<double>::quiet_NaN();
      f.std[t] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const double cnt = static_cast<double>(n[t]);
    const double mu = f.mean[t] / cnt;
    f.mean[t] = mu;
    f.std[t] = std::sqrt(std::max(f.std[t] / cnt - mu * mu, 0.0));
  }
}

void resize(FieldStats& f, std::size_t n) {
  f.mean.assign(n, 0.0);
  f.std.assign(n, 0.0);
}

}  // namespace

Episode run_episode(const RunConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Episode ep;
  ep.seed = seed;
  ep.game = cfg.game.make_game(seed);
  ep.solution = solve_zero_sum(ep.game);
  const PayoffMatrix& a = ep.game;

  SeatContext col_ctx{Seat::kColumn, &a, cfg.horizon, cfg.noise_var};
  SeatContext row_ctx{Seat::kRow, &a, cfg.horizon, cfg.noise_var};
  SeatedAgent col(make_agent(cfg.column, col_ctx), Seat::kColumn);
  SeatedAgent row(make_agent(cfg.row, row_ctx), Seat::kRow);
  if (col.needs_opponent_strategy() && row.needs_opponent_strategy())
    throw InvalidInput("both seats wait for the other's strategy");
  col.agent().reset(derive_seed(seed, kColumnAgentStream));
  row.agent().reset(derive_seed(seed, kRowAgentStream));

  Rng noise_rng = make_rng(seed, kNoiseStream);
  Rng col_action_rng = make_rng(seed, kColumnActionStream);
  Rng row_action_rng = make_rng(seed, kRowActionStream);
  const double noise_sd = std::sqrt(cfg.noise_var);
  const double v_star = ep.solution.value;

  ep.steps.reserve(static_cast<std::size_t>(cfg.horizon));
  double abs_cum = 0.0, signed_cum = 0.0;
  for (std::int64_t t = 1; t <= cfg.horizon; ++t) {
    StepRecord rec;
    rec.seed = seed;
    rec.t = t;
    try {
      if (row.needs_opponent_strategy()) {
        rec.x = col.act(t, nullptr);
        rec.y = row.act(t, &rec.x);
      } else {
        rec.y = row.act(t, nullptr);
        rec.x = col.act(t, &rec.y);
      }
    } catch (const InvalidInput&) {
      throw;
    } catch (const std::exception& e) {
      throw AgentFailure(std::string(e.what()) + " (round " + std::to_string(t) + ")", t);
    }
    if (rec.x.size() != a.k() || rec.y.size() != a.m())
      throw InvalidInput("agent emitted a strategy of the wrong length");

    rec.i = sample_action(rec.y, row_action_rng);
    rec.j = sample_action(rec.x, col_action_rng);
    std::normal_distribution<double> noise(0.0, noise_sd);
    rec.r = a(rec.i, rec.j) + noise(noise_rng);
    col.observe(rec.i, rec.j, rec.r);
    row.observe(rec.i, rec.j, rec.r);

    rec.expected_payoff = expected_payoff(a, rec.x, rec.y);
    rec.v_star = v_star;
    abs_cum += std::abs(v_star - rec.expected_payoff);
    signed_cum += v_star - rec.expected_payoff;
    rec.abs_regret_cum = abs_cum;
    rec.signed_regret_cum = signed_cum;
    rec.kl_x = kl_divergence(rec.x, ep.solution.x_star);
    rec.kl_y = kl_divergence(rec.y, ep.solution.y_star);
    ep.steps.push_back(std::move(rec));
  }
  return ep;
}

std::vector<Episode> run_seeds_serial(const RunConfig& cfg) {
  cfg.validate();
  std::vector<Episode> out;
  out.reserve(cfg.seeds.size());
  for (std::uint64_t s : cfg.seeds) out.push_back(run_episode(cfg, s));
  return out;
}

std::vector<Episode> run_seeds(const RunConfig& cfg) {
  cfg.validate();
  const auto n = static_cast<std::int64_t>(cfg.seeds.size());
  std::vector<Episode> out(cfg.seeds.size());
  std::vector<std::exception_ptr> errors(cfg.seeds.size());
  const int threads = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t s = 0; s < n; ++s) {
    try {
      out[s] = run_episode(cfg, cfg.seeds[s]);
    } catch (...) {
      errors[s] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

Aggregate aggregate(const std::vector<std::vector<StepRecord>>& runs) {
  if (runs.empty()) throw InvalidInput("aggregate needs at least one run");
  const std::size_t len = runs.front().size();
  for (const auto& r : runs)
    if (r.size() != len) throw InvalidInput("aggregate needs runs of equal length");

  Aggregate agg;
  agg.seeds = runs.size();
  for (FieldStats* f : {&agg.r, &agg.expected_payoff, &agg.abs_regret_cum,
                        &agg.signed_regret_cum, &agg.kl_x, &agg.kl_y})
    resize(*f, len);
  agg.kl_x_excluded.assign(len, 0);
  agg.kl_y_excluded.assign(len, 0);
  std::vector<std::size_t> all(len, runs.size()), nx(len, 0), ny(len, 0);

  for (const auto& run : runs) {
    for (std::size_t t = 0; t < len; ++t) {
      const StepRecord& s = run[t];
      accumulate(agg.r, t, s.r);
      accumulate(agg.expected_payoff, t, s.expected_payoff);
      accumulate(agg.abs_regret_cum, t, s.abs_regret_cum);
      accumulate(agg.signed_regret_cum, t, s.signed_regret_cum);
      if (std::isfinite(s.kl_x)) {
        accumulate(agg.kl_x, t, s.kl_x);
        ++nx[t];
      } else {
        ++agg.kl_x_excluded[t];
      }
      if (std::isfinite(s.kl_y)) {
        accumulate(agg.kl_y, t, s.kl_y);
        ++ny[t];
      } else {
        ++agg.kl_y_excluded[t];
      }
    }
  }
  for (FieldStats* f : {&agg.r, &agg.expected_payoff, &agg.abs_regret_cum,
                        &agg.signed_regret_cum})
    finish(*f, all);
  finish(agg.kl_x, nx);
  finish(agg.kl_y, ny);
  return agg;
}

Aggregate aggregate(const std::vector<Episode>& episodes) {
  std::vector<std::vector<StepRecord>> runs;
  runs.reserve(episodes.size());
  for (const auto& e : episodes) runs.push_back(e.steps);
  return aggregate(runs);
}

double hindsight_regret(const std::vector<StepRecord>& steps, const PayoffMatrix& a) {
  if (steps.empty()) throw InvalidInput("hindsight_regret needs at least one round");
  std::vector<double> fixed(a.k(), 0.0);
  double earned = 0.0;
  for (const auto& s : steps) {
    for (std::size_t c = 0; c < a.k(); ++c) fixed[c] += a(s.i, c);
    earned += s.r;
  }
  return *std::max_element(fixed.begin(), fixed.end()) - earned;
}

NegativeReturnStats negative_return_stats(const std::vector<StepRecord>& steps) {
  if (steps.empty()) throw InvalidInput("negative_return_stats needs at least one round");
  std::size_t neg = 0;
  double sum = 0.0;
  for (const auto& s : steps) {
    if (s.expected_payoff < 0.0) ++neg;
    sum += s.expected_payoff;
  }
  const double n = static_cast<double>(steps.size());
  return {static_cast<double>(neg) / n, sum / n};
}

NegativeReturnStats negative_return_stats(const std::vector<Episode>& episodes) {
  std::vector<StepRecord> pooled;
  for (const auto& e : episodes) pooled.insert(pooled.end(), e.steps.begin(), e.steps.end());
  return negative_return_stats(pooled);
}

double pigeonhole_sum(const std::vector<std::vector<double>>& probs,
                      const std::vector<std::size_t>& picks) {
  if (probs.size() != picks.size()) throw InvalidInput("pigeonhole: length mismatch");
  if (probs.empty()) return 0.0;
  const std::size_t q = probs.front().size();
  std::vector<double> counts(q, 0.0);
  double total = 0.0;
  for (std::size_t t = 0; t < probs.size(); ++t) {
    if (probs[t].size() != q || picks[t] >= q)
      throw InvalidInput("pigeonhole: malformed round " + std::to_string(t));
    for (std::size_t i = 0; i < q; ++i) total += probs[t][i] / std::max(1.0, counts[i]);
    counts[picks[t]] += 1.0;
  }
  return total;
}

}  // namespace mgl
