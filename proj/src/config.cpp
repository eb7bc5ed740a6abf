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

#include "mgl/config.hpp"

#include <cmath>
#include <random>

#include "mgl/rng.hpp"

namespace mgl {
namespace {

constexpr std::uint64_t kGameStream = 1;

const char* kind_name(GameSpec::Kind k) {
  switch (k) {
    case GameSpec::Kind::kMatrix: return "matrix";
    case GameSpec::Kind::kGaussian: return "gaussian";
    case GameSpec::Kind::kUniform: return "uniform";
    case GameSpec::Kind::kCounterexample: return "counterexample";
  }
  return "matrix";
}

GameSpec::Kind kind_from(const std::string& s) {
  if (s == "matrix") return GameSpec::Kind::kMatrix;
  if (s == "gaussian") return GameSpec::Kind::kGaussian;
  if (s == "uniform") return GameSpec::Kind::kUniform;
  if (s == "counterexample") return GameSpec::Kind::kCounterexample;
  throw InvalidInput("unknown game kind '" + s +
                     "'; valid options: matrix, gaussian, uniform, counterexample");
}

}  // namespace

PayoffMatrix counterexample_matrix(double r) { return PayoffMatrix{{r, 0.0}, {0.0, -1.0}}; }

PayoffMatrix rps_matrix() { return PayoffMatrix{{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}}; }

std::size_t GameSpec::rows() const {
  switch (kind) {
    case Kind::kMatrix: return matrix.rows();
    case Kind::kCounterexample: return 2;
    default: return m;
  }
}

std::size_t GameSpec::cols() const {
  switch (kind) {
    case Kind::kMatrix: return matrix.cols();
    case Kind::kCounterexample: return 2;
    default: return k;
  }
}

PayoffMatrix GameSpec::make_game(std::uint64_t seed) const {
  Rng rng = make_rng(game_seed.value_or(seed), kGameStream);
  switch (kind) {
    case Kind::kMatrix:
      return PayoffMatrix(matrix);
    case Kind::kGaussian: {
      if (!(var > 0.0)) throw InvalidInput("gaussian game variance must be positive");
      Matrix a(m, k);
      std::normal_distribution<double> dist(mean, std::sqrt(var));
      for (double& v : a.data()) v = dist(rng);
      return PayoffMatrix(std::move(a));
    }
    case Kind::kUniform: {
      if (!(hi > lo)) throw InvalidInput("uniform game needs lo < hi");
      Matrix a(m, k);
      std::uniform_real_distribution<double> dist(lo, hi);
      for (double& v : a.data()) v = dist(rng);
      return PayoffMatrix(std::move(a));
    }
    case Kind::kCounterexample: {
      if (counterexample_r != 0.0) return counterexample_matrix(counterexample_r);
      std::bernoulli_distribution coin(0.5);
      return counterexample_matrix(coin(rng) ? 1.0 : -1.0);
    }
  }
  throw InvalidInput("unknown game kind");
}

void RunConfig::validate() const {
  if (horizon < 1) throw InvalidInput("horizon must be >= 1");
  if (seeds.empty()) throw InvalidInput("at least one seed is required");
  if (!(noise_var > 0.0) || !std::isfinite(noise_var))
    throw InvalidInput("noise variance must be positive");
  if (game.rows() == 0 || game.cols() == 0) throw InvalidInput("game has no actions");
  if (jobs < 0) throw InvalidInput("jobs must be >= 0");
}

std::vector<std::uint64_t> seed_range(std::uint64_t base, std::size_t count) {
  std::vector<std::uint64_t> out(count);
  for (std::size_t s = 0; s < count; ++s) out[s] = base + s;
  return out;
}

void to_json(nlohmann::json& j, const Matrix& m) {
  j = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    j.push_back(std::vector<double>(row.begin(), row.end()));
  }
}

void from_json(const nlohmann::json& j, Matrix& m) {
  m = Matrix::from_rows(j.get<std::vector<std::vector<double>>>());
}

void to_json(nlohmann::json& j, const PriorSpec& p) {
  j = {{"mean", p.mean}, {"var", p.var}};
  if (p.means) j["means"] = *p.means;
  if (p.vars) j["vars"] = *p.vars;
  if (!p.two_point.empty()) {
    auto arr = nlohmann::json::array();
    for (const auto& e : p.two_point)
      arr.push_back({{"i", e.i}, {"j", e.j}, {"lo", e.prior.lo}, {"hi", e.prior.hi},
                     {"p_hi", e.prior.p_hi}});
    j["two_point"] = arr;
  }
}

void from_json(const nlohmann::json& j, PriorSpec& p) {
  p = PriorSpec{};
  p.mean = j.value("mean", 0.0);
  p.var = j.value("var", 1.0);
  if (j.contains("means")) p.means = j.at("means").get<Matrix>();
  if (j.contains("vars")) p.vars = j.at("vars").get<Matrix>();
  if (j.contains("two_point"))
    for (const auto& e : j.at("two_point"))
      p.two_point.push_back({e.at("i").get<std::size_t>(), e.at("j").get<std::size_t>(),
                             {e.at("lo").get<double>(), e.at("hi").get<double>(),
                              e.value("p_hi", 0.5)}});
}

void to_json(nlohmann::json& j, const AgentSpec& a) {
  j = {{"name", a.name}, {"prior", a.prior}, {"tol", a.tol}, {"period", a.period}};
  if (!a.strategy.empty()) j["strategy"] = a.strategy;
}

void from_json(const nlohmann::json& j, AgentSpec& a) {
  a = AgentSpec{};
  a.name = j.at("name").get<std::string>();
  if (j.contains("prior")) a.prior = j.at("prior").get<PriorSpec>();
  a.tol = j.value("tol", 1e-6);
  a.period = j.value("period", std::int64_t{50});
  if (j.contains("strategy")) a.strategy = j.at("strategy").get<std::vector<double>>();
}

void to_json(nlohmann::json& j, const GameSpec& g) {
  j = {{"kind", kind_name(g.kind)}};
  switch (g.kind) {
    case GameSpec::Kind::kMatrix: j["matrix"] = g.matrix; break;
    case GameSpec::Kind::kGaussian:
      j.update({{"mean", g.mean}, {"var", g.var}, {"m", g.m}, {"k", g.k}});
      break;
    case GameSpec::Kind::kUniform:
      j.update({{"lo", g.lo}, {"hi", g.hi}, {"m", g.m}, {"k", g.k}});
      break;
    case GameSpec::Kind::kCounterexample: j["r"] = g.counterexample_r; break;
  }
  if (g.game_seed) j["game_seed"] = *g.game_seed;
}

void from_json(const nlohmann::json& j, GameSpec& g) {
  g = GameSpec{};
  g.kind = kind_from(j.at("kind").get<std::string>());
  switch (g.kind) {
    case GameSpec::Kind::kMatrix: g.matrix = j.at("matrix").get<Matrix>(); break;
    case GameSpec::Kind::kGaussian:
      g.mean = j.value("mean", 0.0);
      g.var = j.value("var", 1.0);
      g.m = j.at("m").get<std::size_t>();
      g.k = j.at("k").get<std::size_t>();
      break;
    case GameSpec::Kind::kUniform:
      g.lo = j.value("lo", 0.0);
      g.hi = j.value("hi", 1.0);
      g.m = j.at("m").get<std::size_t>();
      g.k = j.at("k").get<std::size_t>();
      break;
    case GameSpec::Kind::kCounterexample: g.counterexample_r = j.value("r", 0.0); break;
  }
  if (j.contains("game_seed")) g.game_seed = j.at("game_seed").get<std::uint64_t>();
}

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = {{"experiment", c.experiment}, {"game", c.game},         {"column", c.column},
       {"row", c.row},               {"horizon", c.horizon},   {"noise_var", c.noise_var},
       {"seeds", c.seeds},           {"output_dir", c.output_dir}, {"jobs", c.jobs}};
}

void from_json(const nlohmann::json& j, RunConfig& c) {
  c = RunConfig{};
  c.experiment = j.value("experiment", std::string("custom"));
  c.game = j.at("game").get<GameSpec>();
  c.column = j.at("column").get<AgentSpec>();
  c.row = j.at("row").get<AgentSpec>();
  c.horizon = j.value("horizon", std::int64_t{1000});
  c.noise_var = j.value("noise_var", 1.0);
  c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  c.output_dir = j.value("output_dir", std::string("."));
  c.jobs = j.value("jobs", 0);
}

nlohmann::json belief_to_json(const BeliefState& b) {
  nlohmann::json j;
  j["m"] = b.m();
  j["k"] = b.k();
  j["noise_var"] = b.noise_var();
  std::vector<std::int64_t> counts;
  std::vector<double> emp, pm, pv;
  auto two_point = nlohmann::json::array();
  for (std::size_t i = 0; i < b.m(); ++i) {
    for (std::size_t c = 0; c < b.k(); ++c) {
      counts.push_back(b.count(i, c));
      emp.push_back(b.emp_mean(i, c));
      pm.push_back(b.prior_mean(i, c));
      pv.push_back(b.prior_var(i, c));
      if (b.kind(i, c) == PriorKind::kTwoPoint) {
        const auto& tp = b.two_point(i, c);
        two_point.push_back({{"i", i}, {"j", c}, {"lo", tp.lo}, {"hi", tp.hi}, {"p_hi", tp.p_hi}});
      }
    }
  }
  j["counts"] = counts;
  j["emp_mean"] = emp;
  j["prior_mean"] = pm;
  j["prior_var"] = pv;
  j["two_point"] = two_point;
  return j;
}

BeliefState belief_from_json(const nlohmann::json& j) {
  const auto m = j.at("m").get<std::size_t>();
  const auto k = j.at("k").get<std::size_t>();
  const auto counts = j.at("counts").get<std::vector<std::int64_t>>();
  const auto emp = j.at("emp_mean").get<std::vector<double>>();
  const auto pm = j.at("prior_mean").get<std::vector<double>>();
  const auto pv = j.at("prior_var").get<std::vector<double>>();
  if (counts.size() != m * k || emp.size() != m * k || pm.size() != m * k || pv.size() != m * k)
    throw InvalidInput("belief checkpoint arrays must have m*k entries");
  Matrix mean(m, k), var(m, k);
  std::copy(pm.begin(), pm.end(), mean.data().begin());
  std::copy(pv.begin(), pv.end(), var.data().begin());
  BeliefState b(std::move(mean), std::move(var), j.at("noise_var").get<double>());
  if (j.contains("two_point"))
    for (const auto& e : j.at("two_point"))
      b.set_two_point_prior(e.at("i").get<std::size_t>(), e.at("j").get<std::size_t>(),
                            {e.at("lo").get<double>(), e.at("hi").get<double>(),
                             e.at("p_hi").get<double>()});
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t c = 0; c < k; ++c)
      b.set_statistics(i, c, counts[i * k + c], emp[i * k + c]);
  return b;
}

}  // namespace mgl
