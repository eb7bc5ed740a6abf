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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mgl/harness.hpp"
#include "mgl/io.hpp"
#include "mgl/presets.hpp"
#include "mgl/validate.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Flags {
  std::string agent = "klearn";
  std::string agent2 = "exp3";
  std::string opponent;
  std::int64_t horizon = mgl::kDefaultHorizon;
  std::size_t seeds = mgl::kDefaultSeeds;
  double noise_var = 1.0;
  std::optional<double> prior_mean, prior_var;
  std::optional<std::size_t> m, k;
  std::optional<double> tol;
  std::string out = "out";
  std::uint64_t seed_base = 0;
  int jobs = 0;
  std::string matrix;
  std::string config;
  std::vector<double> strategy;
  std::optional<std::uint64_t> game_seed;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--horizon", f.horizon, "rounds per episode")->capture_default_str();
  sub->add_option("--seeds", f.seeds, "number of seeds")->capture_default_str();
  sub->add_option("--seed-base", f.seed_base, "first seed")->capture_default_str();
  sub->add_option("--noise-var", f.noise_var, "reward noise variance")->capture_default_str();
  sub->add_option("--prior-mean", f.prior_mean, "learner prior mean");
  sub->add_option("--prior-var", f.prior_var, "learner prior variance");
  sub->add_option("--tol", f.tol, "K-learning solver tolerance");
  sub->add_option("--out", f.out, "output directory")->capture_default_str();
  sub->add_option("--jobs", f.jobs, "worker threads (0: all)")->capture_default_str();
}

void apply_common(mgl::RunConfig& c, const Flags& f) {
  c.horizon = f.horizon;
  c.seeds = mgl::seed_range(f.seed_base, f.seeds);
  c.noise_var = f.noise_var;
  c.output_dir = f.out;
  c.jobs = f.jobs;
  for (mgl::AgentSpec* a : {&c.column, &c.row}) {
    const auto& learners = mgl::learner_names();
    if (std::find(learners.begin(), learners.end(), a->name) == learners.end()) continue;
    if (f.prior_mean) a->prior.mean = *f.prior_mean;
    if (f.prior_var) a->prior.var = *f.prior_var;
    if (f.tol) a->tol = *f.tol;
  }
}

// "a,b;c,d" -> [[a, b], [c, d]]
mgl::Matrix parse_matrix(const std::string& s) {
  std::vector<std::vector<double>> rows;
  std::stringstream rs(s);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::vector<double> r;
    std::stringstream es(row);
    std::string e;
    while (std::getline(es, e, ',')) {
      try {
        std::size_t used = 0;
        r.push_back(std::stod(e, &used));
        if (used != e.size()) throw std::invalid_argument(e);
      } catch (const std::exception&) {
        throw mgl::InvalidInput("bad matrix entry '" + e + "'");
      }
    }
    rows.push_back(std::move(r));
  }
  return mgl::Matrix::from_rows(rows);
}

void check_agent(const std::string& name) {
  const auto& all = mgl::agent_names();
  if (std::find(all.begin(), all.end(), name) != all.end()) return;
  std::string list;
  for (const auto& n : all) list += (list.empty() ? "" : ", ") + n;
  throw mgl::InvalidInput("unknown agent '" + name + "'; valid options: " + list);
}

int run(const mgl::RunConfig& cfg) {
  cfg.validate();
  const auto episodes = mgl::run_seeds(cfg);
  const auto paths = mgl::write_artifacts(cfg, episodes, cfg.output_dir);
  std::cout << mgl::summary_table(mgl::summary_json(cfg, episodes));
  std::cout << "wrote " << paths.csv.string() << "\n      " << paths.summary.string() << '\n';
  return 0;
}

int validate(std::uint64_t seed) {
  bool all = true;
  for (const auto& r : mgl::run_validation(seed)) {
    std::printf("%-30s passed %5zu  failed %5zu  worst %.3g%s%s\n", r.name.c_str(), r.passed,
                r.failed, r.worst, r.note.empty() ? "" : "  ", r.note.c_str());
    all = all && r.ok();
  }
  return all ? 0 : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learning in zero-sum matrix games with bandit feedback"};
  app.require_subcommand(1);
  Flags f;

  auto* selfplay = app.add_subcommand("rps-selfplay", "rock-paper-scissors, same learner in both seats");
  auto* br = app.add_subcommand("rps-br", "rock-paper-scissors against a best responder");
  auto* h2h = app.add_subcommand("rps-h2h", "rock-paper-scissors, --agent vs --agent2");
  auto* cex = app.add_subcommand("counterexample", "2x2 game where sampling is exploitable");
  auto* robust = app.add_subcommand("robust-bandit", "10 actions x 5 outcomes vs nature or a best responder");
  auto* custom = app.add_subcommand("custom", "explicit matrix, random game or JSON config");
  auto* val = app.add_subcommand("validate", "oracle and invariant checks");

  for (auto* s : {selfplay, br, h2h, cex, robust, custom}) {
    add_common(s, f);
    s->add_option("--agent", f.agent, "learner (maximizer seat)")->capture_default_str();
  }
  h2h->add_option("--agent2", f.agent2, "learner in the minimizer seat")->capture_default_str();
  robust->add_option("--opponent", f.opponent, "nature | best_response")->default_str("nature");
  robust->add_option("--m", f.m, "outcomes");
  robust->add_option("--k", f.k, "agent actions");
  robust->add_option("--game-seed", f.game_seed, "play one shared game drawn from this seed");
  custom->add_option("--opponent", f.opponent, "minimizer-seat agent")->default_str("nash");
  custom->add_option("--matrix", f.matrix, "payoff matrix as 'a,b;c,d'");
  custom->add_option("--m", f.m, "rows of a random Gaussian game");
  custom->add_option("--k", f.k, "columns of a random Gaussian game");
  custom->add_option("--game-seed", f.game_seed, "play one shared game drawn from this seed");
  custom->add_option("--strategy", f.strategy, "strategy for a fixed opponent")->delimiter(',');
  custom->add_option("--config", f.config, "RunConfig JSON file (other flags ignored)");
  val->add_option("--seed-base", f.seed_base, "seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    mgl::RunConfig cfg;
    if (*val) return validate(f.seed_base);
    if (*selfplay) {
      cfg = mgl::rps_selfplay(f.agent);
    } else if (*br) {
      cfg = mgl::rps_vs_best_response(f.agent);
    } else if (*h2h) {
      cfg = mgl::rps_head_to_head(f.agent, f.agent2);
    } else if (*cex) {
      cfg = mgl::counterexample_2x2(f.agent);
    } else if (*robust) {
      cfg = mgl::robust_bandit(f.agent, mgl::robust_opponent_from(f.opponent.empty() ? "nature" : f.opponent));
      if (f.m) cfg.game.m = *f.m;
      if (f.k) cfg.game.k = *f.k;
      cfg.game.game_seed = f.game_seed;
    } else if (*custom) {
      if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) throw mgl::InvalidInput("cannot read config " + f.config);
        cfg = nlohmann::json::parse(in).get<mgl::RunConfig>();
        return run(cfg);
      }
      check_agent(f.agent);
      cfg.experiment = "custom";
      cfg.column.name = f.agent;
      cfg.row.name = f.opponent.empty() ? "nash" : f.opponent;
      check_agent(cfg.row.name);
      cfg.row.strategy = f.strategy;
      if (!f.matrix.empty()) {
        cfg.game.kind = mgl::GameSpec::Kind::kMatrix;
        cfg.game.matrix = parse_matrix(f.matrix);
      } else {
        cfg.game.kind = mgl::GameSpec::Kind::kGaussian;
        cfg.game.m = f.m.value_or(3);
        cfg.game.k = f.k.value_or(3);
        cfg.game.game_seed = f.game_seed;
      }
    }
    apply_common(cfg, f);
    return run(cfg);
  } catch (const mgl::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: bad config: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
