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
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mgl/agents.hpp"
#include "mgl/belief.hpp"
#include "mgl/types.hpp"

namespace mgl {

// How the true matrix of each seed is produced.
struct GameSpec {
  enum class Kind { kMatrix, kGaussian, kUniform, kCounterexample };
  Kind kind = Kind::kMatrix;
  Matrix matrix;          // kMatrix
  double mean = 0.0;      // kGaussian
  double var = 1.0;       // kGaussian (variance, not standard deviation)
  double lo = 0.0;        // kUniform
  double hi = 1.0;        // kUniform
  std::size_t m = 1;      // kGaussian, kUniform
  std::size_t k = 1;
  double counterexample_r = 0.0;  // kCounterexample: +-1 fixes r, 0 draws it per seed
  // Random kinds: when set, every run seed plays the one game drawn from this
  // seed instead of its own.
  std::optional<std::uint64_t> game_seed;

  std::size_t rows() const;
  std::size_t cols() const;
  PayoffMatrix make_game(std::uint64_t seed) const;
  bool operator==(const GameSpec&) const = default;
};

// [[r, 0], [0, -1]].
PayoffMatrix counterexample_matrix(double r);
PayoffMatrix rps_matrix();

struct RunConfig {
  std::string experiment = "custom";
  GameSpec game;
  AgentSpec column;  // maximizer, receives A_ij
  AgentSpec row;     // minimizer
  std::int64_t horizon = 1000;
  double noise_var = 1.0;
  std::vector<std::uint64_t> seeds;
  std::string output_dir = ".";
  int jobs = 0;  // 0: OpenMP default

  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

std::vector<std::uint64_t> seed_range(std::uint64_t base, std::size_t count);

void to_json(nlohmann::json& j, const Matrix& m);
void from_json(const nlohmann::json& j, Matrix& m);
void to_json(nlohmann::json& j, const PriorSpec& p);
void from_json(const nlohmann::json& j, PriorSpec& p);
void to_json(nlohmann::json& j, const AgentSpec& a);
void from_json(const nlohmann::json& j, AgentSpec& a);
void to_json(nlohmann::json& j, const GameSpec& g);
void from_json(const nlohmann::json& j, GameSpec& g);
void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

// Checkpoint of a belief: shape, noise, and row-major entry arrays.
nlohmann::json belief_to_json(const BeliefState& b);
BeliefState belief_from_json(const nlohmann::json& j);

}  // namespace mgl
