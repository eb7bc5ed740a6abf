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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "mgl/config.hpp"
#include "mgl/harness.hpp"

namespace mgl {

inline constexpr const char* kCodeVersion = "0.1.0";

// seed,t,i,j,r,x_probs,y_probs,expected_payoff,v_star,abs_regret_cum,
// signed_regret_cum,kl_x,kl_y. Strategies are ';'-joined, reals printed
// with 17 significant digits, infinite KL as "inf".
const std::string& csv_header();
std::string csv_row(const StepRecord& s);
void write_csv(std::ostream& out, const std::vector<Episode>& episodes);
// Throws InvalidInput on a bad header or malformed line (1-based line number
// in the message).
std::vector<StepRecord> read_csv(std::istream& in);

// Config echo, per-seed finals (with the true matrix), pooled statistics.
nlohmann::json summary_json(const RunConfig& cfg, const std::vector<Episode>& episodes);
// Human-readable table of a summary.
std::string summary_table(const nlohmann::json& summary);

struct ArtifactPaths {
  std::filesystem::path csv;
  std::filesystem::path summary;
};

// <dir>/<experiment>_<column>_vs_<row>.csv and the matching .json.
ArtifactPaths write_artifacts(const RunConfig& cfg, const std::vector<Episode>& episodes,
                              const std::filesystem::path& dir);

}  // namespace mgl
