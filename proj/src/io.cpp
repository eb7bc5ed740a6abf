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

#include "mgl/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace mgl {
namespace {

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(std::span<const double> p) {
  std::string s;
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (a) s += ';';
    s += fmt(p[a]);
  }
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
    throw InvalidInput("csv line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

std::uint64_t parse_uint(const std::string& s, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  const auto v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || s[0] == '-' || end != s.c_str() + s.size() || errno == ERANGE)
    throw InvalidInput("csv line " + std::to_string(line) + ": bad integer '" + s + "'");
  return v;
}

MixedStrategy parse_strategy(const std::string& s, std::size_t line) {
  std::vector<double> p;
  for (const auto& tok : split(s, ';')) p.push_back(parse_double(tok, line));
  try {
    return MixedStrategy(std::move(p));
  } catch (const InvalidInput&) {
    throw InvalidInput("csv line " + std::to_string(line) + ": strategy off the simplex");
  }
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nan("");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

nlohmann::json nullable(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

std::vector<double> vec(const MixedStrategy& p) { return {p.probs().begin(), p.probs().end()}; }

}  // namespace

const std::string& csv_header() {
  static const std::string h =
      "seed,t,i,j,r,x_probs,y_probs,expected_payoff,v_star,abs_regret_cum,"
      "signed_regret_cum,kl_x,kl_y";
  return h;
}

std::string csv_row(const StepRecord& s) {
  std::string row = std::to_string(s.seed) + ',' + std::to_string(s.t) + ',' +
                    std::to_string(s.i) + ',' + std::to_string(s.j) + ',' + fmt(s.r) + ',' +
                    join(s.x.probs()) + ',' + join(s.y.probs()) + ',' +
                    fmt(s.expected_payoff) + ',' + fmt(s.v_star) + ',' +
                    fmt(s.abs_regret_cum) + ',' + fmt(s.signed_regret_cum) + ',' +
                    fmt(s.kl_x) + ',' + fmt(s.kl_y);
  return row;
}

void write_csv(std::ostream& out, const std::vector<Episode>& episodes) {
  out << csv_header() << '\n';
  for (const auto& e : episodes)
    for (const auto& s : e.steps) out << csv_row(s) << '\n';
}

std::vector<StepRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("csv is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != csv_header()) throw InvalidInput("csv line 1: unexpected header");
  std::vector<StepRecord> out;
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 13)
      throw InvalidInput("csv line " + std::to_string(n) + ": expected 13 fields, got " +
                         std::to_string(f.size()));
    StepRecord s;
    s.seed = parse_uint(f[0], n);
    s.t = static_cast<std::int64_t>(parse_uint(f[1], n));
    s.i = parse_uint(f[2], n);
    s.j = parse_uint(f[3], n);
    s.r = parse_double(f[4], n);
    s.x = parse_strategy(f[5], n);
    s.y = parse_strategy(f[6], n);
    s.expected_payoff = parse_double(f[7], n);
    s.v_star = parse_double(f[8], n);
    s.abs_regret_cum = parse_double(f[9], n);
    s.signed_regret_cum = parse_double(f[10], n);
    s.kl_x = parse_double(f[11], n);
    s.kl_y = parse_double(f[12], n);
    out.push_back(std::move(s));
  }
  return out;
}

nlohmann::json summary_json(const RunConfig& cfg, const std::vector<Episode>& episodes) {
  if (episodes.empty()) throw InvalidInput("summary needs at least one episode");
  nlohmann::json j;
  j["code_version"] = kCodeVersion;
  j["config"] = cfg;

  auto seeds = nlohmann::json::array();
  std::vector<double> abs_final, signed_final, kl_x, kl_y, hindsight;
  std::map<std::string, std::vector<double>> signed_by_r;
  for (const auto& e : episodes) {
    const StepRecord& last = e.steps.back();
    const auto neg = negative_return_stats(e.steps);
    const double hr = hindsight_regret(e.steps, e.game);
    seeds.push_back({{"seed", e.seed},
                     {"game", e.game.entries()},
                     {"v_star", e.solution.value},
                     {"x_star", vec(e.solution.x_star)},
                     {"y_star", vec(e.solution.y_star)},
                     {"abs_regret_cum", last.abs_regret_cum},
                     {"signed_regret_cum", last.signed_regret_cum},
                     {"hindsight_regret", hr},
                     {"kl_x", nullable(last.kl_x)},
                     {"kl_y", nullable(last.kl_y)},
                     {"negative_fraction", neg.fraction},
                     {"mean_return", neg.mean}});
    abs_final.push_back(last.abs_regret_cum);
    signed_final.push_back(last.signed_regret_cum);
    hindsight.push_back(hr);
    if (std::isfinite(last.kl_x)) kl_x.push_back(last.kl_x);
    if (std::isfinite(last.kl_y)) kl_y.push_back(last.kl_y);
    if (cfg.game.kind == GameSpec::Kind::kCounterexample)
      signed_by_r["r=" + fmt(e.game.entries()(0, 0))].push_back(last.signed_regret_cum);
  }
  j["seeds"] = seeds;

  const auto pooled = negative_return_stats(episodes);
  const double horizon = static_cast<double>(cfg.horizon);
  nlohmann::json p;
  p["seeds"] = episodes.size();
  p["mean_abs_regret_cum"] = mean_of(abs_final);
  p["mean_signed_regret_cum"] = mean_of(signed_final);
  p["mean_signed_regret_per_round"] = mean_of(signed_final) / horizon;
  p["mean_hindsight_regret"] = mean_of(hindsight);
  p["mean_kl_x"] = nullable(mean_of(kl_x));
  p["mean_kl_y"] = nullable(mean_of(kl_y));
  p["kl_x_excluded"] = episodes.size() - kl_x.size();
  p["kl_y_excluded"] = episodes.size() - kl_y.size();
  p["negative_fraction"] = pooled.fraction;
  p["mean_return"] = pooled.mean;
  j["pooled"] = p;

  if (!signed_by_r.empty()) {
    nlohmann::json by_r;
    for (const auto& [r, v] : signed_by_r)
      by_r[r] = {{"seeds", v.size()},
                 {"mean_signed_regret_cum", mean_of(v)},
                 {"mean_signed_regret_per_round", mean_of(v) / horizon}};
    j["by_r"] = by_r;
  }
  return j;
}

std::string summary_table(const nlohmann::json& s) {
  const auto& c = s.at("config");
  const auto& p = s.at("pooled");
  auto num = [](const nlohmann::json& v) {
    if (v.is_null()) return std::string("n/a");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v.get<double>());
    return std::string(buf);
  };
  std::ostringstream out;
  out << "experiment  " << c.at("experiment").get<std::string>() << "  ("
      << c.at("column").at("name").get<std::string>() << " vs "
      << c.at("row").at("name").get<std::string>() << ", T=" << c.at("horizon") << ", "
      << p.at("seeds") << " seeds)\n";
  out << "  mean abs regret      " << num(p.at("mean_abs_regret_cum")) << '\n';
  out << "  mean signed regret   " << num(p.at("mean_signed_regret_cum")) << '\n';
  out << "  mean hindsight       " << num(p.at("mean_hindsight_regret")) << '\n';
  out << "  KL(x_T||x*)          " << num(p.at("mean_kl_x")) << "  (excluded "
      << p.at("kl_x_excluded") << ")\n";
  out << "  KL(y_T||y*)          " << num(p.at("mean_kl_y")) << "  (excluded "
      << p.at("kl_y_excluded") << ")\n";
  out << "  % returns < 0        " << num(nlohmann::json(100.0 * p.at("negative_fraction").get<double>()))
      << '\n';
  out << "  mean return          " << num(p.at("mean_return")) << '\n';
  if (s.contains("by_r"))
    for (const auto& [r, v] : s.at("by_r").items())
      out << "  " << r << "  seeds " << v.at("seeds") << "  mean signed regret "
          << num(v.at("mean_signed_regret_cum")) << '\n';
  return out.str();
}

ArtifactPaths write_artifacts(const RunConfig& cfg, const std::vector<Episode>& episodes,
                              const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::string stem = cfg.experiment + "_" + cfg.column.name + "_vs_" + cfg.row.name;
  ArtifactPaths paths{dir / (stem + ".csv"), dir / (stem + ".json")};
  std::ofstream csv(paths.csv);
  if (!csv) throw std::runtime_error("cannot write " + paths.csv.string());
  write_csv(csv, episodes);
  std::ofstream js(paths.summary);
  if (!js) throw std::runtime_error("cannot write " + paths.summary.string());
  js << summary_json(cfg, episodes).dump(2) << '\n';
  if (!csv || !js) throw std::runtime_error("write failed in " + dir.string());
  return paths;
}

}  // namespace mgl
