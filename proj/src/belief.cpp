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

#include "mgl/belief.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mgl {
namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(exp(a) + exp(b)) without overflow.
double log_add_exp(double a, double b) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  if (hi == -std::numeric_limits<double>::infinity()) return hi;
  return hi + std::log1p(std::exp(lo - hi));
}

void check_variance(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw InvalidInput(std::string(what) + " must be positive and finite");
}

}  // namespace

BeliefState::BeliefState(std::size_t m, std::size_t k, double prior_mean,
                         double prior_var, double noise_var)
    : BeliefState(Matrix(m, k, prior_mean), Matrix(m, k, prior_var), noise_var) {}

BeliefState::BeliefState(Matrix prior_mean, Matrix prior_var, double noise_var)
    : noise_var_(noise_var),
      counts_(prior_mean.rows(), prior_mean.cols()),
      emp_mean_(prior_mean.rows(), prior_mean.cols()),
      post_mean_(prior_mean.rows(), prior_mean.cols()),
      post_var_(prior_mean.rows(), prior_mean.cols()),
      prior_mean_(std::move(prior_mean)),
      prior_var_(std::move(prior_var)) {
  if (m() == 0 || k() == 0) throw InvalidInput("belief needs at least one entry");
  if (prior_var_.rows() != m() || prior_var_.cols() != k())
    throw InvalidInput("prior mean and variance shapes differ");
  check_variance(noise_var_, "noise variance");
  for (double v : prior_mean_.data())
    if (!std::isfinite(v)) throw InvalidInput("prior mean must be finite");
  for (double& v : prior_var_.data()) {
    check_variance(v, "prior variance");
    v = std::max(v, kVarianceFloor);
  }
  kind_.assign(m() * k(), PriorKind::kGaussian);
  two_point_.assign(m() * k(), TwoPointPrior{});
  log_odds_.assign(m() * k(), 0.0);
  for (std::size_t i = 0; i < m(); ++i)
    for (std::size_t j = 0; j < k(); ++j) recompute(i, j);
}

void BeliefState::set_two_point_prior(std::size_t i, std::size_t j, TwoPointPrior prior) {
  check_index(i, j);
  if (!(prior.hi > prior.lo) || !std::isfinite(prior.lo) || !std::isfinite(prior.hi))
    throw InvalidInput("two-point prior needs finite lo < hi");
  if (!(prior.p_hi > 0.0 && prior.p_hi < 1.0))
    throw InvalidInput("two-point prior probability must lie in (0, 1)");
  kind_[index(i, j)] = PriorKind::kTwoPoint;
  two_point_[index(i, j)] = prior;
  prior_mean_(i, j) = prior.lo + prior.p_hi * (prior.hi - prior.lo);
  prior_var_(i, j) = std::max(prior.p_hi * (1.0 - prior.p_hi) *
                                  (prior.hi - prior.lo) * (prior.hi - prior.lo),
                              kVarianceFloor);
  recompute(i, j);
}

void BeliefState::check_index(std::size_t i, std::size_t j) const {
  if (i >= m() || j >= k())
    throw InvalidInput("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                       ") outside a " + std::to_string(m()) + "x" + std::to_string(k()) +
                       " belief");
}

void BeliefState::recompute(std::size_t i, std::size_t j) {
  const double n = counts_(i, j);
  const std::size_t idx = index(i, j);
  if (kind_[idx] == PriorKind::kGaussian) {
    const double pv = prior_var_(i, j);
    const double var = std::max(1.0 / (1.0 / pv + n / noise_var_), kVarianceFloor);
    post_var_(i, j) = var;
    post_mean_(i, j) = var * (prior_mean_(i, j) / pv + n * emp_mean_(i, j) / noise_var_);
    return;
  }
  // Likelihood ratio of hi vs lo for n Gaussian observations with mean Abar.
  const TwoPointPrior& tp = two_point_[idx];
  const double prior_lo = std::log(tp.p_hi) - std::log1p(-tp.p_hi);
  log_odds_[idx] = prior_lo + (tp.hi - tp.lo) / noise_var_ *
                                  (n * emp_mean_(i, j) - 0.5 * n * (tp.hi + tp.lo));
  const double p = sigmoid(log_odds_[idx]);
  const double span = tp.hi - tp.lo;
  post_mean_(i, j) = tp.lo + p * span;
  post_var_(i, j) = std::max(p * (1.0 - p) * span * span, kVarianceFloor);
}

void BeliefState::observe(std::size_t i, std::size_t j, double r) {
  check_index(i, j);
  if (!std::isfinite(r)) throw InvalidInput("observed reward must be finite");
  const double n = counts_(i, j) + 1.0;
  counts_(i, j) = n;
  emp_mean_(i, j) += (r - emp_mean_(i, j)) / n;
  recompute(i, j);
}

void BeliefState::set_statistics(std::size_t i, std::size_t j, std::int64_t count,
                                 double emp_mean) {
  check_index(i, j);
  if (count < 0) throw InvalidInput("observation count must be non-negative");
  if (!std::isfinite(emp_mean)) throw InvalidInput("empirical mean must be finite");
  counts_(i, j) = static_cast<double>(count);
  emp_mean_(i, j) = count == 0 ? 0.0 : emp_mean;
  recompute(i, j);
}

BeliefState update(BeliefState b, std::size_t i, std::size_t j, double r) {
  b.observe(i, j, r);
  return b;
}

double BeliefState::two_point_prob(std::size_t i, std::size_t j) const {
  return sigmoid(log_odds_[index(i, j)]);
}

double BeliefState::entry_cgf(std::size_t i, std::size_t j, double v) const {
  const std::size_t idx = index(i, j);
  if (kind_[idx] == PriorKind::kGaussian)
    return post_mean_(i, j) * v + 0.5 * post_var_(i, j) * v * v;
  const TwoPointPrior& tp = two_point_[idx];
  const double lo_w = -log_add_exp(0.0, log_odds_[idx]);       // log(1 - p)
  const double hi_w = -log_add_exp(0.0, -log_odds_[idx]);      // log p
  return log_add_exp(lo_w + tp.lo * v, hi_w + tp.hi * v);
}

double BeliefState::entry_cgf_d1(std::size_t i, std::size_t j, double v) const {
  const std::size_t idx = index(i, j);
  if (kind_[idx] == PriorKind::kGaussian) return post_mean_(i, j) + post_var_(i, j) * v;
  const TwoPointPrior& tp = two_point_[idx];
  const double q = sigmoid(log_odds_[idx] + (tp.hi - tp.lo) * v);
  return tp.lo + q * (tp.hi - tp.lo);
}

double BeliefState::entry_cgf_d2(std::size_t i, std::size_t j, double v) const {
  const std::size_t idx = index(i, j);
  if (kind_[idx] == PriorKind::kGaussian) return post_var_(i, j);
  const TwoPointPrior& tp = two_point_[idx];
  const double q = sigmoid(log_odds_[idx] + (tp.hi - tp.lo) * v);
  const double span = tp.hi - tp.lo;
  return q * (1.0 - q) * span * span;
}

double BeliefState::entry_cgf_excess(std::size_t i, std::size_t j, double v) const {
  const std::size_t idx = index(i, j);
  if (kind_[idx] == PriorKind::kGaussian) return -0.5 * post_var_(i, j) * v * v;
  // K(v) - v K'(v) = log(1 - p + p e^{sv}) - q s v with s = hi - lo and
  // q the tilted probability of hi.
  const TwoPointPrior& tp = two_point_[idx];
  const double sv = (tp.hi - tp.lo) * v;
  const double lw = -log_add_exp(0.0, log_odds_[idx]);
  const double hw = -log_add_exp(0.0, -log_odds_[idx]);
  const double q = sigmoid(log_odds_[idx] + sv);
  if (hw + sv >= lw) return hw + std::log1p(std::exp(lw - hw - sv)) + (1.0 - q) * sv;
  return lw + std::log1p(std::exp(hw + sv - lw)) - q * sv;
}

double BeliefState::sample_entry(std::size_t i, std::size_t j, Rng& rng) const {
  const std::size_t idx = index(i, j);
  if (kind_[idx] == PriorKind::kGaussian) {
    std::normal_distribution<double> dist(post_mean_(i, j), std::sqrt(post_var_(i, j)));
    return dist(rng);
  }
  std::bernoulli_distribution coin(two_point_prob(i, j));
  return coin(rng) ? two_point_[idx].hi : two_point_[idx].lo;
}

UcbParams UcbParams::for_horizon(std::int64_t horizon, std::size_t m, std::size_t k) {
  if (horizon < 1) throw InvalidInput("UCB horizon must be >= 1");
  const double t = static_cast<double>(horizon);
  UcbParams p{horizon, 1.0 / (2.0 * t * t * static_cast<double>(m * k))};
  p.validate();
  return p;
}

void UcbParams::validate() const {
  if (horizon < 1) throw InvalidInput("UCB horizon must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidInput("UCB delta must lie in (0, 1)");
  if (2.0 * log_inv_delta() < 1.0)
    throw InvalidInput("UCB delta too large: need sqrt(2 log(1/delta)) >= 1");
}

double UcbParams::log_inv_delta() const { return -std::log(delta); }

PayoffMatrix ucb_matrix(const BeliefState& b, const UcbParams& p) {
  p.validate();
  const double scale = 2.0 * p.log_inv_delta();
  Matrix out(b.m(), b.k());
  for (std::size_t i = 0; i < b.m(); ++i)
    for (std::size_t j = 0; j < b.k(); ++j) {
      const double n = std::max(1.0, static_cast<double>(b.count(i, j)));
      out(i, j) = b.emp_mean(i, j) + std::sqrt(scale / n);
    }
  return PayoffMatrix(std::move(out));
}

PayoffMatrix sample_matrix(const BeliefState& b, Rng& rng) {
  Matrix out(b.m(), b.k());
  for (std::size_t i = 0; i < b.m(); ++i)
    for (std::size_t j = 0; j < b.k(); ++j) out(i, j) = b.sample_entry(i, j, rng);
  return PayoffMatrix(std::move(out));
}

double cgf(const BeliefState& b, std::size_t j, std::span<const double> v) {
  if (j >= b.k()) throw InvalidInput("cgf: column index out of range");
  if (v.size() != b.m()) throw InvalidInput("cgf: argument length must equal m");
  double total = 0.0;
  for (std::size_t i = 0; i < b.m(); ++i) {
    if (!std::isfinite(v[i])) throw InvalidInput("cgf: non-finite argument");
    total += b.entry_cgf(i, j, v[i]);
  }
  return total;
}

}  // namespace mgl
