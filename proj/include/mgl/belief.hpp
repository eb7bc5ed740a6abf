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
#include <vector>

#include "mgl/rng.hpp"
#include "mgl/types.hpp"

namespace mgl {

inline constexpr double kVarianceFloor = 1e-12;

// Prior family for one entry. Gaussian is the default; TwoPoint puts mass
// p_hi on `hi` and 1 - p_hi on `lo` and is updated exactly under Gaussian
// observation noise.
enum class PriorKind : std::uint8_t { kGaussian, kTwoPoint };

struct TwoPointPrior {
  double lo = -1.0;
  double hi = 1.0;
  double p_hi = 0.5;
  bool operator==(const TwoPointPrior&) const = default;
};

// Everything an agent knows about A after the observations in F_t: counts,
// empirical means (frequentist path) and an independent per-entry posterior
// (Bayesian path). Both paths share one update routine.
class BeliefState {
 public:
  BeliefState() = default;
  BeliefState(std::size_t m, std::size_t k, double prior_mean, double prior_var,
              double noise_var);
  // Per-entry Gaussian priors; a prior variance at the floor marks a known entry.
  BeliefState(Matrix prior_mean, Matrix prior_var, double noise_var);

  void set_two_point_prior(std::size_t i, std::size_t j, TwoPointPrior prior);

  std::size_t m() const { return counts_.rows(); }
  std::size_t k() const { return counts_.cols(); }
  double noise_var() const { return noise_var_; }

  // Mutating form of `update`; see the free function.
  void observe(std::size_t i, std::size_t j, double r);
  // Restores sufficient statistics, e.g. from a checkpoint.
  void set_statistics(std::size_t i, std::size_t j, std::int64_t count, double emp_mean);

  std::int64_t count(std::size_t i, std::size_t j) const {
    return static_cast<std::int64_t>(counts_(i, j));
  }
  double emp_mean(std::size_t i, std::size_t j) const { return emp_mean_(i, j); }
  double post_mean(std::size_t i, std::size_t j) const { return post_mean_(i, j); }
  double post_var(std::size_t i, std::size_t j) const { return post_var_(i, j); }
  double prior_mean(std::size_t i, std::size_t j) const { return prior_mean_(i, j); }
  double prior_var(std::size_t i, std::size_t j) const { return prior_var_(i, j); }
  PriorKind kind(std::size_t i, std::size_t j) const { return kind_[index(i, j)]; }
  const TwoPointPrior& two_point(std::size_t i, std::size_t j) const {
    return two_point_[index(i, j)];
  }
  // Posterior probability of `hi` for a two-point entry.
  double two_point_prob(std::size_t i, std::size_t j) const;

  const Matrix& counts() const { return counts_; }
  const Matrix& emp_means() const { return emp_mean_; }
  const Matrix& post_means() const { return post_mean_; }
  const Matrix& post_vars() const { return post_var_; }

  // Scalar posterior CGF of entry (i, j) and its first two derivatives.
  double entry_cgf(std::size_t i, std::size_t j, double v) const;
  double entry_cgf_d1(std::size_t i, std::size_t j, double v) const;
  double entry_cgf_d2(std::size_t i, std::size_t j, double v) const;
  // K(v) - v K'(v), evaluated without the cancellation of the naive form.
  double entry_cgf_excess(std::size_t i, std::size_t j, double v) const;

  double sample_entry(std::size_t i, std::size_t j, Rng& rng) const;

  bool operator==(const BeliefState&) const = default;

 private:
  std::size_t index(std::size_t i, std::size_t j) const { return i * k() + j; }
  void check_index(std::size_t i, std::size_t j) const;
  void recompute(std::size_t i, std::size_t j);

  double noise_var_ = 1.0;
  Matrix counts_;  // stored as doubles, always integral
  Matrix emp_mean_;
  Matrix post_mean_;
  Matrix post_var_;
  Matrix prior_mean_;
  Matrix prior_var_;
  std::vector<PriorKind> kind_;
  std::vector<TwoPointPrior> two_point_;
  std::vector<double> log_odds_;  // posterior log-odds of `hi`, two-point entries
};

// Functional update: returns b with one more observation r at (i, j).
BeliefState update(BeliefState b, std::size_t i, std::size_t j, double r);

struct UcbParams {
  std::int64_t horizon = 1000;
  double delta = 0.0;

  // delta = 1 / (2 T^2 m k), the choice used by the matrix-game UCB bound.
  static UcbParams for_horizon(std::int64_t horizon, std::size_t m, std::size_t k);
  void validate() const;
  double log_inv_delta() const;
};

// A~_ij = Abar_ij + sqrt(2 log(1/delta) / max(1, n_ij)).
PayoffMatrix ucb_matrix(const BeliefState& b, const UcbParams& p);

// One joint posterior draw, entries visited in row-major order.
PayoffMatrix sample_matrix(const BeliefState& b, Rng& rng);

// Posterior CGF of column j: K_j(v) = log E exp(a_j^T v). For Gaussian entries
// this is sum_i mu_ij v_i + 0.5 sigma^2_ij v_i^2.
double cgf(const BeliefState& b, std::size_t j, std::span<const double> v);

}  // namespace mgl
