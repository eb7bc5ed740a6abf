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

#include <optional>
#include <stdexcept>
#include <vector>

#include "mgl/belief.hpp"
#include "mgl/types.hpp"

namespace mgl::klearn {

struct Options {
  double tau_min = 1e-6;
  double tau_max = 1e4;
  int max_iterations = 5000;
};

struct Solution {
  MixedStrategy y_star;
  double tau_star = 1.0;
  MixedStrategy x_star;
  double objective = 0.0;
  int iterations = 0;
  // ||P_simplex(y - grad_y) - y||_2 at the returned point; tau is at its
  // exact partial minimizer so this is the full projected-gradient norm.
  double stationarity = 0.0;
};

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, Solution best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const Solution& best() const { return best_; }

 private:
  Solution best_;
};

// Value, gradient and policy of  f(y, tau) = tau * logsumexp_j K_j(y / tau).
struct Evaluation {
  double value = 0.0;
  std::vector<double> grad_y;  // length m
  double d_tau = 0.0;
  double d2_tau = 0.0;
  std::vector<double> x;  // softmax_j K_j(y / tau), the maximizing policy
};

Evaluation evaluate(const BeliefState& b, std::span<const double> y, double tau);

double objective(const BeliefState& b, const MixedStrategy& y, double tau);

// sum_j x_j tau K_j(y / tau) + tau H(x), H the Shannon entropy in nats.
double lagrangian(const BeliefState& b, const MixedStrategy& x, const MixedStrategy& y,
                  double tau);

// Minimizes f over the simplex x [tau_min, tau_max]. `warm_start` seeds both
// y and tau (K-learning agents pass the previous round's optimum).
Solution solve(const BeliefState& b, double tol, const Options& options = {},
               const Solution* warm_start = nullptr);

// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::span<const double> v);

}  // namespace mgl::klearn
