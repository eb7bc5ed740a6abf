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

#include "mgl/game.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace mgl {
namespace {

constexpr double kPivotEps = 1e-12;

void check_dims(const PayoffMatrix& a, const MixedStrategy& x) {
  if (x.size() != a.k())
    throw InvalidInput("column strategy has " + std::to_string(x.size()) +
                       " entries, matrix has " + std::to_string(a.k()) + " columns");
}

GameSolution certify(const PayoffMatrix& a, MixedStrategy x, MixedStrategy y) {
  const double lower = column_guarantee(a, x);
  const double upper = row_guarantee(a, y);
  GameSolution s{std::move(x), std::move(y), 0.5 * (lower + upper), upper - lower};
  return s;
}

// Solves the dense square system m * sol = rhs in place (partial pivoting).
// Returns false when the system is numerically singular.
bool solve_square(std::vector<double>& m, std::vector<double>& rhs, std::size_t n) {
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r * n + c]) > std::abs(m[piv * n + c])) piv = r;
    if (std::abs(m[piv * n + c]) < 1e-12) return false;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[c * n + j], m[piv * n + j]);
      std::swap(rhs[c], rhs[piv]);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = m[r * n + c] / m[c * n + c];
      if (f == 0.0) continue;
      for (std::size_t j = c; j < n; ++j) m[r * n + j] -= f * m[c * n + j];
      rhs[r] -= f * rhs[c];
    }
  }
  for (std::size_t c = 0; c < n; ++c) rhs[c] /= m[c * n + c];
  return true;
}

// Equalizing strategy for `cols` that makes every row in `rows` pay the same
// amount: [A_ST  -1; 1^T  0] [x; v] = [0; 1]. `transpose` swaps the roles.
std::optional<std::vector<double>> equalizer(const PayoffMatrix& a,
                                             const std::vector<std::size_t>& rows,
                                             const std::vector<std::size_t>& cols,
                                             bool transpose) {
  const std::size_t s = rows.size();
  const std::size_t n = s + 1;
  std::vector<double> sys(n * n, 0.0), rhs(n, 0.0);
  for (std::size_t r = 0; r < s; ++r) {
    for (std::size_t c = 0; c < s; ++c)
      sys[r * n + c] = transpose ? a(cols[c], rows[r]) : a(rows[r], cols[c]);
    sys[r * n + s] = -1.0;
  }
  for (std::size_t c = 0; c < s; ++c) sys[s * n + c] = 1.0;
  rhs[s] = 1.0;
  if (!solve_square(sys, rhs, n)) return std::nullopt;
  return rhs;
}

std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t s) {
  std::vector<std::vector<std::size_t>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != s) continue;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    out.push_back(std::move(idx));
  }
  return out;
}

}  // namespace

GameSolution solve_zero_sum(const PayoffMatrix& a, double tol) {
  if (!(tol > 0.0)) throw InvalidInput("solve_zero_sum: tol must be positive");
  const std::size_t m = a.m();
  const std::size_t k = a.k();

  // Shift so every entry is >= 1; then the row player's problem becomes
  //   maximize 1^T w  s.t.  B^T w <= 1, w >= 0,   y = w / 1^T w,
  // whose duals on the k constraints give the column strategy.
  double lo = a(0, 0);
  for (double v : a.entries().data()) lo = std::min(lo, v);
  const double shift = 1.0 - lo;

  const std::size_t ncols = m + k;  // w then slacks
  const std::size_t width = ncols + 1;
  std::vector<double> tab(k * width, 0.0);
  std::vector<double> z(width, 0.0);
  std::vector<std::size_t> basis(k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < m; ++i) tab[j * width + i] = a(i, j) + shift;
    tab[j * width + m + j] = 1.0;
    tab[j * width + ncols] = 1.0;
    basis[j] = m + j;
  }
  for (std::size_t i = 0; i < m; ++i) z[i] = -1.0;

  const int cap = static_cast<int>(10 * (m + k + 2) * (m + k + 2));
  int iter = 0;
  for (;; ++iter) {
    std::size_t enter = ncols;
    for (std::size_t c = 0; c < ncols; ++c) {
      if (z[c] < -kPivotEps) {
        enter = c;
        break;
      }
    }
    if (enter == ncols) break;
    if (iter >= cap)
      throw SolverError("simplex exceeded its pivot budget", iter);

    std::size_t leave = k;
    double best_ratio = 0.0;
    for (std::size_t r = 0; r < k; ++r) {
      const double coef = tab[r * width + enter];
      if (coef <= kPivotEps) continue;
      const double ratio = tab[r * width + ncols] / coef;
      if (leave == k || ratio < best_ratio - kPivotEps ||
          (ratio <= best_ratio + kPivotEps && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    // Cannot happen for a positive matrix; the feasible region is bounded.
    if (leave == k) throw SolverError("simplex found an unbounded direction", iter);

    double* prow = &tab[leave * width];
    const double pv = prow[enter];
    for (std::size_t c = 0; c < width; ++c) prow[c] /= pv;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == leave) continue;
      double* row = &tab[r * width];
      const double f = row[enter];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < width; ++c) row[c] -= f * prow[c];
    }
    const double fz = z[enter];
    for (std::size_t c = 0; c < width; ++c) z[c] -= fz * prow[c];
    basis[leave] = enter;
  }

  std::vector<double> w(m, 0.0), u(k, 0.0);
  for (std::size_t r = 0; r < k; ++r)
    if (basis[r] < m) w[basis[r]] = tab[r * width + ncols];
  for (std::size_t j = 0; j < k; ++j) u[j] = z[m + j];

  GameSolution sol = certify(a, MixedStrategy::from_weights(std::move(u)),
                             MixedStrategy::from_weights(std::move(w)));
  if (sol.gap > tol)
    throw SolverError("simplex certificate gap " + std::to_string(sol.gap) +
                          " exceeds tolerance",
                      iter);
  return sol;
}

GameSolution brute_force_solution(const PayoffMatrix& a, double tol) {
  const std::size_t m = a.m();
  const std::size_t k = a.k();
  if (m > kBruteForceMaxDim || k > kBruteForceMaxDim)
    throw InvalidInput("brute_force_solution supports at most 5x5 games");
  constexpr double kFeasEps = 1e-9;

  for (std::size_t s = 1; s <= std::min(m, k); ++s) {
    const auto row_sets = subsets_of_size(m, s);
    const auto col_sets = subsets_of_size(k, s);
    for (const auto& rows : row_sets) {
      for (const auto& cols : col_sets) {
        auto xs = equalizer(a, rows, cols, false);
        if (!xs) continue;
        auto ys = equalizer(a, cols, rows, true);
        if (!ys) continue;
        if (std::any_of(xs->begin(), xs->begin() + s, [](double v) { return v < -kFeasEps; }) ||
            std::any_of(ys->begin(), ys->begin() + s, [](double v) { return v < -kFeasEps; }))
          continue;
        std::vector<double> x(k, 0.0), y(m, 0.0);
        for (std::size_t c = 0; c < s; ++c) x[cols[c]] = (*xs)[c];
        for (std::size_t r = 0; r < s; ++r) y[rows[r]] = (*ys)[r];
        GameSolution sol = certify(a, MixedStrategy::from_weights(std::move(x)),
                                   MixedStrategy::from_weights(std::move(y)));
        if (sol.gap <= tol) return sol;
      }
    }
  }
  throw SolverError("support enumeration found no certified saddle point", 0);
}

BestResponse best_response_row(const PayoffMatrix& a, const MixedStrategy& x) {
  check_dims(a, x);
  BestResponse br{0, std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < a.m(); ++i) {
    double v = 0.0;
    for (std::size_t j = 0; j < a.k(); ++j) v += a(i, j) * x[j];
    if (v < br.value) br = {i, v};
  }
  return br;
}

double expected_payoff(const PayoffMatrix& a, const MixedStrategy& x,
                       const MixedStrategy& y) {
  check_dims(a, x);
  if (y.size() != a.m()) throw InvalidInput("row strategy does not match matrix rows");
  double total = 0.0;
  for (std::size_t i = 0; i < a.m(); ++i) {
    if (y[i] == 0.0) continue;
    double ax = 0.0;
    for (std::size_t j = 0; j < a.k(); ++j) ax += a(i, j) * x[j];
    total += y[i] * ax;
  }
  return total;
}

double column_guarantee(const PayoffMatrix& a, const MixedStrategy& x) {
  return best_response_row(a, x).value;
}

double row_guarantee(const PayoffMatrix& a, const MixedStrategy& y) {
  if (y.size() != a.m()) throw InvalidInput("row strategy does not match matrix rows");
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < a.k(); ++j) {
    double v = 0.0;
    for (std::size_t i = 0; i < a.m(); ++i) v += a(i, j) * y[i];
    best = std::max(best, v);
  }
  return best;
}

double kl_divergence(const MixedStrategy& p, const MixedStrategy& q) {
  if (p.size() != q.size()) throw InvalidInput("kl_divergence: length mismatch");
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return kKlInfinity;
    kl += p[i] * std::log(p[i] / q[i]);
  }
  return kl;
}

}  // namespace mgl
