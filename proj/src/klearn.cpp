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

#include "mgl/klearn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

namespace mgl::klearn {
namespace {

constexpr int kTauNewtonCap = 200;
constexpr int kNonMonotoneWindow = 10;
constexpr double kArmijo = 1e-4;
constexpr double kStepMin = 1e-12;
constexpr double kStepMax = 1e12;

void check_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw InvalidInput("K-learning temperature tau must be positive and finite");
}

struct Point {
  std::vector<double> y;
  double tau = 1.0;
  Evaluation eval;
};

// Exact minimization of the (convex) objective over tau for fixed y:
// safeguarded Newton with a shrinking bracket, geometric bisection fallback.
Point minimize_tau(const BeliefState& b, std::vector<double> y, double tau0,
                   const Options& opt) {
  double lo = opt.tau_min;
  double hi = opt.tau_max;
  double tau = std::clamp(tau0, lo, hi);
  Evaluation ev = evaluate(b, y, tau);
  for (int it = 0; it < kTauNewtonCap; ++it) {
    if (ev.d_tau > 0.0) {
      hi = tau;
    } else if (ev.d_tau < 0.0) {
      lo = tau;
    } else {
      break;
    }
    if (hi / lo - 1.0 < 1e-13) break;
    double next = ev.d2_tau > 0.0 ? tau - ev.d_tau / ev.d2_tau : -1.0;
    if (!(next > lo && next < hi)) next = std::sqrt(lo * hi);
    // Newton has converged once the predicted decrease is at rounding level.
    const double predicted = std::abs(ev.d_tau * (next - tau));
    if (predicted <= 1e-16 * std::max(1.0, std::abs(ev.value))) break;
    tau = next;
    ev = evaluate(b, y, tau);
  }
  // The bracket may have collapsed onto a bound without visiting it.
  if (tau != opt.tau_min && lo == opt.tau_min && hi / lo - 1.0 < 1e-13) {
    tau = opt.tau_min;
    ev = evaluate(b, y, tau);
  } else if (tau != opt.tau_max && hi == opt.tau_max && hi / lo - 1.0 < 1e-13) {
    tau = opt.tau_max;
    ev = evaluate(b, y, tau);
  }
  return Point{std::move(y), tau, std::move(ev)};
}

double projected_gradient_norm(std::span<const double> y, std::span<const double> g) {
  std::vector<double> step(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) step[i] = y[i] - g[i];
  const std::vector<double> p = project_to_simplex(step);
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += (p[i] - y[i]) * (p[i] - y[i]);
  return std::sqrt(s);
}

// Hessian of phi(y) = min_tau f(y, tau) at an inner optimum, row-major m x m.
// f_yy = (diag(E_x K'') + Cov_x(K')) / tau; tau is eliminated by a Schur
// complement unless it sits on a bound.
std::vector<double> reduced_hessian(const BeliefState& b, const Point& p, const Options& opt) {
  const std::size_t m = b.m(), k = b.k();
  const auto& x = p.eval.x;
  const double tau = p.tau;
  std::vector<double> d1(m * k), mean_d1(m, 0.0), mean_d2(m, 0.0), slope(k, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double v = p.y[i] / tau;
    for (std::size_t j = 0; j < k; ++j) {
      d1[i * k + j] = b.entry_cgf_d1(i, j, v);
      mean_d1[i] += x[j] * d1[i * k + j];
      mean_d2[i] += x[j] * b.entry_cgf_d2(i, j, v);
      slope[j] += d1[i * k + j] * p.y[i];
    }
  }
  double mean_slope = 0.0;
  for (std::size_t j = 0; j < k; ++j) mean_slope += x[j] * slope[j];

  std::vector<double> h(m * m, 0.0), cross(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t l = i; l < m; ++l) {
      double cov = 0.0;
      for (std::size_t j = 0; j < k; ++j)
        cov += x[j] * (d1[i * k + j] - mean_d1[i]) * (d1[l * k + j] - mean_d1[l]);
      h[i * m + l] = h[l * m + i] = (cov + (i == l ? mean_d2[i] : 0.0)) / tau;
    }
    double cov_s = 0.0;
    for (std::size_t j = 0; j < k; ++j)
      cov_s += x[j] * (d1[i * k + j] - mean_d1[i]) * (slope[j] - mean_slope);
    cross[i] = -(p.y[i] * mean_d2[i] + cov_s) / (tau * tau);
  }
  const bool interior = p.tau > opt.tau_min && p.tau < opt.tau_max;
  if (interior && p.eval.d2_tau > 0.0)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t l = 0; l < m; ++l) h[i * m + l] -= cross[i] * cross[l] / p.eval.d2_tau;
  return h;
}

// Dense symmetric solve by Gaussian elimination with partial pivoting.
bool solve_linear(std::vector<double> a, std::vector<double>& rhs, std::size_t n) {
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (!(std::abs(a[piv * n + c]) > 0.0)) return false;
    if (piv != c) {
      for (std::size_t q = 0; q < n; ++q) std::swap(a[c * n + q], a[piv * n + q]);
      std::swap(rhs[c], rhs[piv]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      if (f == 0.0) continue;
      for (std::size_t q = c; q < n; ++q) a[r * n + q] -= f * a[c * n + q];
      rhs[r] -= f * rhs[c];
    }
  }
  for (std::size_t c = n; c-- > 0;) {
    for (std::size_t q = c + 1; q < n; ++q) rhs[c] -= a[c * n + q] * rhs[q];
    rhs[c] /= a[c * n + c];
  }
  return true;
}

// argmin over the simplex of g^T (w - y) + 0.5 (w - y)^T H (w - y), primal
// active set started from the feasible point y. Empty on failure.
std::vector<double> newton_target(std::span<const double> y, std::span<const double> g,
                                  std::vector<double> hess) {
  const std::size_t m = y.size();
  double scale = 0.0;
  for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::abs(hess[i * m + i]));
  const double ridge = 1e-10 * std::max(scale, 1e-300) + 1e-300;
  for (std::size_t i = 0; i < m; ++i) hess[i * m + i] += ridge;
  // Linear term of the model in w: c = g - H y.
  std::vector<double> c(g.begin(), g.end());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t l = 0; l < m; ++l) c[i] -= hess[i * m + l] * y[l];

  std::vector<double> w(y.begin(), y.end());
  std::vector<bool> free(m);
  for (std::size_t i = 0; i < m; ++i) free[i] = w[i] > 0.0;
  for (int round = 0; round < 4 * static_cast<int>(m) + 10; ++round) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m; ++i)
      if (free[i]) idx.push_back(i);
    const std::size_t n = idx.size();
    // KKT system [H_SS 1; 1^T 0] [w_S; nu] = [-c_S; 1].
    std::vector<double> kkt((n + 1) * (n + 1), 0.0), rhs(n + 1);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t q = 0; q < n; ++q) kkt[a * (n + 1) + q] = hess[idx[a] * m + idx[q]];
      kkt[a * (n + 1) + n] = 1.0;
      kkt[n * (n + 1) + a] = 1.0;
      rhs[a] = -c[idx[a]];
    }
    rhs[n] = 1.0;
    if (!solve_linear(std::move(kkt), rhs, n + 1)) return {};

    // Walk from w toward the subspace optimum; stop at the first blocking bound.
    double step = 1.0;
    std::size_t blocking = m;
    for (std::size_t a = 0; a < n; ++a) {
      const double to = rhs[a], from = w[idx[a]];
      if (to < 0.0 && from - to > 0.0) {
        const double s = from / (from - to);
        if (s < step) step = s, blocking = idx[a];
      }
    }
    for (std::size_t a = 0; a < n; ++a) w[idx[a]] += step * (rhs[a] - w[idx[a]]);
    if (blocking < m) {
      w[blocking] = 0.0;
      free[blocking] = false;
      continue;
    }
    // Optimal on the face; release the bound with the most negative multiplier.
    const double nu = rhs[n];
    std::size_t enter = m;
    double most = -1e-14 * (1.0 + std::abs(nu));
    for (std::size_t i = 0; i < m; ++i) {
      if (free[i]) continue;
      double grad = c[i];
      for (std::size_t l = 0; l < m; ++l) grad += hess[i * m + l] * w[l];
      if (grad + nu < most) most = grad + nu, enter = i;
    }
    if (enter == m) return w;
    free[enter] = true;
  }
  return {};
}

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Solution to_solution(const Point& p, int iterations, double stationarity) {
  Solution s;
  s.y_star = MixedStrategy::from_weights(p.y);
  s.tau_star = p.tau;
  s.x_star = MixedStrategy::from_weights(p.eval.x);
  s.objective = p.eval.value;
  s.iterations = iterations;
  s.stationarity = stationarity;
  return s;
}

}  // namespace

Evaluation evaluate(const BeliefState& b, std::span<const double> y, double tau) {
  check_tau(tau);
  const std::size_t m = b.m();
  const std::size_t k = b.k();
  if (y.size() != m) throw InvalidInput("K-learning: y must have length m");

  std::vector<double> z(k, 0.0);       // K_j(y / tau)
  std::vector<double> excess(k, 0.0);  // sum_i K_ij - v_i K'_ij
  std::vector<double> slope(k, 0.0);   // sum_i K'_ij(v_i) y_i
  std::vector<double> curv(k, 0.0);    // sum_i K''_ij(v_i) y_i^2
  std::vector<double> d1(m * k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      const double v = y[i] / tau;
      const double g = b.entry_cgf_d1(i, j, v);
      d1[i * k + j] = g;
      z[j] += b.entry_cgf(i, j, v);
      excess[j] += b.entry_cgf_excess(i, j, v);
      slope[j] += g * y[i];
      curv[j] += b.entry_cgf_d2(i, j, v) * y[i] * y[i];
    }
  }

  const double zmax = *std::max_element(z.begin(), z.end());
  Evaluation ev;
  ev.x.resize(k);
  double sum = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    ev.x[j] = std::exp(z[j] - zmax);
    sum += ev.x[j];
  }
  const double lse = zmax + std::log(sum);
  for (double& xj : ev.x) xj /= sum;
  ev.value = tau * lse;

  ev.grad_y.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j) ev.grad_y[i] += ev.x[j] * d1[i * k + j];

  // df/dtau = lse - sum_j x_j slope_j / tau = H(x) + sum_j x_j excess_j.
  double entropy = 0.0, mean_excess = 0.0, mean_slope = 0.0, mean_curv = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    if (ev.x[j] > 0.0) entropy -= ev.x[j] * (z[j] - lse);
    mean_excess += ev.x[j] * excess[j];
    mean_slope += ev.x[j] * slope[j];
    mean_curv += ev.x[j] * curv[j];
  }
  double slope_var = 0.0;
  for (std::size_t j = 0; j < k; ++j)
    slope_var += ev.x[j] * (slope[j] - mean_slope) * (slope[j] - mean_slope);
  ev.d_tau = entropy + mean_excess;
  ev.d2_tau = (mean_curv + slope_var) / (tau * tau * tau);
  return ev;
}

double objective(const BeliefState& b, const MixedStrategy& y, double tau) {
  check_tau(tau);
  if (y.size() != b.m()) throw InvalidInput("K-learning: y must have length m");
  std::vector<double> v(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) v[i] = y[i] / tau;
  std::vector<double> z(b.k());
  for (std::size_t j = 0; j < b.k(); ++j) z[j] = cgf(b, j, v);
  const double zmax = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double zj : z) sum += std::exp(zj - zmax);
  return tau * (zmax + std::log(sum));
}

double lagrangian(const BeliefState& b, const MixedStrategy& x, const MixedStrategy& y,
                  double tau) {
  check_tau(tau);
  if (x.size() != b.k()) throw InvalidInput("K-learning: x must have length k");
  if (y.size() != b.m()) throw InvalidInput("K-learning: y must have length m");
  std::vector<double> v(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) v[i] = y[i] / tau;
  double total = 0.0;
  for (std::size_t j = 0; j < b.k(); ++j) {
    if (x[j] == 0.0) continue;
    total += x[j] * (tau * cgf(b, j, v) - tau * std::log(x[j]));
  }
  return total;
}

std::vector<double> project_to_simplex(std::span<const double> v) {
  std::vector<double> u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    const double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) theta = t;
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

Solution solve(const BeliefState& b, double tol, const Options& opt,
               const Solution* warm_start) {
  if (!(tol > 0.0)) throw InvalidInput("K-learning solve: tol must be positive");
  if (!(opt.tau_min > 0.0 && opt.tau_max > opt.tau_min))
    throw InvalidInput("K-learning solve: need 0 < tau_min < tau_max");
  const std::size_t m = b.m();

  std::vector<double> y0(m, 1.0 / static_cast<double>(m));
  double tau0 = 1.0;
  if (warm_start != nullptr && warm_start->y_star.size() == m) {
    y0.assign(warm_start->y_star.probs().begin(), warm_start->y_star.probs().end());
    tau0 = warm_start->tau_star;
  }
  Point cur = minimize_tau(b, std::move(y0), tau0, opt);
  double pg = projected_gradient_norm(cur.y, cur.eval.grad_y);
  std::deque<double> recent{cur.eval.value};
  double alpha = 1.0;

  // Spectral (Barzilai-Borwein) projected gradient on phi(y) = min_tau f(y, tau)
  // with a non-monotone Armijo search; grad phi = grad_y f at the inner optimum.
  int iter = 0;
  for (; iter < opt.max_iterations && pg > tol; ++iter) {
    // Projected Newton first; it resolves the sharp kinks that appear when
    // tau is driven to its lower bound.
    if (m > 1) {
      const auto w = newton_target(cur.y, cur.eval.grad_y, reduced_hessian(b, cur, opt));
      if (!w.empty()) {
        double slope = 0.0;
        for (std::size_t i = 0; i < m; ++i) slope += cur.eval.grad_y[i] * (w[i] - cur.y[i]);
        bool moved = false;
        for (double lambda = 1.0; slope < 0.0 && lambda >= 1e-4; lambda *= 0.5) {
          std::vector<double> y(m);
          for (std::size_t i = 0; i < m; ++i) y[i] = std::max(cur.y[i] + lambda * (w[i] - cur.y[i]), 0.0);
          Point next = minimize_tau(b, std::move(y), cur.tau, opt);
          if (next.eval.value <= cur.eval.value + kArmijo * lambda * slope) {
            cur = std::move(next);
            moved = true;
            break;
          }
        }
        if (moved) {
          pg = projected_gradient_norm(cur.y, cur.eval.grad_y);
          recent.push_back(cur.eval.value);
          if (recent.size() > kNonMonotoneWindow) recent.pop_front();
          alpha = 1.0;
          continue;
        }
      }
    }

    std::vector<double> trial(m);
    for (std::size_t i = 0; i < m; ++i) trial[i] = cur.y[i] - alpha * cur.eval.grad_y[i];
    const std::vector<double> target = project_to_simplex(trial);
    std::vector<double> dir(m);
    double slope = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      dir[i] = target[i] - cur.y[i];
      slope += cur.eval.grad_y[i] * dir[i];
    }
    const double ref = *std::max_element(recent.begin(), recent.end());

    double lambda = 1.0;
    Point next;
    bool accepted = false;
    while (lambda >= 1e-20) {
      std::vector<double> y(m);
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        y[i] = std::max(cur.y[i] + lambda * dir[i], 0.0);
        s += y[i];
      }
      for (double& yi : y) yi /= s;
      next = minimize_tau(b, std::move(y), cur.tau, opt);
      if (next.eval.value <= ref + kArmijo * lambda * slope) {
        accepted = true;
        break;
      }
      const double denom =
          2.0 * (next.eval.value - cur.eval.value - lambda * slope);
      double shrink = denom > 0.0 ? -slope * lambda / denom : 0.5;
      lambda *= std::clamp(shrink, 0.1, 0.5);
    }
    if (!accepted) break;  // no representable decrease left

    double ss = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double s = next.y[i] - cur.y[i];
      ss += s * s;
      sy += s * (next.eval.grad_y[i] - cur.eval.grad_y[i]);
    }
    alpha = sy > 0.0 ? std::clamp(ss / sy, kStepMin, kStepMax) : kStepMax;
    cur = std::move(next);
    pg = projected_gradient_norm(cur.y, cur.eval.grad_y);
    recent.push_back(cur.eval.value);
    if (recent.size() > kNonMonotoneWindow) recent.pop_front();
  }

  Solution sol = to_solution(cur, iter, pg);
  if (pg > tol)
    throw NonConvergence("K-learning solver stopped at projected-gradient norm " +
                             fmt_g(pg) + " after " + std::to_string(iter) +
                             " iterations",
                         std::move(sol));
  return sol;
}

}  // namespace mgl::klearn
