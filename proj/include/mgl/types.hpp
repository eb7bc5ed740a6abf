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

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgl {

// Thrown when a caller hands in malformed data (bad dimensions, non-finite
// values, strategies off the simplex, unknown names).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The LP solver failed to terminate within its pivot budget.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, int iterations)
      : std::runtime_error(what), iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

// Dense row-major matrix of doubles. Used both for payoff matrices and for
// the per-entry statistics kept by beliefs.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * cols_, cols_);
  }

  Matrix transposed() const;
  Matrix operator-() const;
  Matrix shifted(double c) const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// The game matrix A. Entry (i, j) is what the row player pays the column
// player when row plays i and column plays j.
class PayoffMatrix {
 public:
  explicit PayoffMatrix(Matrix entries);
  PayoffMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : PayoffMatrix(Matrix(rows)) {}

  std::size_t m() const { return a_.rows(); }
  std::size_t k() const { return a_.cols(); }
  double operator()(std::size_t i, std::size_t j) const { return a_(i, j); }
  const Matrix& entries() const { return a_; }
  double max_abs() const;

  // -A^T: the same game seen from the row player's seat as a maximizer.
  PayoffMatrix mirrored() const { return PayoffMatrix(-a_.transposed()); }

  bool operator==(const PayoffMatrix&) const = default;

 private:
  Matrix a_;
};

inline constexpr double kSimplexTol = 1e-9;

// A probability vector over one player's actions.
class MixedStrategy {
 public:
  MixedStrategy() = default;
  explicit MixedStrategy(std::vector<double> probs);
  MixedStrategy(std::initializer_list<double> probs)
      : MixedStrategy(std::vector<double>(probs)) {}

  static MixedStrategy uniform(std::size_t n);
  static MixedStrategy point_mass(std::size_t n, std::size_t index);
  // Clips tiny negatives and renormalizes; for solver outputs only.
  static MixedStrategy from_weights(std::vector<double> weights);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> probs() const { return p_; }

  bool operator==(const MixedStrategy&) const = default;

 private:
  std::vector<double> p_;
};

// Returns true if `p` is a valid simplex point within kSimplexTol.
bool on_simplex(std::span<const double> p);

}  // namespace mgl
