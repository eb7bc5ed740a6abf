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

#include "mgl/types.hpp"

#include <algorithm>
#include <numeric>

namespace mgl {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidInput("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix out(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InvalidInput("ragged matrix rows");
    std::copy(rows[i].begin(), rows[i].end(), out.data_.begin() + i * cols);
  }
  return out;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator-() const {
  Matrix n = *this;
  for (double& v : n.data_) v = -v;
  return n;
}

Matrix Matrix::shifted(double c) const {
  Matrix s = *this;
  for (double& v : s.data_) v += c;
  return s;
}

PayoffMatrix::PayoffMatrix(Matrix entries) : a_(std::move(entries)) {
  if (a_.rows() == 0 || a_.cols() == 0)
    throw InvalidInput("payoff matrix must have at least one row and column");
  for (double v : a_.data())
    if (!std::isfinite(v)) throw InvalidInput("payoff matrix has a non-finite entry");
}

double PayoffMatrix::max_abs() const {
  double best = 0.0;
  for (double v : a_.data()) best = std::max(best, std::abs(v));
  return best;
}

bool on_simplex(std::span<const double> p) {
  if (p.empty()) return false;
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= kSimplexTol;
}

MixedStrategy::MixedStrategy(std::vector<double> probs) : p_(std::move(probs)) {
  if (!on_simplex(p_)) throw InvalidInput("strategy is not a probability vector");
}

MixedStrategy MixedStrategy::uniform(std::size_t n) {
  if (n == 0) throw InvalidInput("empty strategy");
  return MixedStrategy(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

MixedStrategy MixedStrategy::point_mass(std::size_t n, std::size_t index) {
  if (index >= n) throw InvalidInput("point mass index out of range");
  std::vector<double> p(n, 0.0);
  p[index] = 1.0;
  return MixedStrategy(std::move(p));
}

MixedStrategy MixedStrategy::from_weights(std::vector<double> weights) {
  double sum = 0.0;
  for (double& w : weights) {
    if (!std::isfinite(w)) throw InvalidInput("non-finite strategy weight");
    w = std::max(w, 0.0);
    sum += w;
  }
  if (!(sum > 0.0)) throw InvalidInput("strategy weights sum to zero");
  for (double& w : weights) w /= sum;
  return MixedStrategy(std::move(weights));
}

}  // namespace mgl
