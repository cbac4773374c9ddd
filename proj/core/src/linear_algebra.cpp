// Copyright 2026 The specpresheaf Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "specpresheaf/linear_algebra.hpp"

#include <string>

#include "specpresheaf/error.hpp"

namespace specpresheaf {

std::optional<Vector> solve_linear(std::span<const Vector> columns, const Vector& target) {
  const std::size_t rows = target.size();
  const std::size_t cols = columns.size();
  for (const auto& col : columns) {
    if (col.size() != rows) throw ShapeMismatch("solve_linear(): column length mismatch");
  }
  // Augmented row-major matrix [A | b].
  std::vector<Vector> m(rows, Vector(cols + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m[r][c] = columns[c][r];
    m[r][cols] = target[r];
  }

  std::vector<std::size_t> pivot_cols;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    std::size_t sel = pivot_row;
    while (sel < rows && m[sel][c].is_zero()) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[pivot_row]);
    const GaussianRational inv = GaussianRational(1) / m[pivot_row][c];
    for (std::size_t k = c; k <= cols; ++k) m[pivot_row][k] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pivot_row || m[r][c].is_zero()) continue;
      const GaussianRational f = m[r][c];
      for (std::size_t k = c; k <= cols; ++k) {
        if (!m[pivot_row][k].is_zero()) m[r][k] -= f * m[pivot_row][k];
      }
    }
    pivot_cols.push_back(c);
    ++pivot_row;
  }
  for (std::size_t r = pivot_row; r < rows; ++r) {
    if (!m[r][cols].is_zero()) return std::nullopt;
  }
  Vector x(cols);
  for (std::size_t k = 0; k < pivot_cols.size(); ++k) x[pivot_cols[k]] = m[k][cols];
  return x;
}

std::optional<Vector> solve_membership(const BlockMatrix& v, std::span<const BlockMatrix> basis) {
  std::vector<Vector> columns;
  columns.reserve(basis.size());
  for (const auto& b : basis) {
    if (b.shape() != v.shape()) {
      throw ShapeMismatch("solve_membership(): basis element of shape " +
                          shape_to_string(b.shape()) + " vs " + shape_to_string(v.shape()));
    }
    columns.push_back(b.coordinates());
  }
  return solve_linear(columns, v.coordinates());
}

Vector LinearSpan::reduce(Vector& v) const {
  Vector mult(rows_.size());
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const GaussianRational f = v[pivots_[k]];
    if (f.is_zero()) continue;
    mult[k] = f;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!rows_[k][i].is_zero()) v[i] -= f * rows_[k][i];
    }
  }
  return mult;
}

bool LinearSpan::add(const BlockMatrix& x) {
  if (x.shape() != shape_) throw ShapeMismatch("LinearSpan::add(): shape mismatch");
  Vector v = x.coordinates();
  const Vector mult = reduce(v);
  std::size_t pivot = 0;
  while (pivot < v.size() && v[pivot].is_zero()) ++pivot;
  if (pivot == v.size()) return false;

  // New row: v = x - sum_k mult[k] rows_k, normalised at its pivot.
  const std::size_t n = elements_.size() + 1;
  Vector t(n);
  t[n - 1] = GaussianRational(1);
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (mult[k].is_zero()) continue;
    for (std::size_t j = 0; j < transforms_[k].size(); ++j) t[j] -= mult[k] * transforms_[k][j];
  }
  const GaussianRational inv = GaussianRational(1) / v[pivot];
  for (auto& e : v) e *= inv;
  for (auto& e : t) e *= inv;

  // Clear the new pivot column from the existing rows.
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    transforms_[k].resize(n);
    const GaussianRational f = rows_[k][pivot];
    if (f.is_zero()) continue;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_zero()) rows_[k][i] -= f * v[i];
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!t[j].is_zero()) transforms_[k][j] -= f * t[j];
    }
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(pivot);
  transforms_.push_back(std::move(t));
  elements_.push_back(x);
  return true;
}

std::optional<Vector> LinearSpan::coefficients(const BlockMatrix& x) const {
  if (x.shape() != shape_) throw ShapeMismatch("LinearSpan::coefficients(): shape mismatch");
  Vector v = x.coordinates();
  const Vector mult = reduce(v);
  for (const auto& e : v) {
    if (!e.is_zero()) return std::nullopt;
  }
  Vector out(elements_.size());
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (mult[k].is_zero()) continue;
    for (std::size_t j = 0; j < transforms_[k].size(); ++j) out[j] += mult[k] * transforms_[k][j];
  }
  return out;
}

}  // namespace specpresheaf
