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

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "specpresheaf/block_matrix.hpp"

namespace specpresheaf {

using Vector = std::vector<GaussianRational>;

// Solves sum_j c_j basis_j = v by exact Gaussian elimination over Q(i).
// Returns one solution (free variables set to zero) or nullopt when v is not
// in the span. Throws ShapeMismatch if shapes differ.
std::optional<Vector> solve_membership(const BlockMatrix& v, std::span<const BlockMatrix> basis);

// Same, on raw coordinate columns: columns[j] has the same length as target.
std::optional<Vector> solve_linear(std::span<const Vector> columns, const Vector& target);

// Incrementally grown set of linearly independent elements with exact
// coefficient extraction. Keeps a reduced echelon basis of the coordinate
// vectors together with its expression in the stored elements.
class LinearSpan {
 public:
  explicit LinearSpan(Shape shape) : shape_(std::move(shape)) {}

  // Adds x if independent of the current elements; returns whether it was added.
  bool add(const BlockMatrix& x);
  std::optional<Vector> coefficients(const BlockMatrix& x) const;
  bool contains(const BlockMatrix& x) const { return coefficients(x).has_value(); }
  const std::vector<BlockMatrix>& elements() const { return elements_; }
  std::size_t dimension() const { return elements_.size(); }
  const Shape& shape() const { return shape_; }

 private:
  // Reduces v against the echelon rows; returns the row multipliers and leaves
  // the residual in v.
  Vector reduce(Vector& v) const;

  Shape shape_;
  std::vector<BlockMatrix> elements_;
  std::vector<Vector> rows_;            // echelon rows, rows_[k][pivots_[k]] = 1
  std::vector<std::size_t> pivots_;
  std::vector<Vector> transforms_;      // rows_[k] = sum_j transforms_[k][j] * elements_[j]
};

}  // namespace specpresheaf
