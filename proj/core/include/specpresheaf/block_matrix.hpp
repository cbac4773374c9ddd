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

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "specpresheaf/gaussian_rational.hpp"

namespace specpresheaf {

// Block dimensions [n_1, ..., n_k] of a finite direct sum of matrix algebras.
using Shape = std::vector<std::size_t>;

// Number of complex coordinates of an element of the given shape: sum of n_i^2.
std::size_t coordinate_dimension(const Shape& shape);
std::string shape_to_string(const Shape& shape);

// Block-diagonal matrix over Q(i). Block i is an n_i x n_i matrix stored
// row-major.
class BlockMatrix {
 public:
  BlockMatrix() = default;
  // The zero element of the given shape.
  explicit BlockMatrix(Shape shape);
  // Validates block count and block sizes against the shape.
  BlockMatrix(Shape shape, std::vector<std::vector<GaussianRational>> blocks);

  static BlockMatrix zero(const Shape& shape) { return BlockMatrix(shape); }
  static BlockMatrix identity(const Shape& shape);
  // Matrix unit E_{row,col} inside block `block`.
  static BlockMatrix unit(const Shape& shape, std::size_t block, std::size_t row,
                          std::size_t col);
  // Element of C^n (shape [1,...,1]) with the given diagonal.
  static BlockMatrix diagonal(std::span<const GaussianRational> entries);
  // Single n x n block built from rows.
  static BlockMatrix square(const std::vector<std::vector<GaussianRational>>& rows);
  static BlockMatrix from_coordinates(const Shape& shape,
                                      std::span<const GaussianRational> coords);

  const Shape& shape() const { return shape_; }
  std::size_t num_blocks() const { return shape_.size(); }
  std::size_t block_dim(std::size_t block) const { return shape_.at(block); }
  const std::vector<GaussianRational>& block(std::size_t b) const { return blocks_.at(b); }

  const GaussianRational& at(std::size_t block, std::size_t row, std::size_t col) const;
  GaussianRational& at(std::size_t block, std::size_t row, std::size_t col);

  // Concatenation of the row-major block entries.
  std::vector<GaussianRational> coordinates() const;

  bool is_zero() const;
  BlockMatrix adjoint() const;
  GaussianRational trace() const;

  BlockMatrix& operator+=(const BlockMatrix& o);
  BlockMatrix& operator-=(const BlockMatrix& o);
  BlockMatrix& operator*=(const GaussianRational& s);

  friend BlockMatrix operator+(BlockMatrix a, const BlockMatrix& b) { return a += b; }
  friend BlockMatrix operator-(BlockMatrix a, const BlockMatrix& b) { return a -= b; }
  friend BlockMatrix operator-(BlockMatrix a) { return a *= GaussianRational(-1); }
  friend BlockMatrix operator*(const BlockMatrix& a, const BlockMatrix& b);
  friend BlockMatrix operator*(const GaussianRational& s, BlockMatrix a) { return a *= s; }

  friend bool operator==(const BlockMatrix& a, const BlockMatrix& b) = default;
  // Canonical total order: shape first, then entries in coordinate order, with
  // the larger entry sorting first (so e_1 precedes e_2 in C^n).
  friend std::strong_ordering operator<=>(const BlockMatrix& a, const BlockMatrix& b);

  std::string to_string() const;

 private:
  Shape shape_;
  std::vector<std::vector<GaussianRational>> blocks_;
};

// Spec-facing names for the *-algebra operations; throw ShapeMismatch.
BlockMatrix mat_add(const BlockMatrix& a, const BlockMatrix& b);
BlockMatrix mat_mul(const BlockMatrix& a, const BlockMatrix& b);
BlockMatrix mat_adjoint(const BlockMatrix& a);

// tr(ab) without forming the product; throws ShapeMismatch.
GaussianRational trace_product(const BlockMatrix& a, const BlockMatrix& b);

// Jordan product (ab + ba) / 2.
BlockMatrix jordan_product(const BlockMatrix& a, const BlockMatrix& b);

// Kronecker product of two single-block matrices.
BlockMatrix kronecker(const BlockMatrix& a, const BlockMatrix& b);

std::ostream& operator<<(std::ostream& os, const BlockMatrix& m);

}  // namespace specpresheaf
