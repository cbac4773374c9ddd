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

#include "specpresheaf/star_algebra.hpp"

#include "specpresheaf/error.hpp"

namespace specpresheaf {

StarAlgebra::StarAlgebra(std::string label, Shape shape)
    : label_(std::move(label)), shape_(std::move(shape)) {
  if (shape_.empty()) throw InvariantViolation("algebra '" + label_ + "' has empty shape");
  for (std::size_t n : shape_) {
    if (n == 0) throw InvariantViolation("algebra '" + label_ + "' has a zero-dimensional block");
  }
}

StarAlgebra StarAlgebra::abelian(std::size_t n) {
  return StarAlgebra("C^" + std::to_string(n), Shape(n, 1));
}

StarAlgebra StarAlgebra::full_matrix(std::size_t n) {
  return StarAlgebra("M_" + std::to_string(n), Shape{n});
}

bool StarAlgebra::is_abelian() const {
  for (std::size_t n : shape_) {
    if (n != 1) return false;
  }
  return true;
}

std::vector<BlockMatrix> StarAlgebra::matrix_units() const {
  std::vector<BlockMatrix> units;
  units.reserve(dimension());
  for (std::size_t b = 0; b < shape_.size(); ++b) {
    for (std::size_t r = 0; r < shape_[b]; ++r) {
      for (std::size_t c = 0; c < shape_[b]; ++c) units.push_back(BlockMatrix::unit(shape_, b, r, c));
    }
  }
  return units;
}

void StarAlgebra::require_element(const BlockMatrix& x) const {
  if (x.shape() != shape_) {
    throw ShapeMismatch("element of shape " + shape_to_string(x.shape()) + " in algebra '" +
                        label_ + "' of shape " + shape_to_string(shape_));
  }
}

bool is_self_adjoint(const BlockMatrix& a) { return a.adjoint() == a; }

bool is_normal(const BlockMatrix& a) {
  const BlockMatrix s = a.adjoint();
  return s * a == a * s;
}

bool is_projection(const BlockMatrix& a) { return is_self_adjoint(a) && a * a == a; }

bool commutes(const BlockMatrix& a, const BlockMatrix& b) { return a * b == b * a; }

AlgebraMap AlgebraMap::from_unit_images(const StarAlgebra& source, const StarAlgebra& target,
                                        const std::vector<BlockMatrix>& images) {
  const std::size_t n = source.dimension();
  const std::size_t m = target.dimension();
  if (images.size() != n) throw ShapeMismatch("from_unit_images(): wrong number of images");
  AlgebraMap h{source, target, std::vector<Vector>(m, Vector(n))};
  for (std::size_t j = 0; j < n; ++j) {
    target.require_element(images[j]);
    const Vector col = images[j].coordinates();
    for (std::size_t i = 0; i < m; ++i) h.matrix[i][j] = col[i];
  }
  return h;
}

AlgebraMap AlgebraMap::identity(const StarAlgebra& a) {
  const std::size_t n = a.dimension();
  AlgebraMap h{a, a, std::vector<Vector>(n, Vector(n))};
  for (std::size_t k = 0; k < n; ++k) h.matrix[k][k] = 1;
  return h;
}

void AlgebraMap::check_dimensions() const {
  const std::size_t n = source.dimension();
  if (matrix.size() != target.dimension()) {
    throw ShapeMismatch("map matrix has " + std::to_string(matrix.size()) + " rows, target '" +
                        target.label() + "' has dimension " + std::to_string(target.dimension()));
  }
  for (const auto& row : matrix) {
    if (row.size() != n) {
      throw ShapeMismatch("map matrix row has " + std::to_string(row.size()) +
                          " entries, source '" + source.label() + "' has dimension " +
                          std::to_string(n));
    }
  }
}

BlockMatrix AlgebraMap::apply(const BlockMatrix& x) const {
  source.require_element(x);
  const Vector in = x.coordinates();
  Vector out(matrix.size());
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = 0; j < in.size(); ++j) {
      if (!matrix[i][j].is_zero() && !in[j].is_zero()) out[i] += matrix[i][j] * in[j];
    }
  }
  return BlockMatrix::from_coordinates(target.shape(), out);
}

bool verify_hom(const AlgebraMap& h) {
  try {
    h.check_dimensions();
  } catch (const ShapeMismatch&) {
    return false;
  }
  if (h.apply(h.source.unit()) != h.target.unit()) return false;
  const auto units = h.source.matrix_units();
  std::vector<BlockMatrix> images;
  images.reserve(units.size());
  for (const auto& u : units) images.push_back(h.apply(u));
  for (std::size_t a = 0; a < units.size(); ++a) {
    if (h.apply(units[a].adjoint()) != images[a].adjoint()) return false;
    for (std::size_t b = 0; b < units.size(); ++b) {
      if (h.apply(units[a] * units[b]) != images[a] * images[b]) return false;
    }
  }
  return true;
}

bool verify_jordan_hom(const AlgebraMap& h) {
  try {
    h.check_dimensions();
  } catch (const ShapeMismatch&) {
    return false;
  }
  if (h.apply(h.source.unit()) != h.target.unit()) return false;
  const auto units = h.source.matrix_units();
  std::vector<BlockMatrix> images;
  images.reserve(units.size());
  for (const auto& u : units) images.push_back(h.apply(u));
  for (std::size_t a = 0; a < units.size(); ++a) {
    if (h.apply(units[a].adjoint()) != images[a].adjoint()) return false;
    for (std::size_t b = a; b < units.size(); ++b) {
      if (h.apply(jordan_product(units[a], units[b])) != jordan_product(images[a], images[b])) {
        return false;
      }
    }
  }
  return true;
}

UnitalStarHom::UnitalStarHom(AlgebraMap map) : map_(std::move(map)) {
  if (!verify_hom(map_)) {
    throw InvariantViolation("map " + map_.source.label() + " -> " + map_.target.label() +
                             " is not a unital *-homomorphism");
  }
}

UnitalStarHom compose_hom(const UnitalStarHom& g, const UnitalStarHom& f) {
  if (!(f.target() == g.source())) {
    throw ObjectMismatch("cannot compose: " + f.target().label() + " is not " + g.source().label());
  }
  const auto& a = g.map().matrix;
  const auto& b = f.map().matrix;
  const std::size_t rows = a.size();
  const std::size_t inner = b.size();
  const std::size_t cols = f.source().dimension();
  AlgebraMap h{f.source(), g.target(), std::vector<Vector>(rows, Vector(cols))};
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (!b[k][j].is_zero()) h.matrix[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return UnitalStarHom(std::move(h));
}

UnitalStarHom permutation_automorphism(const StarAlgebra& cn, const std::vector<std::size_t>& perm) {
  if (!cn.is_abelian() || perm.size() != cn.shape().size()) {
    throw ShapeMismatch("permutation_automorphism(): needs C^n and a permutation of n points");
  }
  std::vector<BlockMatrix> images;
  for (std::size_t k = 0; k < perm.size(); ++k) {
    images.push_back(BlockMatrix::unit(cn.shape(), perm.at(k), 0, 0));
  }
  return UnitalStarHom(AlgebraMap::from_unit_images(cn, cn, images));
}

UnitalStarHom diagonal_embedding(const StarAlgebra& source, const StarAlgebra& target,
                                 const std::vector<std::size_t>& blocks) {
  if (!source.is_abelian() || !target.is_abelian() || blocks.size() != target.shape().size()) {
    throw ShapeMismatch("diagonal_embedding(): needs C^m -> C^n and n block labels");
  }
  std::vector<BlockMatrix> images(source.dimension(), target.zero());
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    if (blocks[j] >= images.size()) throw ShapeMismatch("diagonal_embedding(): label out of range");
    images[blocks[j]].at(j, 0, 0) = 1;
  }
  return UnitalStarHom(AlgebraMap::from_unit_images(source, target, images));
}

}  // namespace specpresheaf
