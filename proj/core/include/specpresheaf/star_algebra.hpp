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

#include <string>
#include <vector>

#include "specpresheaf/block_matrix.hpp"
#include "specpresheaf/linear_algebra.hpp"

namespace specpresheaf {

// A finite-dimensional unital *-algebra M_{n_1} (+) ... (+) M_{n_k}.
class StarAlgebra {
 public:
  StarAlgebra(std::string label, Shape shape);

  // C^n: n one-dimensional blocks.
  static StarAlgebra abelian(std::size_t n);
  // M_n: one n x n block.
  static StarAlgebra full_matrix(std::size_t n);

  const std::string& label() const { return label_; }
  const Shape& shape() const { return shape_; }
  std::size_t dimension() const { return coordinate_dimension(shape_); }
  bool is_abelian() const;

  BlockMatrix unit() const { return BlockMatrix::identity(shape_); }
  BlockMatrix zero() const { return BlockMatrix::zero(shape_); }
  // Matrix units of every block, in coordinate order; a multiplicative basis.
  std::vector<BlockMatrix> matrix_units() const;

  // Throws ShapeMismatch if x does not live in this algebra.
  void require_element(const BlockMatrix& x) const;

  friend bool operator==(const StarAlgebra&, const StarAlgebra&) = default;

 private:
  std::string label_;
  Shape shape_;
};

bool is_self_adjoint(const BlockMatrix& a);
bool is_normal(const BlockMatrix& a);
bool is_projection(const BlockMatrix& a);
// Throws ShapeMismatch on differing shapes.
bool commutes(const BlockMatrix& a, const BlockMatrix& b);

// A candidate linear map between algebras, as a dim(target) x dim(source)
// matrix acting on coordinate vectors. Not necessarily a homomorphism.
struct AlgebraMap {
  StarAlgebra source;
  StarAlgebra target;
  std::vector<Vector> matrix;  // rows indexed by target coordinates

  // Builds the map from the images of the source's standard coordinate units.
  static AlgebraMap from_unit_images(const StarAlgebra& source, const StarAlgebra& target,
                                     const std::vector<BlockMatrix>& images);
  static AlgebraMap identity(const StarAlgebra& a);

  BlockMatrix apply(const BlockMatrix& x) const;
  // Throws ShapeMismatch if matrix dimensions disagree with the algebras.
  void check_dimensions() const;

  friend bool operator==(const AlgebraMap&, const AlgebraMap&) = default;
};

// True iff h(1) = 1 and h is multiplicative and *-preserving on all pairs of
// matrix units of the source. Dimension mismatch yields false.
bool verify_hom(const AlgebraMap& h);

// True iff h(1) = 1, h(x*) = h(x)* and h(x o y) = h(x) o h(y) on all pairs of
// matrix units (o the Jordan product).
bool verify_jordan_hom(const AlgebraMap& h);

// A verified unital *-homomorphism.
class UnitalStarHom {
 public:
  // Throws InvariantViolation if verify_hom fails.
  explicit UnitalStarHom(AlgebraMap map);
  static UnitalStarHom identity(const StarAlgebra& a) {
    return UnitalStarHom(AlgebraMap::identity(a));
  }

  const StarAlgebra& source() const { return map_.source; }
  const StarAlgebra& target() const { return map_.target; }
  const AlgebraMap& map() const { return map_; }
  BlockMatrix operator()(const BlockMatrix& x) const { return map_.apply(x); }

  friend bool operator==(const UnitalStarHom&, const UnitalStarHom&) = default;

 private:
  AlgebraMap map_;
};

// g o f. Throws ObjectMismatch unless f.target() == g.source().
UnitalStarHom compose_hom(const UnitalStarHom& g, const UnitalStarHom& f);

// The coordinate permutation x_k -> x_{perm^{-1}(k)} on C^n, i.e. the *-automorphism
// sending the k-th minimal projection to the perm[k]-th one.
UnitalStarHom permutation_automorphism(const StarAlgebra& cn, const std::vector<std::size_t>& perm);

// Embedding C^m -> C^n sending e_k to the sum of e_j with blocks[j] == k.
UnitalStarHom diagonal_embedding(const StarAlgebra& source, const StarAlgebra& target,
                                 const std::vector<std::size_t>& blocks);

}  // namespace specpresheaf
