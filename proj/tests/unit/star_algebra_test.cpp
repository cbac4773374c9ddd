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

#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "specpresheaf/block_matrix.hpp"
#include "specpresheaf/bundles.hpp"
#include "specpresheaf/error.hpp"
#include "specpresheaf/star_algebra.hpp"

using namespace specpresheaf;
using specpresheaf::testing::kSeed;

namespace {

GaussianRational q(std::int64_t n, std::int64_t d = 1) { return GaussianRational::fraction(n, d); }

BlockMatrix diag(std::initializer_list<GaussianRational> d) { return BlockMatrix::diagonal(std::vector<GaussianRational>(d)); }

}  // namespace

TEST_SUITE("star-algebra") {

TEST_CASE("element predicates") {
  CHECK(is_projection(BlockMatrix::identity({2, 1})));
  const BlockMatrix d = diag({q(1), GaussianRational::i()});
  CHECK(is_normal(d));
  CHECK_FALSE(is_projection(d));
  // Upper-triangular nilpotent: not normal.
  CHECK_FALSE(is_normal(BlockMatrix::square({{q(0), q(1)}, {q(0), q(0)}})));
  CHECK_THROWS_AS(commutes(BlockMatrix::identity({2}), BlockMatrix::identity({1, 1})), ShapeMismatch);
}

TEST_CASE("X(x)I and I(x)X commute, X(x)I and Z(x)Z do not") {
  CHECK(commutes(pauli_word("XI"), pauli_word("IX")));
  CHECK_FALSE(commutes(pauli_word("XI"), pauli_word("ZZ")));
  // They anticommute.
  CHECK(pauli_word("XI") * pauli_word("ZZ") == GaussianRational(-1) * (pauli_word("ZZ") * pauli_word("XI")));
}

TEST_CASE("commutes is symmetric, projections are normal, the unit is central") {
  std::mt19937 rng(kSeed + 10);
  for (int trial = 0; trial < 30; ++trial) {
    const Shape shape = testing::random_shape(rng, 2, 2);
    const BlockMatrix a = testing::random_matrix(rng, shape);
    const BlockMatrix b = trial % 3 == 0 ? a * a : testing::random_matrix(rng, shape);
    CHECK(commutes(a, b) == commutes(b, a));
    CHECK(commutes(a, BlockMatrix::identity(shape)));
  }
  for (const char* w : {"XI", "ZZ", "XY"}) {
    BlockMatrix p = BlockMatrix::identity({4}) + pauli_word(w);
    p *= q(1, 2);
    CHECK(is_projection(p));
    CHECK(is_normal(p));
  }
}

TEST_CASE("verify_hom examples") {
  const StarAlgebra c2 = StarAlgebra::abelian(2), c3 = StarAlgebra::abelian(3);
  CHECK(verify_hom(AlgebraMap::identity(c3)));

  // (a,b) -> (a,a,b)
  const AlgebraMap aab = AlgebraMap::from_unit_images(c2, c3, {diag({q(1), q(1), q(0)}), diag({q(0), q(0), q(1)})});
  CHECK(verify_hom(aab));

  // (a,b) -> (a,b,0) is not unital.
  const AlgebraMap ab0 = AlgebraMap::from_unit_images(c2, c3, {diag({q(1), q(0), q(0)}), diag({q(0), q(1), q(0)})});
  CHECK_FALSE(verify_hom(ab0));
  CHECK_THROWS_AS(UnitalStarHom{ab0}, InvariantViolation);

  // (a,b) -> (2a, b) is not multiplicative.
  const AlgebraMap scaled = AlgebraMap::from_unit_images(c2, c2, {diag({q(2), q(0)}), diag({q(0), q(1)})});
  CHECK_FALSE(verify_hom(scaled));

  // Transpose on M_2 is a Jordan automorphism but not a *-homomorphism.
  const StarAlgebra m2 = StarAlgebra::full_matrix(2);
  std::vector<BlockMatrix> images;
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) images.push_back(BlockMatrix::unit({2}, 0, c, r));
  }
  const AlgebraMap transpose = AlgebraMap::from_unit_images(m2, m2, images);
  CHECK_FALSE(verify_hom(transpose));
  CHECK(verify_jordan_hom(transpose));
}

TEST_CASE("compose_hom examples") {
  const StarAlgebra c2 = StarAlgebra::abelian(2), c3 = StarAlgebra::abelian(3), c4 = StarAlgebra::abelian(4);
  const UnitalStarHom f = diagonal_embedding(c2, c3, {0, 0, 1});
  const UnitalStarHom g = diagonal_embedding(c3, c4, {0, 1, 2, 2});
  CHECK(compose_hom(UnitalStarHom::identity(c3), f) == f);
  // (a,b) -> (a,a,b) then (x,y,z) -> (x,y,z,z) is (a,b) -> (a,a,b,b).
  CHECK(compose_hom(g, f) == diagonal_embedding(c2, c4, {0, 0, 1, 1}));
  CHECK_THROWS_AS(compose_hom(f, g), ObjectMismatch);

  const UnitalStarHom swap = permutation_automorphism(c2, {1, 0});
  CHECK(compose_hom(swap, swap) == UnitalStarHom::identity(c2));
}

TEST_CASE("composites of verified homs verify") {
  std::mt19937 rng(kSeed + 11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const StarAlgebra cn = StarAlgebra::abelian(n);
    const UnitalStarHom a = permutation_automorphism(cn, testing::random_permutation(rng, n));
    const UnitalStarHom b = permutation_automorphism(cn, testing::random_permutation(rng, n));
    CHECK(verify_hom(compose_hom(a, b).map()));
    const BlockMatrix x = testing::random_diagonal(rng, n);
    CHECK(compose_hom(a, b)(x) == a(b(x)));
  }
  for (const auto& h : m2fan_automorphisms()) {
    for (const auto& k : m2fan_automorphisms()) CHECK(verify_hom(compose_hom(h, k).map()));
  }
}

TEST_CASE("permutation_automorphism moves minimal projections as documented") {
  const StarAlgebra c3 = StarAlgebra::abelian(3);
  const UnitalStarHom h = permutation_automorphism(c3, {1, 2, 0});
  CHECK(h(diag({q(1), q(0), q(0)})) == diag({q(0), q(1), q(0)}));
  CHECK(h(diag({q(5), q(6), q(7)})) == diag({q(7), q(5), q(6)}));
}

TEST_CASE("algebra shape validation") {
  CHECK_THROWS(StarAlgebra("empty", {}));
  CHECK_THROWS(StarAlgebra("zero block", {2, 0}));
  CHECK(StarAlgebra::abelian(3).is_abelian());
  CHECK_FALSE(StarAlgebra::full_matrix(2).is_abelian());
  CHECK(StarAlgebra::full_matrix(3).dimension() == 9);
}

}  // TEST_SUITE
