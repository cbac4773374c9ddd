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

#include <memory>
#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "specpresheaf/bundles.hpp"
#include "specpresheaf/presheaf_morphism.hpp"

using namespace specpresheaf;
using specpresheaf::testing::kSeed;
using specpresheaf::testing::random_permutation;

namespace {

PosetPtr abelian(std::size_t n) { return std::make_shared<const ContextPoset>(full_abelian_poset(n)); }

PosetPtr resolve(const StarAlgebra& a) {
  if (!a.is_abelian()) throw MissingContext("no stored poset for " + a.label());
  return abelian(a.shape().size());
}

std::vector<UnitalStarHom> sample_homs() {
  const StarAlgebra c2 = StarAlgebra::abelian(2), c3 = StarAlgebra::abelian(3), c4 = StarAlgebra::abelian(4);
  std::vector<UnitalStarHom> homs{diagonal_embedding(c2, c3, {0, 0, 1}), diagonal_embedding(c3, c4, {0, 1, 2, 2}),
                                  diagonal_embedding(c2, c4, {1, 0, 1, 0})};
  for (const auto& h : abelian_automorphisms(3)) homs.push_back(h);
  return homs;
}

}  // namespace

TEST_SUITE("presheaf-morphisms") {

TEST_CASE("embedding C^2 -> C^3 induces the expected base map and components") {
  const PosetPtr p2 = abelian(2), p3 = abelian(3);
  const UnitalStarHom h = diagonal_embedding(StarAlgebra::abelian(2), StarAlgebra::abelian(3), {0, 0, 1});
  const PresheafMorphism m = induce_presheaf_morphism(h, p2, p3);
  REQUIRE(m.base.table.size() == 2);
  CHECK(m.base.table[0] == 0);
  // The full context of C^2 goes to the context {e0 + e1, e2}.
  const Context& image = p3->context(m.base.table[1]);
  CHECK(image.size() == 2);
  CHECK(m.is_natural());
  CHECK(m.base.is_monotone());
  CHECK_FALSE(is_presheaf_isomorphism(m));
  // Component at the full context: the character on phi(a) pulls back to a.
  for (std::size_t b = 0; b < image.size(); ++b) {
    const std::size_t a = m.components[1][b];
    CHECK(h(p2->context(1).atoms()[a]) == image.atoms()[b]);
  }
}

TEST_CASE("a non-injective hom C^3 -> C^2 is not an isomorphism") {
  const PosetPtr p3 = abelian(3), p2 = abelian(2);
  // e0 -> e0, e1 -> e1, e2 -> 0.
  const UnitalStarHom h = diagonal_embedding(StarAlgebra::abelian(3), StarAlgebra::abelian(2), {0, 1});
  const PresheafMorphism m = induce_presheaf_morphism(h, p3, p2);
  CHECK(m.is_natural());
  CHECK_FALSE(is_presheaf_isomorphism(m));
  CHECK_THROWS_AS(invert_presheaf_isomorphism(m), InvariantViolation);
}

TEST_CASE("coordinate permutations induce isomorphisms, with inverse from the inverse permutation") {
  std::mt19937 rng(kSeed + 40);
  const PosetPtr p4 = abelian(4);
  const StarAlgebra c4 = StarAlgebra::abelian(4);
  for (int trial = 0; trial < 12; ++trial) {
    const Permutation perm = random_permutation(rng, 4);
    const UnitalStarHom h = permutation_automorphism(c4, perm);
    const UnitalStarHom hinv = permutation_automorphism(c4, invert_permutation(perm));
    const PresheafMorphism m = induce_presheaf_morphism(h, p4, p4);
    CHECK(is_presheaf_isomorphism(m));
    CHECK(m.base.is_order_isomorphism());
    CHECK(invert_presheaf_isomorphism(m) == induce_presheaf_morphism(hinv, p4, p4));
    CHECK(compose_presheaf_morphisms(m, invert_presheaf_isomorphism(m)) == PresheafMorphism::identity(p4));
  }
}

TEST_CASE("S reverses composition on random pairs of automorphisms") {
  std::mt19937 rng(kSeed + 41);
  const PosetPtr p4 = abelian(4);
  const StarAlgebra c4 = StarAlgebra::abelian(4);
  for (int trial = 0; trial < 12; ++trial) {
    const UnitalStarHom f = permutation_automorphism(c4, random_permutation(rng, 4));
    const UnitalStarHom g = permutation_automorphism(c4, random_permutation(rng, 4));
    const PresheafMorphism sf = induce_presheaf_morphism(f, p4, p4);
    const PresheafMorphism sg = induce_presheaf_morphism(g, p4, p4);
    CHECK(induce_presheaf_morphism(compose_hom(g, f), p4, p4) == compose_presheaf_morphisms(sf, sg));
  }
}

TEST_CASE("composition is associative and the identity is neutral") {
  const auto homs = sample_homs();
  const PosetPtr p2 = abelian(2), p3 = abelian(3), p4 = abelian(4);
  const PresheafMorphism a = induce_presheaf_morphism(homs[0], p2, p3);
  const PresheafMorphism b = induce_presheaf_morphism(homs[4], p3, p3);
  const PresheafMorphism c = induce_presheaf_morphism(homs[1], p3, p4);
  CHECK(compose_presheaf_morphisms(a, compose_presheaf_morphisms(b, c)) ==
        compose_presheaf_morphisms(compose_presheaf_morphisms(a, b), c));
  CHECK(compose_presheaf_morphisms(PresheafMorphism::identity(p2), a) == a);
  CHECK(compose_presheaf_morphisms(a, PresheafMorphism::identity(p3)) == a);
  CHECK_THROWS_AS(compose_presheaf_morphisms(c, a), ObjectMismatch);
}

TEST_CASE("functor checks pass for S and B") {
  const auto homs = sample_homs();
  const VerificationReport s = functor_S_check(homs, resolve);
  const VerificationReport b = functor_B_check(homs, resolve);
  CHECK(s.passed());
  CHECK(b.passed());
  CHECK_FALSE(s.checks.empty());
  CHECK_FALSE(b.checks.empty());
}

TEST_CASE("dualizing the Bohrification morphism gives the presheaf morphism") {
  const auto homs = sample_homs();
  for (const auto& h : homs) {
    const PosetPtr src = resolve(h.source()), tgt = resolve(h.target());
    const CopresheafMorphism bh = induce_copresheaf_morphism(h, src, tgt);
    CHECK(bh.is_natural());
    CHECK(dualize(bh) == induce_presheaf_morphism(h, src, tgt));
  }
}

TEST_CASE("B components are the images of atoms") {
  const UnitalStarHom h = diagonal_embedding(StarAlgebra::abelian(3), StarAlgebra::abelian(4), {0, 1, 2, 2});
  const PosetPtr p3 = abelian(3), p4 = abelian(4);
  const CopresheafMorphism bh = induce_copresheaf_morphism(h, p3, p4);
  for (std::size_t c = 0; c < p3->size(); ++c) {
    const Context& image = p4->context(bh.base.table[c]);
    for (std::size_t a = 0; a < p3->context(c).size(); ++a) {
      CHECK(image.atom_sum(bh.components[c][a]) == h(p3->context(c).atoms()[a]));
    }
  }
}

TEST_CASE("a broken component is reported by the naturality witness") {
  const PosetPtr p3 = abelian(3);
  PresheafMorphism m = PresheafMorphism::identity(p3);
  CHECK(m.is_natural());
  // Swap two characters at one maximal-rank two-atom context only.
  for (std::size_t c = 0; c < p3->size(); ++c) {
    if (p3->context(c).size() == 2) {
      std::swap(m.components[c][0], m.components[c][1]);
      break;
    }
  }
  CHECK_FALSE(m.naturality_witness().empty());
}

TEST_CASE("missing image contexts are named") {
  const StarAlgebra c2 = StarAlgebra::abelian(2), c3 = StarAlgebra::abelian(3);
  const UnitalStarHom h = diagonal_embedding(c2, c3, {0, 0, 1});
  // A target poset containing only the trivial context.
  const PosetPtr bare = std::make_shared<const ContextPoset>(closure(c3, {}));
  CHECK_THROWS_AS(induce_base_map(h, abelian(2), bare), MissingContext);
}

TEST_CASE("base maps compose and report mismatched posets") {
  const PosetPtr p3 = abelian(3), p4 = abelian(4);
  const BaseMap id = BaseMap::identity(p3);
  CHECK(id.is_order_isomorphism());
  CHECK(compose_base_maps(id, id) == id);
  CHECK_THROWS_AS(compose_base_maps(id, BaseMap::identity(p4)), ObjectMismatch);
}

}  // TEST_SUITE
