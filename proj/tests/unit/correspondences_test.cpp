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
#include "specpresheaf/correspondences.hpp"

using namespace specpresheaf;
using specpresheaf::testing::kSeed;

namespace {

PosetPtr shared(ContextPoset p) { return std::make_shared<const ContextPoset>(std::move(p)); }

BlockMatrix diag(std::initializer_list<std::int64_t> v) {
  std::vector<GaussianRational> e;
  for (auto x : v) e.emplace_back(x);
  return BlockMatrix::diagonal(e);
}

}  // namespace

TEST_SUITE("correspondences") {

TEST_CASE("the 3-cycle on C^3 acts as diag(a,b,c) -> diag(c,a,b)") {
  const PosetPtr p3 = shared(full_abelian_poset(3));
  const UnitalStarHom cycle = permutation_automorphism(StarAlgebra::abelian(3), {1, 2, 0});
  const PartialAlgebraIso t = partial_iso_from_map(cycle.map(), p3, p3);
  CHECK(t.is_valid());
  CHECK(t.apply(diag({1, 2, 3})) == diag({3, 1, 2}));
  CHECK(t.apply(diag({5, -1, 0})) == diag({0, 5, -1}));
}

TEST_CASE("random diagonals: the partial iso of a permutation agrees with the permutation") {
  std::mt19937 rng(kSeed + 50);
  const PosetPtr p4 = shared(full_abelian_poset(4));
  const StarAlgebra c4 = StarAlgebra::abelian(4);
  for (int trial = 0; trial < 20; ++trial) {
    const UnitalStarHom h = permutation_automorphism(c4, testing::random_permutation(rng, 4));
    const PartialAlgebraIso t = partial_iso_from_map(h.map(), p4, p4);
    const BlockMatrix x = testing::random_diagonal(rng, 4);
    CHECK(t.apply(x) == h(x));
  }
}

TEST_CASE("presheaf iso and partial iso roundtrip on every element of Aut(Sigma)") {
  for (const std::string name : {"c3", "c4", "m2fan"}) {
    CAPTURE(name);
    const PosetPtr p = shared(bundle_poset(name));
    for (const auto& m : presheaf_automorphisms(p)) {
      const PartialAlgebraIso t = partial_iso_from_presheaf_iso(m);
      CHECK(t.is_valid());
      CHECK(presheaf_iso_from_partial_iso(t) == m);
    }
    CHECK(correspondence_roundtrips(p).passed());
  }
}

TEST_CASE("projection lattices: 2^n for C^n and 68 for Mermin-Peres") {
  for (std::size_t n = 1; n <= 5; ++n) {
    CAPTURE(n);
    const OrthoLattice l = lattice_from_algebra(full_abelian_poset(n));
    CHECK(l.size() == (std::size_t{1} << n));
    CHECK(l.orthomodular_witness().empty());
  }
  const OrthoLattice mp = lattice_from_algebra(mermin_peres_poset());
  CHECK(mp.size() == 68);
  // A Bell atom of one diagonal context lies below the complement of an atom
  // of the other, but their rank-2 difference is no atom sum of any stored
  // context: the 16-context family is not orthomodular, unlike P(M_4).
  CHECK(mp.orthomodular_witness() == "q ^ p' missing for (1, 44)");
  CHECK(lattice_from_algebra(m2fan_poset()).orthomodular_witness().empty());
  CHECK(lattice_automorphisms(lattice_from_algebra(full_abelian_poset(3))).size() == 6);
}

TEST_CASE("lattice isos extend to partial isos and back") {
  const PosetPtr p = shared(m2fan_poset());
  const OrthoLattice l = lattice_from_algebra(*p);
  const LatticeAtlas atlas = lattice_atlas(*p, l);
  for (const auto& t : compatible_partial_isos(BaseMap::identity(p))) {
    const Permutation perm = lattice_iso_from_partial_iso(t, l, l);
    CHECK(perm == lattice_iso_from_partial_iso(t, atlas, atlas));
    CHECK(extend_lattice_iso(perm, l, l, p, p) == t);
    CHECK(extend_lattice_iso(perm, l, l, atlas, atlas, p, p) == t);
  }
}

TEST_CASE("a bijection breaking complements is rejected with the offending pair") {
  const PosetPtr p = shared(full_abelian_poset(3));
  const OrthoLattice l = lattice_from_algebra(*p);
  // Swap an atom with a coatom that is not its complement.
  std::size_t atom = l.size(), coatom = l.size();
  for (std::size_t i = 0; i < l.size(); ++i) {
    const auto tr = l.element(i).trace();
    if (atom == l.size() && tr == GaussianRational(1)) atom = i;
  }
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l.element(i).trace() == GaussianRational(2) && i != l.complement(atom)) coatom = i;
  }
  REQUIRE(atom < l.size());
  REQUIRE(coatom < l.size());
  Permutation perm = identity_permutation(l.size());
  std::swap(perm[atom], perm[coatom]);
  CHECK_THROWS_AS(extend_lattice_iso(perm, l, l, p, p), LatticeLawViolation);
  const LatticeAtlas atlas = lattice_atlas(*p, l);
  CHECK_THROWS_AS(extend_lattice_iso(perm, l, l, atlas, atlas, p, p), LatticeLawViolation);
}

TEST_CASE("permutation partial isos extend to *-automorphisms") {
  const PosetPtr p3 = shared(full_abelian_poset(3));
  for (const auto& h : abelian_automorphisms(3)) {
    const PartialAlgebraIso t = partial_iso_from_map(h.map(), p3, p3);
    const auto ext = extend_to_algebra_map(t, ProductKind::Associative);
    REQUIRE(ext.has_value());
    CHECK(*ext == h.map());
    CHECK(linear_extension(t).consistent);
  }
}

TEST_CASE("the m2fan patchwork is quasi-Jordan but not globally linear") {
  const PosetPtr p = shared(m2fan_poset());
  const PartialAlgebraIso t = m2fan_patchwork(p);
  CHECK(t.is_valid());
  const auto samples = m2fan_samples();
  const QuasiJordanReport r = verify_quasi_jordan(QuasiJordanIso{t}, samples);
  CHECK(r.passed());
  CHECK(r.unital);
  CHECK(r.per_context_jordan);
  CHECK_FALSE(r.globally_linear);
  CHECK(r.samples_evaluated > 0);
  CHECK(r.samples_additive < r.samples_evaluated);
  CHECK_FALSE(extend_to_algebra_map(t, ProductKind::Associative).has_value());
  CHECK_FALSE(extend_to_algebra_map(t, ProductKind::Jordan).has_value());
}

TEST_CASE("m2fan *-automorphisms are quasi-Jordan and globally linear") {
  const PosetPtr p = shared(m2fan_poset());
  for (const auto& h : m2fan_automorphisms()) {
    const QuasiJordanReport r = verify_quasi_jordan(QuasiJordanIso{partial_iso_from_map(h.map(), p, p)}, m2fan_samples());
    CHECK(r.passed());
    CHECK(r.globally_linear);
    CHECK(r.samples_additive == r.samples_evaluated);
  }
}

TEST_CASE("two independent searches give the same number of isos per order automorphism") {
  for (const std::string name : {"c3", "c4", "m2fan"}) {
    CAPTURE(name);
    const PosetPtr p = shared(bundle_poset(name));
    for (const auto& perm : order_automorphisms(*p)) {
      const BaseMap g = BaseMap::from_permutation(p, perm);
      CHECK(compatible_partial_isos(g).size() == presheaf_isos_over(g).size());
    }
  }
}

TEST_CASE("Aut(Sigma) sizes match the brute-force oracle") {
  // The oracle tries every permutation of contexts, so C^4 (15 contexts) is out of reach.
  for (const std::string name : {"c2", "c3", "m2fan"}) {
    CAPTURE(name);
    const PosetPtr p = shared(bundle_poset(name));
    CHECK(presheaf_automorphisms(p).size() == oracle::count_presheaf_automorphisms(p->contexts()));
  }
}

TEST_CASE("Jordan automorphisms of C^n match the 0/1 matrix oracle") {
  for (std::size_t n = 1; n <= 4; ++n) {
    CAPTURE(n);
    CHECK(jordan_automorphisms_abelian(StarAlgebra::abelian(n)).size() == oracle::count_jordan_automorphisms_cn(n));
  }
  CHECK_THROWS_AS(jordan_automorphisms_abelian(StarAlgebra::full_matrix(2)), ObjectMismatch);
}

TEST_CASE("C^2: one order automorphism, two partial isos") {
  const AutGroupReport r = aut_groups(shared(full_abelian_poset(2)), abelian_automorphisms(2));
  CHECK(r.order_automorphisms == 1);
  CHECK(r.partial_automorphisms == 2);
  CHECK(r.presheaf_automorphisms == 2);
  CHECK(r.jordan_automorphisms == std::optional<std::size_t>(2));
  CHECK(r.witnesses_per_order_automorphism == std::vector<std::size_t>{2});
  CHECK_FALSE(r.rigid);
  CHECK(r.checks.passed());
}

TEST_CASE("C^3 and C^4 are rigid and all groups have order n!") {
  for (std::size_t n : {3, 4}) {
    CAPTURE(n);
    const AutGroupReport r = aut_groups(shared(full_abelian_poset(n)), abelian_automorphisms(n));
    const std::size_t fact = n == 3 ? 6 : 24;
    CHECK(r.order_automorphisms == fact);
    CHECK(r.presheaf_automorphisms == fact);
    CHECK(r.partial_automorphisms == fact);
    CHECK(r.lattice_automorphisms == std::optional<std::size_t>(fact));
    CHECK(r.jordan_automorphisms == std::optional<std::size_t>(fact));
    CHECK(r.algebra_induced_partial_automorphisms == fact);
    CHECK(r.rigid);
    CHECK(r.checks.passed());
  }
}

TEST_CASE("m2fan: six order automorphisms, only two from algebra automorphisms") {
  const AutGroupReport r = aut_groups(shared(m2fan_poset()), m2fan_automorphisms());
  CHECK(r.order_automorphisms == 6);
  CHECK(r.presheaf_automorphisms == 48);
  CHECK(r.partial_automorphisms == 48);
  CHECK(r.lattice_automorphisms == std::optional<std::size_t>(48));
  CHECK(r.algebra_induced_partial_automorphisms == 2);
  CHECK(r.order_automorphisms > r.algebra_induced_partial_automorphisms);
  for (std::size_t w : r.witnesses_per_order_automorphism) CHECK(w == 8);
  CHECK(r.checks.passed());
}

TEST_CASE("order_iso_to_partial_iso_search finds a witness for each order automorphism of C^4") {
  const PosetPtr p = shared(full_abelian_poset(4));
  for (const auto& perm : order_automorphisms(*p)) {
    const auto t = order_iso_to_partial_iso_search(BaseMap::from_permutation(p, perm));
    REQUIRE(t.has_value());
    CHECK(t->is_valid());
    CHECK(t->base.table == perm);
  }
}

TEST_CASE("C^5 is rigid: one family over each of its 120 order automorphisms") {
  const PosetPtr p = shared(full_abelian_poset(5));
  const auto autos = order_automorphisms(*p);
  CHECK(autos.size() == 120);
  for (const auto& perm : autos) CHECK(compatible_partial_isos(BaseMap::from_permutation(p, perm)).size() == 1);
}

TEST_CASE("compose and invert partial isos") {
  const PosetPtr p3 = shared(full_abelian_poset(3));
  const auto homs = abelian_automorphisms(3);
  for (const auto& f : homs) {
    for (const auto& g : homs) {
      const PartialAlgebraIso tf = partial_iso_from_map(f.map(), p3, p3);
      const PartialAlgebraIso tg = partial_iso_from_map(g.map(), p3, p3);
      CHECK(compose_partial_isos(tg, tf) == partial_iso_from_map(compose_hom(g, f).map(), p3, p3));
    }
    const PartialAlgebraIso t = partial_iso_from_map(f.map(), p3, p3);
    CHECK(compose_partial_isos(invert_partial_iso(t), t) == PartialAlgebraIso::identity(p3));
  }
}

}  // TEST_SUITE
