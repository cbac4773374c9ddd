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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "specpresheaf/context_poset.hpp"
#include "specpresheaf/limits.hpp"
#include "specpresheaf/ortho_lattice.hpp"
#include "specpresheaf/presheaf_morphism.hpp"
#include "specpresheaf/report.hpp"
#include "specpresheaf/star_algebra.hpp"

namespace specpresheaf {

// An isomorphism of partial algebras between the stored contexts of two
// algebras: the base map C -> gamma(C) plus, per context, the atom bijection
// kappa[C][a] = index of the image atom inside gamma(C).
struct PartialAlgebraIso {
  BaseMap base;
  std::vector<std::vector<std::size_t>> kappa;

  static PartialAlgebraIso identity(const PosetPtr& poset);

  const StarAlgebra& source() const { return base.source->algebra(); }
  const StarAlgebra& target() const { return base.target->algebra(); }

  // Image of atom a of context c, as a projection of the target algebra.
  const BlockMatrix& image_atom(std::size_t c, std::size_t a) const;

  // Empty when valid: base is an order isomorphism, every kappa_C is a
  // bijection, and for every stored C' <= C the images agree on the atoms of
  // C' (each is the sum of the images of the atoms of C below it).
  std::string validity_witness() const;
  bool is_valid() const { return validity_witness().empty(); }

  // Expands x in the atom basis of a stored context containing it and pushes
  // the coefficients through kappa. nullopt when no stored context has x.
  std::optional<BlockMatrix> try_apply(const BlockMatrix& x) const;
  // As try_apply; throws InvariantViolation when x lies in no stored context.
  BlockMatrix apply(const BlockMatrix& x) const;

  // Flattened tables, for hashing and group bookkeeping.
  std::vector<std::size_t> key() const;

  friend bool operator==(const PartialAlgebraIso&, const PartialAlgebraIso&) = default;
};

// second o first; throws ObjectMismatch unless first.target == second.source.
PartialAlgebraIso compose_partial_isos(const PartialAlgebraIso& second, const PartialAlgebraIso& first);
PartialAlgebraIso invert_partial_iso(const PartialAlgebraIso& t);

// kappa_C is the inverse of the character bijection iota_C. Throws
// InvariantViolation when m is not an isomorphism.
PartialAlgebraIso partial_iso_from_presheaf_iso(const PresheafMorphism& m);
// iota_C(lambda) = lambda o T|_C, i.e. the inverse of kappa_C on atoms.
PresheafMorphism presheaf_iso_from_partial_iso(const PartialAlgebraIso& t);

// Restriction of a linear map (e.g. a *- or Jordan automorphism) to the
// stored contexts. Throws MissingContext when an image context is not stored,
// InvariantViolation when an atom is not sent to a nonzero projection.
PartialAlgebraIso partial_iso_from_map(const AlgebraMap& h, const PosetPtr& source, const PosetPtr& target);

// Lattice bijection: index of T(p) in `target` for every p of `source`.
Permutation lattice_iso_from_partial_iso(const PartialAlgebraIso& t, const OrthoLattice& source,
                                         const OrthoLattice& target);

// Where the elements of lattice_from_algebra(poset) live: one (context, atom
// set) chart per element and the lattice index of every atom set of every
// context. Lets lattice maps be read off kappa without re-solving coordinates.
struct LatticeAtlas {
  std::vector<std::pair<std::size_t, std::uint64_t>> chart;
  std::vector<std::vector<std::size_t>> index;  // [context][atom mask]
};
LatticeAtlas lattice_atlas(const ContextPoset& poset, const OrthoLattice& lattice);
Permutation lattice_iso_from_partial_iso(const PartialAlgebraIso& t, const LatticeAtlas& source,
                                         const LatticeAtlas& target);
// Builds T(sum a_i p_i) = sum a_i l(p_i) on every stored context. Throws
// LatticeLawViolation (with the pair of lattice indices) when l is not a
// bijection, breaks complements, breaks the order, or breaks a commuting sum;
// MissingContext when an image context is not stored.
PartialAlgebraIso extend_lattice_iso(const Permutation& l, const OrthoLattice& source,
                                     const OrthoLattice& target, const PosetPtr& source_poset,
                                     const PosetPtr& target_poset);
// Same laws, with the commuting sums read from the atlases instead of
// recomputed as matrices.
PartialAlgebraIso extend_lattice_iso(const Permutation& l, const OrthoLattice& source,
                                     const OrthoLattice& target, const LatticeAtlas& source_atlas,
                                     const LatticeAtlas& target_atlas, const PosetPtr& source_poset,
                                     const PosetPtr& target_poset);

// The linear map on span(all stored atoms) determined by a partial iso, when
// the atom images are consistent with every linear relation among atoms.
struct LinearExtension {
  bool consistent = false;
  std::string witness;               // first inconsistent relation when !consistent
  std::vector<BlockMatrix> basis;    // independent atoms
  std::vector<BlockMatrix> images;   // their images
  Shape target_shape;
  std::optional<BlockMatrix> apply(const BlockMatrix& x) const;
};
LinearExtension linear_extension(const PartialAlgebraIso& t);

enum class ProductKind { Associative, Jordan };
// Extends the linear map to the algebra generated by the atoms under the
// chosen product, checking the product law at every step. Returns the map
// when the generated algebra is everything and the result passes
// verify_hom (Associative) or verify_jordan_hom (Jordan).
std::optional<AlgebraMap> extend_to_algebra_map(const PartialAlgebraIso& t, ProductKind kind,
                                                std::string* why = nullptr);

// A partial iso, considered on self-adjoint elements.
struct QuasiJordanIso {
  PartialAlgebraIso map;
};

struct QuasiJordanReport {
  bool unital = false;
  bool per_context_jordan = false;
  bool globally_linear = false;
  std::size_t contexts_checked = 0;
  std::size_t samples_evaluated = 0;  // pairs with x, y and x + y in stored contexts
  std::size_t samples_additive = 0;
  std::size_t samples_skipped = 0;
  std::vector<std::string> witnesses;
  bool passed() const { return unital && per_context_jordan; }
};
// Per-context Jordan laws on atom bases, unit, self-adjointness; global
// linearity from the atom span and from the sampled pairs.
QuasiJordanReport verify_quasi_jordan(const QuasiJordanIso& q,
                                      std::span<const std::pair<BlockMatrix, BlockMatrix>> samples = {});

// All per-context atom bijections compatible with gamma and natural across
// the stored order, found by exhaustive backtracking over the maximal
// contexts (ties broken by canonical atom order). Throws InvariantViolation
// when gamma is not an order isomorphism.
std::vector<PartialAlgebraIso> compatible_partial_isos(const BaseMap& gamma);
// First witness of compatible_partial_isos, or nullopt when the exhaustive
// search finds none.
std::optional<PartialAlgebraIso> order_iso_to_partial_iso_search(const BaseMap& gamma);

// All presheaf isomorphisms with base map gamma, found independently of the
// above at the level of character tables.
std::vector<PresheafMorphism> presheaf_isos_over(const BaseMap& gamma);
// Aut(Sigma): presheaf_isos_over every order automorphism.
std::vector<PresheafMorphism> presheaf_automorphisms(const PosetPtr& poset,
                                                     const SizeLimits& limits = SizeLimits::from_environment());
// All Jordan automorphisms of C^n, via bijections of minimal projections
// filtered by verify_jordan_hom. Throws ObjectMismatch for non-abelian input.
std::vector<AlgebraMap> jordan_automorphisms_abelian(const StarAlgebra& cn);

// Group products used throughout: a * b = a o b for maps, and for presheaf
// automorphisms the product of the opposite arrow category,
// m1 * m2 = compose_presheaf_morphisms(m1, m2).
PresheafMorphism presheaf_group_product(const PresheafMorphism& m1, const PresheafMorphism& m2);

struct AutGroupReport {
  std::string algebra;
  std::size_t contexts = 0;
  std::size_t order_automorphisms = 0;
  std::size_t presheaf_automorphisms = 0;
  std::size_t partial_automorphisms = 0;
  std::size_t algebra_induced_partial_automorphisms = 0;
  std::optional<std::size_t> lattice_elements;
  std::optional<std::size_t> lattice_automorphisms;
  std::optional<std::size_t> jordan_automorphisms;
  std::size_t supplied_algebra_automorphisms = 0;
  // Compatible families per order automorphism, in Aut_ord order.
  std::vector<std::size_t> witnesses_per_order_automorphism;
  bool rigid = false;
  VerificationReport checks;
};

// Computes every group, checks the isomorphisms between them by explicit
// maps (on generator pairs), contravariance of Aut(Sigma) -> Aut_part, and
// injectivity plus order reversal of Aut(A) -> Aut(Sigma) on the supplied
// *-automorphisms.
AutGroupReport aut_groups(const PosetPtr& poset, std::span<const UnitalStarHom> algebra_automorphisms = {},
                          const SizeLimits& limits = SizeLimits::from_environment());

// Roundtrips presheaf iso <-> partial iso <-> lattice iso over every element
// of Aut(Sigma), plus contravariance on generator pairs.
VerificationReport correspondence_roundtrips(const PosetPtr& poset,
                                             const SizeLimits& limits = SizeLimits::from_environment());

}  // namespace specpresheaf
