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

#include <functional>
#include <span>
#include <vector>

#include "specpresheaf/context_poset.hpp"
#include "specpresheaf/report.hpp"
#include "specpresheaf/spectral_presheaf.hpp"
#include "specpresheaf/star_algebra.hpp"

namespace specpresheaf {

// Monotone map between context posets, as a table of context indices.
struct BaseMap {
  PosetPtr source;
  PosetPtr target;
  std::vector<std::size_t> table;

  static BaseMap identity(const PosetPtr& poset);
  static BaseMap from_permutation(const PosetPtr& poset, Permutation perm);

  bool is_monotone() const;
  // Monotone bijection with monotone inverse.
  bool is_order_isomorphism() const;

  friend bool operator==(const BaseMap& a, const BaseMap& b) {
    return a.table == b.table && same_poset(a.source, b.source) && same_poset(a.target, b.target);
  }
};

// second o first; throws ObjectMismatch when first.target != second.source.
BaseMap compose_base_maps(const BaseMap& second, const BaseMap& first);

// A morphism from the spectral presheaf over base.target to the one over
// base.source (contravariant in the base map). components[c] maps each
// character (atom index) of context base.table[c] of the target poset to a
// character of context c of the source poset.
struct PresheafMorphism {
  BaseMap base;
  std::vector<std::vector<std::size_t>> components;

  static PresheafMorphism identity(const PosetPtr& poset);

  // Naturality square for every stored pair C' <= C; returns the first
  // failing pair as text, or empty on success.
  std::string naturality_witness() const;
  bool is_natural() const { return naturality_witness().empty(); }

  friend bool operator==(const PresheafMorphism&, const PresheafMorphism&) = default;
};

// The image context phi(C) for every C; throws MissingContext naming the
// context when an image is absent from the target poset (extend the target's
// generators and re-run closure).
BaseMap induce_base_map(const UnitalStarHom& h, const PosetPtr& source, const PosetPtr& target);

// <Phi, G_phi>: the component at C sends a character of phi(C) to its
// precomposition with phi restricted to C.
PresheafMorphism induce_presheaf_morphism(const UnitalStarHom& h, const PosetPtr& source,
                                          const PosetPtr& target);

// Arrow composition outer o inner, where inner : P3 -> P2 and outer : P2 -> P1
// (presheaf direction). The base maps compose as inner.base o outer.base and
// (outer o inner)_J = outer_J o inner_{H(J)}.
PresheafMorphism compose_presheaf_morphisms(const PresheafMorphism& outer, const PresheafMorphism& inner);

bool is_presheaf_isomorphism(const PresheafMorphism& m);
// Inverse of an isomorphism; throws InvariantViolation otherwise.
PresheafMorphism invert_presheaf_isomorphism(const PresheafMorphism& m);

// <phi~, phi> on Bohrifications: components[c][a] lists the atoms of
// base.table[c] whose sum is phi(atom a of c) (empty when phi kills it).
struct CopresheafMorphism {
  BaseMap base;
  std::vector<std::vector<std::vector<std::size_t>>> components;

  static CopresheafMorphism identity(const PosetPtr& poset);
  std::string naturality_witness() const;
  bool is_natural() const { return naturality_witness().empty(); }

  friend bool operator==(const CopresheafMorphism&, const CopresheafMorphism&) = default;
};

CopresheafMorphism induce_copresheaf_morphism(const UnitalStarHom& h, const PosetPtr& source,
                                              const PosetPtr& target);
// Covariant composite second o first.
CopresheafMorphism compose_copresheaf_morphisms(const CopresheafMorphism& second,
                                                const CopresheafMorphism& first);
// Componentwise Gelfand duality: the character b of phi(C) goes to the unique
// atom a of C with b among phi(a)'s atoms.
PresheafMorphism dualize(const CopresheafMorphism& m);

// Supplies the stored poset for an algebra.
using PosetResolver = std::function<PosetPtr(const StarAlgebra&)>;

// S(id) = id and S(g o f) = S(f) o S(g) for all composable pairs in `homs`.
VerificationReport functor_S_check(std::span<const UnitalStarHom> homs, const PosetResolver& posets);
// B(id) = id, B(g o f) = B(g) o B(f), components equal phi on atoms, and
// dualizing B(f) reproduces S(f).
VerificationReport functor_B_check(std::span<const UnitalStarHom> homs, const PosetResolver& posets);

}  // namespace specpresheaf
