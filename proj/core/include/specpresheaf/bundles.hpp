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

#include "specpresheaf/context_poset.hpp"
#include "specpresheaf/correspondences.hpp"
#include "specpresheaf/star_algebra.hpp"

namespace specpresheaf {

// Pauli matrices I, X, Y, Z by letter.
BlockMatrix pauli(char letter);
// Tensor product of Pauli letters, e.g. "XY" = X (x) Y on C^4.
BlockMatrix pauli_word(const std::string& word);

// The six maximal contexts of the Mermin-Peres square in M_4 (three rows,
// then three columns), each generated by its three commuting observables.
std::vector<Context> mermin_peres_generators();
ContextPoset mermin_peres_poset();

// Three maximal contexts of M_2 spanned by the Bloch axes Z, X and
// n = (3/5, 0, 4/5): projections (1 +- n.sigma)/2. The axes are not mutually
// orthogonal, so the only *-automorphisms keeping the family are the identity
// and the rotation by pi about y.
std::vector<Context> m2fan_generators();
ContextPoset m2fan_poset();

// *-automorphisms of M_2 preserving the fan: conjugation by I and by Y.
std::vector<UnitalStarHom> m2fan_automorphisms();

// Swaps the two atoms of the Z context and fixes the X and n contexts:
// linear (indeed a *-automorphism) on each context, but not additive across
// them. `poset` must be the m2fan poset.
PartialAlgebraIso m2fan_patchwork(const PosetPtr& poset);
// Noncommuting self-adjoint pairs (x, y) with x, y and x + y in stored
// contexts: x = 3/5 P_X - 1/10, y = 4/5 P_Z - 1/10, x + y = P_n; plus the
// symmetric variants with the complementary projections.
std::vector<std::pair<BlockMatrix, BlockMatrix>> m2fan_samples();

// All *-automorphisms of C^n (coordinate permutations), lexicographic.
std::vector<UnitalStarHom> abelian_automorphisms(std::size_t n);

// Names accepted by bundle_poset: "mermin", "m2fan", "c1".."c6".
std::vector<std::string> bundle_names();
ContextPoset bundle_poset(const std::string& name);

}  // namespace specpresheaf
