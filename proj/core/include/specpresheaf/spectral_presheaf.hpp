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

#include <memory>
#include <string>
#include <vector>

#include "specpresheaf/context_poset.hpp"

namespace specpresheaf {

// The spectral presheaf over a finite context poset. The component at C is
// the Gelfand spectrum of C; a character is identified with the unique atom
// on which it takes the value 1, so component C is {0, ..., |atoms(C)| - 1}.
class SpectralPresheaf {
 public:
  explicit SpectralPresheaf(PosetPtr poset);

  const ContextPoset& poset() const { return *poset_; }
  const PosetPtr& poset_ptr() const { return poset_; }
  std::size_t size() const { return poset_->size(); }
  std::size_t component_size(std::size_t c) const { return poset_->context(c).size(); }
  // Restriction of characters from `big` to `small` (small <= big).
  const std::vector<std::size_t>& restriction(std::size_t small, std::size_t big) const {
    return poset_->restriction(small, big);
  }

 private:
  PosetPtr poset_;
};

SpectralPresheaf build_presheaf(PosetPtr poset);

struct PresheafLawReport {
  std::size_t pairs_checked = 0;
  std::size_t triples_checked = 0;
  bool identity = true;
  bool composition = true;
  bool surjectivity = true;
  std::vector<std::string> witnesses;

  bool passed() const { return identity && composition && surjectivity; }
};

// Exhaustive: r_{CC} = id, r_{C''C} = r_{C''C'} o r_{C'C}, every r surjective.
PresheafLawReport check_presheaf_laws(const SpectralPresheaf& sigma);

// One character (atom index) per context, compatible with every restriction.
using GlobalSection = std::vector<std::size_t>;

// Complete enumeration by backtracking over the maximal contexts (largest
// components first) with immediate propagation to everything below.
// Canonically sorted. Empty means no global section over this family.
std::vector<GlobalSection> global_sections(const SpectralPresheaf& sigma);

// Checks compatibility of an assignment with every restriction.
bool is_global_section(const SpectralPresheaf& sigma, const GlobalSection& section);

// The tautological copresheaf C -> C, each component given by its atoms; the
// inclusion C' -> C sends atom a' of C' to the atoms of C summing to it.
class Bohrification {
 public:
  explicit Bohrification(PosetPtr poset) : poset_(std::move(poset)) {}

  const ContextPoset& poset() const { return *poset_; }
  const std::vector<BlockMatrix>& component(std::size_t c) const { return poset_->context(c).atoms(); }
  // For small <= big: result[a'] = indices of atoms of `big` below atom a' of `small`.
  std::vector<std::vector<std::size_t>> inclusion(std::size_t small, std::size_t big) const;

 private:
  PosetPtr poset_;
};

// Componentwise Gelfand duality for one context: x -> (atom coefficients) is a
// unital *-isomorphism onto the pointwise function algebra on atoms, and the
// evaluations of that function algebra recover the original characters.
bool local_duality_roundtrip(const Context& c);

}  // namespace specpresheaf
