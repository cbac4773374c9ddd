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

#include <optional>
#include <span>
#include <vector>

#include "specpresheaf/block_matrix.hpp"
#include "specpresheaf/star_algebra.hpp"

namespace specpresheaf {

// A unital abelian *-subalgebra, stored as its atoms: nonzero, pairwise
// orthogonal projections summing to the unit, in canonical order.
class Context {
 public:
  // Validates all invariants and sorts the atoms; throws InvariantViolation
  // naming the witness (non-projection atom, non-orthogonal pair, residual).
  Context(StarAlgebra algebra, std::vector<BlockMatrix> atoms);

  static Context trivial(const StarAlgebra& algebra);

  const StarAlgebra& algebra() const { return algebra_; }
  const std::vector<BlockMatrix>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool is_trivial() const { return atoms_.size() == 1; }

  // Coefficients of x in the atom basis, or nullopt if x is not in the context.
  std::optional<Vector> coordinates(const BlockMatrix& x) const;
  bool contains(const BlockMatrix& x) const { return coordinates(x).has_value(); }
  // sum_k coeffs[k] * atom_k
  BlockMatrix element(std::span<const GaussianRational> coeffs) const;
  // Sum of the atoms with the given indices.
  BlockMatrix atom_sum(std::span<const std::size_t> indices) const;

  friend bool operator==(const Context& a, const Context& b) {
    return a.algebra_.shape() == b.algebra_.shape() && a.atoms_ == b.atoms_;
  }
  friend std::strong_ordering operator<=>(const Context& a, const Context& b);

 private:
  StarAlgebra algebra_;
  std::vector<BlockMatrix> atoms_;
};

// Atoms of the context generated by commuting projections: the nonzero
// products prod_j q_j with q_j in {p_j, 1 - p_j}.
Context context_from_projections(const StarAlgebra& algebra, std::span<const BlockMatrix> projections);

// Context generated by commuting self-adjoint involutions u (u^2 = 1), through
// the projections (1 + u) / 2.
Context context_from_involutions(const StarAlgebra& algebra, std::span<const BlockMatrix> involutions);

// For small <= big: table[k] is the index of the atom of `small` lying above
// atom k of `big`. nullopt when small is not a subcontext of big.
std::optional<std::vector<std::size_t>> restriction_table(const Context& small, const Context& big);
bool is_subcontext(const Context& small, const Context& big);

// Meet: the context whose projections are those common to both.
Context intersect(const Context& a, const Context& b);

}  // namespace specpresheaf
