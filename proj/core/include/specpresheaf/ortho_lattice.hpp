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
#include <string>
#include <vector>

#include "specpresheaf/block_matrix.hpp"
#include "specpresheaf/context_poset.hpp"
#include "specpresheaf/error.hpp"
#include "specpresheaf/order_search.hpp"

namespace specpresheaf {

// A finite family of projections containing 0 and 1, closed under
// p -> 1 - p, ordered by p <= q iff pq = p. Elements are canonically sorted
// by rank and then by matrix order, so index 0 is 0.
class OrthoLattice {
 public:
  explicit OrthoLattice(std::vector<BlockMatrix> projections);

  std::size_t size() const { return elements_.size(); }
  const BlockMatrix& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<BlockMatrix>& elements() const { return elements_; }
  std::optional<std::size_t> index_of(const BlockMatrix& p) const;
  bool leq(std::size_t i, std::size_t j) const { return leq_[i][j] != 0; }
  const std::vector<std::vector<char>>& order_matrix() const { return leq_; }
  std::size_t complement(std::size_t i) const { return complement_.at(i); }
  std::size_t zero() const { return zero_; }
  std::size_t one() const { return one_; }
  bool orthogonal(std::size_t i, std::size_t j) const { return (elements_[i] * elements_[j]).is_zero(); }

  // Least upper bound / greatest lower bound inside the stored family, when
  // it exists. For commuting pairs these are p + q - pq and pq.
  std::optional<std::size_t> join(std::size_t i, std::size_t j) const;
  std::optional<std::size_t> meet(std::size_t i, std::size_t j) const;

  // For every p <= q: q ^ p' exists and p v (q ^ p') = q. Empty if the law
  // holds, else the failing pair.
  std::string orthomodular_witness() const;

 private:
  std::vector<BlockMatrix> elements_;
  std::vector<std::vector<char>> leq_;
  std::vector<std::size_t> complement_;
  std::size_t zero_ = 0;
  std::size_t one_ = 0;
};

// All projections that are atom sums of some stored context, plus 0.
OrthoLattice lattice_from_algebra(const ContextPoset& poset);

// Ortholattice automorphisms (order and complement preserving bijections).
std::vector<Permutation> lattice_automorphisms(const OrthoLattice& lattice, std::size_t max_elements = 512);

// Raised by extend_lattice_iso when the candidate map breaks a lattice law.
class LatticeLawViolation : public InvariantViolation {
 public:
  LatticeLawViolation(const std::string& law, std::size_t first, std::size_t second)
      : InvariantViolation(law + " violated on pair (" + std::to_string(first) + ", " +
                           std::to_string(second) + ")"),
        first_(first),
        second_(second) {}
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

}  // namespace specpresheaf
