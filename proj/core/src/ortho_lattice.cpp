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

#include "specpresheaf/ortho_lattice.hpp"

#include <algorithm>
#include <set>

namespace specpresheaf {
namespace {

bool rank_then_matrix(const BlockMatrix& a, const BlockMatrix& b) {
  const GaussianRational ta = a.trace();
  const GaussianRational tb = b.trace();
  if (ta != tb) return ta < tb;
  return a < b;
}

}  // namespace

OrthoLattice::OrthoLattice(std::vector<BlockMatrix> projections) : elements_(std::move(projections)) {
  if (elements_.empty()) throw InvariantViolation("empty ortholattice");
  const Shape shape = elements_.front().shape();
  for (const auto& p : elements_) {
    if (p.shape() != shape) throw ShapeMismatch("ortholattice elements of different shapes");
    if (!(p.adjoint() == p && p * p == p)) throw InvariantViolation("lattice element is not a projection");
  }
  std::sort(elements_.begin(), elements_.end(), rank_then_matrix);
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());

  const std::size_t n = elements_.size();
  const auto zero = index_of(BlockMatrix::zero(shape));
  const auto one = index_of(BlockMatrix::identity(shape));
  if (!zero || !one) throw InvariantViolation("ortholattice must contain 0 and 1");
  zero_ = *zero;
  one_ = *one;
  complement_.resize(n);
  const BlockMatrix unit = BlockMatrix::identity(shape);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = index_of(unit - elements_[i]);
    if (!c) throw InvariantViolation("ortholattice not closed under complement at element " + std::to_string(i));
    complement_[i] = *c;
  }
  leq_.assign(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) leq_[i][j] = elements_[i] * elements_[j] == elements_[i];
  }
}

std::optional<std::size_t> OrthoLattice::index_of(const BlockMatrix& p) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), p, rank_then_matrix);
  if (it == elements_.end() || !(*it == p)) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

std::optional<std::size_t> OrthoLattice::join(std::size_t i, std::size_t j) const {
  std::vector<std::size_t> upper;
  for (std::size_t k = 0; k < size(); ++k) {
    if (leq(i, k) && leq(j, k)) upper.push_back(k);
  }
  for (std::size_t m : upper) {
    if (std::all_of(upper.begin(), upper.end(), [&](std::size_t u) { return leq(m, u); })) return m;
  }
  return std::nullopt;
}

std::optional<std::size_t> OrthoLattice::meet(std::size_t i, std::size_t j) const {
  const auto jn = join(complement(i), complement(j));
  if (!jn) return std::nullopt;
  return complement(*jn);
}

std::string OrthoLattice::orthomodular_witness() const {
  for (std::size_t p = 0; p < size(); ++p) {
    for (std::size_t q = 0; q < size(); ++q) {
      if (!leq(p, q)) continue;
      const auto m = meet(q, complement(p));
      if (!m) return "q ^ p' missing for (" + std::to_string(p) + ", " + std::to_string(q) + ")";
      const auto j = join(p, *m);
      if (!j || *j != q) return "orthomodular law fails for (" + std::to_string(p) + ", " + std::to_string(q) + ")";
    }
  }
  return {};
}

OrthoLattice lattice_from_algebra(const ContextPoset& poset) {
  std::set<BlockMatrix> projections{BlockMatrix::zero(poset.algebra().shape())};
  for (const auto& c : poset.contexts()) {
    const std::size_t k = c.size();
    if (k > 20) throw SizeBoundExceeded("lattice_from_algebra(): context with " + std::to_string(k) + " atoms");
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      std::vector<std::size_t> idx;
      for (std::size_t a = 0; a < k; ++a) {
        if (mask & (1u << a)) idx.push_back(a);
      }
      projections.insert(c.atom_sum(idx));
    }
  }
  return OrthoLattice(std::vector<BlockMatrix>(projections.begin(), projections.end()));
}

std::vector<Permutation> lattice_automorphisms(const OrthoLattice& lattice, std::size_t max_elements) {
  if (lattice.size() > max_elements) {
    throw SizeBoundExceeded("lattice_automorphisms(): " + std::to_string(lattice.size()) + " elements");
  }
  auto keeps_complement = [&](std::size_t s, std::size_t t, std::span<const std::size_t> partial) {
    const std::size_t cs = lattice.complement(s);
    if (cs == s) return lattice.complement(t) == t;
    if (partial[cs] != kUnassigned) return partial[cs] == lattice.complement(t);
    return true;
  };
  return relation_automorphisms(lattice.order_matrix(), keeps_complement);
}

}  // namespace specpresheaf
