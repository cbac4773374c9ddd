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

#include "specpresheaf/context.hpp"

#include <algorithm>
#include <cstdint>

#include "specpresheaf/error.hpp"

namespace specpresheaf {
namespace {

// Above 20 atoms the subset enumeration in intersect() is out of reach.
constexpr std::size_t kMaxAtomsForMeet = 20;

// Indices of atoms of `c` summing to the projection p, or nullopt if p is not
// such a sum. For projections tr(pa) = |pa|^2 lies in [0, tr(a)], with
// tr(pa) = tr(a) iff a <= p and tr(pa) = 0 iff pa = 0. If every atom is below
// p or orthogonal to it, p minus the atoms below it is orthogonal to the unit,
// hence zero; no separate sum check is needed.
std::optional<std::vector<std::size_t>> decompose_projection(const BlockMatrix& p, const Context& c) {
  std::vector<std::size_t> picked;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const BlockMatrix& a = c.atoms()[k];
    const GaussianRational t = trace_product(p, a);
    if (t == a.trace()) {
      picked.push_back(k);
    } else if (!t.is_zero()) {
      return std::nullopt;
    }
  }
  return picked;
}

}  // namespace

Context::Context(StarAlgebra algebra, std::vector<BlockMatrix> atoms)
    : algebra_(std::move(algebra)), atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw InvariantViolation("context has no atoms");
  BlockMatrix total = algebra_.zero();
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    algebra_.require_element(atoms_[k]);
    if (atoms_[k].is_zero()) throw InvariantViolation("atom " + std::to_string(k) + " is zero");
    if (!is_projection(atoms_[k])) {
      throw InvariantViolation("atom " + std::to_string(k) + " is not a projection: " +
                               atoms_[k].to_string());
    }
    total += atoms_[k];
  }
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms_.size(); ++j) {
      if (!(atoms_[i] * atoms_[j]).is_zero()) {
        throw InvariantViolation("atoms " + std::to_string(i) + " and " + std::to_string(j) +
                                 " are not orthogonal");
      }
    }
  }
  const BlockMatrix residual = algebra_.unit() - total;
  if (!residual.is_zero()) {
    throw InvariantViolation("atoms do not sum to the unit; residual = " + residual.to_string());
  }
  std::sort(atoms_.begin(), atoms_.end());
}

Context Context::trivial(const StarAlgebra& algebra) { return Context(algebra, {algebra.unit()}); }

std::optional<Vector> Context::coordinates(const BlockMatrix& x) const {
  algebra_.require_element(x);
  // Atoms are orthogonal projections: the coefficient on atom a is tr(xa)/tr(a),
  // and x lies in the context iff it equals the reconstruction.
  Vector coeffs;
  coeffs.reserve(atoms_.size());
  for (const auto& a : atoms_) coeffs.push_back(trace_product(x, a) / a.trace());
  if (element(coeffs) != x) return std::nullopt;
  return coeffs;
}

BlockMatrix Context::element(std::span<const GaussianRational> coeffs) const {
  if (coeffs.size() != atoms_.size()) throw ShapeMismatch("element(): coefficient count mismatch");
  BlockMatrix x = algebra_.zero();
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    if (!coeffs[k].is_zero()) x += coeffs[k] * atoms_[k];
  }
  return x;
}

BlockMatrix Context::atom_sum(std::span<const std::size_t> indices) const {
  BlockMatrix x = algebra_.zero();
  for (std::size_t k : indices) x += atoms_.at(k);
  return x;
}

std::strong_ordering operator<=>(const Context& a, const Context& b) {
  if (auto c = a.atoms_.size() <=> b.atoms_.size(); c != 0) return c;
  return a.atoms_ <=> b.atoms_;
}

Context context_from_projections(const StarAlgebra& algebra, std::span<const BlockMatrix> projections) {
  for (std::size_t i = 0; i < projections.size(); ++i) {
    algebra.require_element(projections[i]);
    if (!is_projection(projections[i])) {
      throw InvariantViolation("generator " + std::to_string(i) + " is not a projection");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (!commutes(projections[i], projections[j])) {
        throw InvariantViolation("generators " + std::to_string(j) + " and " + std::to_string(i) +
                                 " do not commute");
      }
    }
  }
  std::vector<BlockMatrix> atoms{algebra.unit()};
  const BlockMatrix one = algebra.unit();
  for (const auto& p : projections) {
    std::vector<BlockMatrix> next;
    for (const auto& a : atoms) {
      BlockMatrix with = a * p;
      BlockMatrix without = a * (one - p);
      if (!with.is_zero()) next.push_back(std::move(with));
      if (!without.is_zero()) next.push_back(std::move(without));
    }
    atoms = std::move(next);
  }
  return Context(algebra, std::move(atoms));
}

Context context_from_involutions(const StarAlgebra& algebra, std::span<const BlockMatrix> involutions) {
  std::vector<BlockMatrix> projections;
  const BlockMatrix one = algebra.unit();
  for (const auto& u : involutions) {
    algebra.require_element(u);
    if (!is_self_adjoint(u) || u * u != one) {
      throw InvariantViolation("generator is not a self-adjoint involution: " + u.to_string());
    }
    BlockMatrix p = one + u;
    p *= GaussianRational::fraction(1, 2);
    projections.push_back(std::move(p));
  }
  return context_from_projections(algebra, projections);
}

std::optional<std::vector<std::size_t>> restriction_table(const Context& small, const Context& big) {
  if (small.algebra().shape() != big.algebra().shape()) {
    throw ObjectMismatch("contexts from different algebras");
  }
  std::vector<std::size_t> table(big.size(), small.size());
  for (std::size_t s = 0; s < small.size(); ++s) {
    const auto parts = decompose_projection(small.atoms()[s], big);
    if (!parts) return std::nullopt;
    for (std::size_t k : *parts) table[k] = s;
  }
  return table;
}

bool is_subcontext(const Context& small, const Context& big) {
  return restriction_table(small, big).has_value();
}

Context intersect(const Context& a, const Context& b) {
  if (a.algebra().shape() != b.algebra().shape()) {
    throw ObjectMismatch("intersect(): contexts from different algebras");
  }
  if (is_subcontext(a, b)) return a;
  if (is_subcontext(b, a)) return b;
  const Context& small = a.size() <= b.size() ? a : b;
  const Context& other = a.size() <= b.size() ? b : a;
  if (small.size() > kMaxAtomsForMeet) {
    throw SizeBoundExceeded("intersect(): context with " + std::to_string(small.size()) + " atoms");
  }
  // Common projections are atom-subset sums of `small` that are also sums in
  // `other`; their minimal nonzero members are the atoms of the meet. Each atom
  // of the meet is a union of atoms of `small`, so track them as bitmasks.
  const std::size_t n = small.size();
  std::vector<std::uint32_t> common;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (1u << k)) idx.push_back(k);
    }
    const BlockMatrix p = small.atom_sum(idx);
    if (decompose_projection(p, other)) common.push_back(mask);
  }
  std::vector<BlockMatrix> atoms;
  for (std::uint32_t m : common) {
    bool minimal = true;
    for (std::uint32_t q : common) {
      if (q != m && (q & m) == q) {
        minimal = false;
        break;
      }
    }
    if (minimal) {
      std::vector<std::size_t> idx;
      for (std::size_t k = 0; k < n; ++k) {
        if (m & (1u << k)) idx.push_back(k);
      }
      atoms.push_back(small.atom_sum(idx));
    }
  }
  return Context(small.algebra(), std::move(atoms));
}

}  // namespace specpresheaf
