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
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "specpresheaf/context.hpp"
#include "specpresheaf/limits.hpp"
#include "specpresheaf/order_search.hpp"

namespace specpresheaf {

// A finite, intersection-closed family of contexts of one algebra, ordered by
// inclusion. Contexts are stored in canonical order, so index 0 is always the
// trivial context (the bottom).
class ContextPoset {
 public:
  // Validates: trivial context present, closed under intersect, within
  // limits.max_contexts. Duplicates are merged.
  ContextPoset(StarAlgebra algebra, std::vector<Context> contexts,
               const SizeLimits& limits = SizeLimits::from_environment());

  const StarAlgebra& algebra() const { return algebra_; }
  std::size_t size() const { return contexts_.size(); }
  const Context& context(std::size_t i) const { return contexts_.at(i); }
  const std::vector<Context>& contexts() const { return contexts_; }
  std::optional<std::size_t> index_of(const Context& c) const;
  std::size_t bottom() const { return 0; }

  // i <= j (context i is a subalgebra of context j).
  bool leq(std::size_t i, std::size_t j) const { return leq_[i][j] != 0; }
  const std::vector<std::vector<char>>& order_matrix() const { return leq_; }
  // For small <= big: maps each atom index of `big` to the atom index of
  // `small` above it. Throws ObjectMismatch when small is not below big.
  const std::vector<std::size_t>& restriction(std::size_t small, std::size_t big) const;
  // Contexts covered by i (immediately below it).
  const std::vector<std::size_t>& covers_below(std::size_t i) const { return covers_.at(i); }
  std::vector<std::size_t> maximal() const;

  friend bool operator==(const ContextPoset& a, const ContextPoset& b) {
    return a.algebra_ == b.algebra_ && a.contexts_ == b.contexts_;
  }

 private:
  struct Trusted {};
  ContextPoset(Trusted, StarAlgebra algebra, std::vector<Context> contexts, const SizeLimits& limits);
  void build_order();

  friend ContextPoset closure(const StarAlgebra&, std::span<const Context>, const SizeLimits&);
  friend ContextPoset full_abelian_poset(std::size_t, const SizeLimits&);

  StarAlgebra algebra_;
  std::vector<Context> contexts_;
  std::vector<std::vector<char>> leq_;
  std::vector<std::vector<std::size_t>> covers_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> restrictions_;  // key big*N+small
};

using PosetPtr = std::shared_ptr<const ContextPoset>;

// Same object, or structurally equal.
inline bool same_poset(const PosetPtr& a, const PosetPtr& b) {
  return a == b || (a && b && *a == *b);
}

// Smallest family containing the generators and the trivial context that is
// closed under pairwise intersection.
ContextPoset closure(const StarAlgebra& algebra, std::span<const Context> generators,
                     const SizeLimits& limits = SizeLimits::from_environment());

// All contexts of C^n: one per set partition of {1..n}, atoms the block
// indicators. Bell(n) contexts.
ContextPoset full_abelian_poset(std::size_t n, const SizeLimits& limits = SizeLimits::from_environment());

// Set partitions of {0..n-1} as restricted growth strings, in lexicographic order.
std::vector<std::vector<std::size_t>> set_partitions(std::size_t n);
std::size_t bell_number(std::size_t n);

// All order-automorphisms, as permutation tables of context indices, sorted.
// Throws SizeBoundExceeded above limits.max_automorphism_contexts.
std::vector<Permutation> order_automorphisms(const ContextPoset& poset,
                                             const SizeLimits& limits = SizeLimits::from_environment());

}  // namespace specpresheaf
