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

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace specpresheaf {

using Permutation = std::vector<std::size_t>;
inline constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();

// Extra pruning hook for automorphism search: may `source` map to `image`
// given the partial assignment so far (kUnassigned marks free elements)?
using CandidateFilter =
    std::function<bool(std::size_t source, std::size_t image, std::span<const std::size_t> partial)>;

// All bijections of {0..n-1} that preserve and reflect the relation `leq`
// (leq[i][j] iff i <= j) and pass `filter`. Backtracking over candidates with
// matching up-set and down-set sizes. Result is sorted lexicographically.
std::vector<Permutation> relation_automorphisms(const std::vector<std::vector<char>>& leq,
                                                const CandidateFilter& filter = {});

Permutation compose_permutations(const Permutation& second, const Permutation& first);
Permutation invert_permutation(const Permutation& p);
Permutation identity_permutation(std::size_t n);
// All permutations of {0..n-1} in lexicographic order.
std::vector<Permutation> all_permutations(std::size_t n);

}  // namespace specpresheaf
