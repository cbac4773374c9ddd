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

// Random exact inputs for property tests. Every generator draws from a
// caller-owned std::mt19937 so each test case is reproducible from kSeed.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "specpresheaf/block_matrix.hpp"
#include "specpresheaf/gaussian_rational.hpp"
#include "specpresheaf/order_search.hpp"

namespace specpresheaf::testing {

inline constexpr std::uint32_t kSeed = 0x5eed2024u;

inline GaussianRational random_rational(std::mt19937& rng, int max_num = 9, int max_den = 6) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return GaussianRational::fraction(num(rng), den(rng));
}

inline GaussianRational random_gaussian(std::mt19937& rng) {
  const GaussianRational re = random_rational(rng);
  const GaussianRational im = random_rational(rng);
  return re + im * GaussianRational::i();
}

// Nonzero with probability one in practice; loops until it is.
inline GaussianRational random_nonzero(std::mt19937& rng) {
  for (;;) {
    GaussianRational z = random_gaussian(rng);
    if (!z.is_zero()) return z;
  }
}

inline Shape random_shape(std::mt19937& rng, std::size_t max_blocks = 3, std::size_t max_dim = 3) {
  std::uniform_int_distribution<std::size_t> blocks(1, max_blocks);
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  Shape s(blocks(rng));
  for (auto& d : s) d = dim(rng);
  return s;
}

inline BlockMatrix random_matrix(std::mt19937& rng, const Shape& shape) {
  std::vector<GaussianRational> coords(coordinate_dimension(shape));
  for (auto& c : coords) c = random_gaussian(rng);
  return BlockMatrix::from_coordinates(shape, coords);
}

inline BlockMatrix random_self_adjoint(std::mt19937& rng, const Shape& shape) {
  const BlockMatrix a = random_matrix(rng, shape);
  return a + a.adjoint();
}

// Diagonal element of C^n with small integer entries.
inline BlockMatrix random_diagonal(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-4, 4);
  std::vector<GaussianRational> e(n);
  for (auto& x : e) x = GaussianRational(d(rng));
  return BlockMatrix::diagonal(e);
}

inline Permutation random_permutation(std::mt19937& rng, std::size_t n) {
  Permutation p = identity_permutation(n);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace specpresheaf::testing
