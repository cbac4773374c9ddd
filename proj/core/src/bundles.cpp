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

#include "specpresheaf/bundles.hpp"

#include "specpresheaf/error.hpp"

namespace specpresheaf {
namespace {

GaussianRational q(long num, long den = 1) { return GaussianRational::fraction(num, den); }

Context axis_context(const StarAlgebra& m2, const GaussianRational& nx, const GaussianRational& nz) {
  // (1 + n.sigma)/2 with n in the x-z plane.
  const GaussianRational half = q(1, 2);
  const BlockMatrix p = BlockMatrix::square({{half * (q(1) + nz), half * nx}, {half * nx, half * (q(1) - nz)}});
  const BlockMatrix one = m2.unit();
  return Context(m2, {p, one - p});
}

}  // namespace

BlockMatrix pauli(char letter) {
  const GaussianRational o(0), l(1), i = GaussianRational::i();
  switch (letter) {
    case 'I': return BlockMatrix::square({{l, o}, {o, l}});
    case 'X': return BlockMatrix::square({{o, l}, {l, o}});
    case 'Y': return BlockMatrix::square({{o, -i}, {i, o}});
    case 'Z': return BlockMatrix::square({{l, o}, {o, -l}});
    default: throw InvariantViolation(std::string("unknown Pauli letter '") + letter + "'");
  }
}

BlockMatrix pauli_word(const std::string& word) {
  if (word.empty()) throw InvariantViolation("empty Pauli word");
  BlockMatrix out = pauli(word[0]);
  for (std::size_t k = 1; k < word.size(); ++k) out = kronecker(out, pauli(word[k]));
  return out;
}

std::vector<Context> mermin_peres_generators() {
  static const char* const square[3][3] = {{"XI", "IX", "XX"}, {"IY", "YI", "YY"}, {"XY", "YX", "ZZ"}};
  const StarAlgebra m4 = StarAlgebra::full_matrix(4);
  std::vector<Context> out;
  for (int row = 0; row < 3; ++row) {
    std::vector<BlockMatrix> ops;
    for (int col = 0; col < 3; ++col) ops.push_back(pauli_word(square[row][col]));
    out.push_back(context_from_involutions(m4, ops));
  }
  for (int col = 0; col < 3; ++col) {
    std::vector<BlockMatrix> ops;
    for (int row = 0; row < 3; ++row) ops.push_back(pauli_word(square[row][col]));
    out.push_back(context_from_involutions(m4, ops));
  }
  return out;
}

ContextPoset mermin_peres_poset() {
  const auto gens = mermin_peres_generators();
  return closure(StarAlgebra::full_matrix(4), gens);
}

std::vector<Context> m2fan_generators() {
  const StarAlgebra m2 = StarAlgebra::full_matrix(2);
  return {axis_context(m2, q(0), q(1)), axis_context(m2, q(1), q(0)), axis_context(m2, q(3, 5), q(4, 5))};
}

ContextPoset m2fan_poset() {
  const auto gens = m2fan_generators();
  return closure(StarAlgebra::full_matrix(2), gens);
}

std::vector<UnitalStarHom> m2fan_automorphisms() {
  const StarAlgebra m2 = StarAlgebra::full_matrix(2);
  const BlockMatrix y = pauli('Y');
  std::vector<BlockMatrix> images;
  for (const auto& e : m2.matrix_units()) images.push_back(y * e * y);
  return {UnitalStarHom::identity(m2), UnitalStarHom(AlgebraMap::from_unit_images(m2, m2, images))};
}

PartialAlgebraIso m2fan_patchwork(const PosetPtr& poset) {
  if (!(*poset == m2fan_poset())) throw ObjectMismatch("m2fan_patchwork(): not the m2fan poset");
  PartialAlgebraIso t = PartialAlgebraIso::identity(poset);
  const Context z = m2fan_generators()[0];
  t.kappa[*poset->index_of(z)] = {1, 0};
  return t;
}

std::vector<std::pair<BlockMatrix, BlockMatrix>> m2fan_samples() {
  const auto gens = m2fan_generators();
  const BlockMatrix one = StarAlgebra::full_matrix(2).unit();
  const GaussianRational tenth = q(1, 10);
  std::vector<std::pair<BlockMatrix, BlockMatrix>> out;
  // gens: Z, X, n; atoms sorted canonically, so atom 0 is the "+" projection.
  for (std::size_t s = 0; s < 2; ++s) {
    const BlockMatrix& px = gens[1].atoms()[s];
    const BlockMatrix& pz = gens[0].atoms()[s];
    out.emplace_back(q(3, 5) * px - tenth * one, q(4, 5) * pz - tenth * one);
  }
  return out;
}

std::vector<UnitalStarHom> abelian_automorphisms(std::size_t n) {
  const StarAlgebra cn = StarAlgebra::abelian(n);
  std::vector<UnitalStarHom> out;
  for (const auto& perm : all_permutations(n)) out.push_back(permutation_automorphism(cn, perm));
  return out;
}

std::vector<std::string> bundle_names() { return {"c1", "c2", "c3", "c4", "c5", "c6", "m2fan", "mermin"}; }

ContextPoset bundle_poset(const std::string& name) {
  if (name == "mermin") return mermin_peres_poset();
  if (name == "m2fan") return m2fan_poset();
  if (name.size() == 2 && name[0] == 'c' && name[1] >= '1' && name[1] <= '6') {
    return full_abelian_poset(static_cast<std::size_t>(name[1] - '0'));
  }
  throw ObjectMismatch("unknown bundle '" + name + "'");
}

}  // namespace specpresheaf
