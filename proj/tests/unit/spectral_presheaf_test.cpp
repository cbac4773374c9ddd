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

#include <memory>
#include <random>
#include <set>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "specpresheaf/bundles.hpp"
#include "specpresheaf/spectral_presheaf.hpp"

using namespace specpresheaf;
using specpresheaf::testing::kSeed;

namespace {

PosetPtr shared(ContextPoset p) { return std::make_shared<const ContextPoset>(std::move(p)); }

// Trivial context plus k contexts of M_2 that meet only there: the Z axis
// rotated by k distinct rational angles.
std::vector<Context> m2_star(std::size_t k) {
  const StarAlgebra m2 = StarAlgebra::full_matrix(2);
  // Unit vectors (a, b) from Pythagorean triples; projections |v><v| and 1 - |v><v|.
  const std::int64_t triples[][3] = {{1, 0, 1}, {3, 4, 5}, {5, 12, 13}, {8, 15, 17}, {7, 24, 25}};
  std::vector<Context> out;
  for (std::size_t t = 0; t < k; ++t) {
    const GaussianRational a = GaussianRational::fraction(triples[t][0], triples[t][2]);
    const GaussianRational b = GaussianRational::fraction(triples[t][1], triples[t][2]);
    const BlockMatrix p = BlockMatrix::square({{a * a, a * b}, {a * b, b * b}});
    out.push_back(Context(m2, {p, BlockMatrix::identity({2}) - p}));
  }
  return out;
}

}  // namespace

TEST_SUITE("spectral-presheaf") {

TEST_CASE("component sizes") {
  const StarAlgebra c3 = StarAlgebra::abelian(3);
  const SpectralPresheaf trivial(shared(closure(c3, {})));
  CHECK(trivial.size() == 1);
  CHECK(trivial.component_size(0) == 1);

  const SpectralPresheaf s3(shared(full_abelian_poset(3)));
  std::multiset<std::size_t> sizes;
  for (std::size_t c = 0; c < s3.size(); ++c) sizes.insert(s3.component_size(c));
  CHECK(sizes == std::multiset<std::size_t>{1, 2, 2, 2, 3});

  const SpectralPresheaf mp(shared(mermin_peres_poset()));
  for (std::size_t c : mp.poset().maximal()) CHECK(mp.component_size(c) == 4);
}

TEST_CASE("presheaf laws hold on every bundled poset") {
  for (const auto& name : bundle_names()) {
    CAPTURE(name);
    const SpectralPresheaf s(shared(bundle_poset(name)));
    const PresheafLawReport r = check_presheaf_laws(s);
    CHECK(r.passed());
    CHECK(r.identity);
    CHECK(r.composition);
    CHECK(r.surjectivity);
    CHECK(r.witnesses.empty());
  }
}

TEST_CASE("restriction sends an atom to the atom above it") {
  const SpectralPresheaf s(shared(mermin_peres_poset()));
  const ContextPoset& p = s.poset();
  for (std::size_t small = 0; small < p.size(); ++small) {
    for (std::size_t big = 0; big < p.size(); ++big) {
      if (!p.leq(small, big)) continue;
      const auto& r = s.restriction(small, big);
      for (std::size_t a = 0; a < r.size(); ++a) {
        const BlockMatrix& atom = p.context(big).atoms()[a];
        CHECK(atom * p.context(small).atoms()[r[a]] == atom);
      }
    }
  }
}

TEST_CASE("global sections of C^n: n of them, matched against brute-force products") {
  for (std::size_t n = 2; n <= 5; ++n) {
    CAPTURE(n);
    const SpectralPresheaf s(shared(full_abelian_poset(n)));
    const auto sections = global_sections(s);
    CHECK(sections.size() == n);
    CHECK(oracle::count_sections_over_maximal(s.poset().contexts()) == n);
    if (n <= 4) CHECK(oracle::count_sections_full_product(s.poset().contexts()) == n);
    for (const auto& g : sections) CHECK(is_global_section(s, g));
  }
}

TEST_CASE("Mermin-Peres closure has no global section") {
  const SpectralPresheaf s(shared(mermin_peres_poset()));
  CHECK(global_sections(s).empty());
  CHECK(oracle::count_sections_over_maximal(s.poset().contexts()) == 0);
  CHECK(oracle::count_mermin_value_assignments(mermin_peres_generators()) == 0);
}

TEST_CASE("contexts meeting only at the trivial context give 2^k sections") {
  const StarAlgebra m2 = StarAlgebra::full_matrix(2);
  for (std::size_t k = 1; k <= 5; ++k) {
    CAPTURE(k);
    const SpectralPresheaf s(shared(closure(m2, m2_star(k))));
    CHECK(s.size() == k + 1);
    CHECK(global_sections(s).size() == (std::size_t{1} << k));
  }
  CHECK(global_sections(SpectralPresheaf(shared(m2fan_poset()))).size() == 8);
}

TEST_CASE("global sections are canonically sorted and deterministic") {
  const SpectralPresheaf s(shared(full_abelian_poset(4)));
  const auto a = global_sections(s);
  CHECK(std::is_sorted(a.begin(), a.end()));
  CHECK(global_sections(s) == a);
}

TEST_CASE("is_global_section rejects incompatible assignments") {
  const SpectralPresheaf s(shared(full_abelian_poset(3)));
  auto g = global_sections(s).front();
  const std::size_t top = s.poset().maximal().front();
  g[top] = (g[top] + 1) % s.component_size(top);
  CHECK_FALSE(is_global_section(s, g));
}

TEST_CASE("sections of a larger family restrict to sections of a smaller one") {
  std::mt19937 rng(kSeed + 30);
  const ContextPoset big = full_abelian_poset(4);
  for (int trial = 0; trial < 10; ++trial) {
    // A random intersection-closed subfamily: the closure of two random contexts.
    std::uniform_int_distribution<std::size_t> pick(0, big.size() - 1);
    const std::vector<Context> gens{big.context(pick(rng)), big.context(pick(rng))};
    const ContextPoset small = closure(big.algebra(), gens);
    const SpectralPresheaf sb(shared(big)), ss(shared(small));
    const auto small_sections = global_sections(ss);
    const std::set<GlobalSection> allowed(small_sections.begin(), small_sections.end());
    for (const auto& g : global_sections(sb)) {
      GlobalSection r;
      for (const auto& c : small.contexts()) r.push_back(g[*big.index_of(c)]);
      CHECK(is_global_section(ss, r));
      CHECK(allowed.count(r) == 1);
    }
  }
}

TEST_CASE("Bohrification components match presheaf components") {
  for (const std::string name : {"c4", "m2fan", "mermin"}) {
    CAPTURE(name);
    const PosetPtr p = shared(bundle_poset(name));
    const SpectralPresheaf s(p);
    const Bohrification b(p);
    for (std::size_t c = 0; c < p->size(); ++c) {
      CHECK(s.component_size(c) == b.component(c).size());
      for (std::size_t d = 0; d < p->size(); ++d) {
        if (!p->leq(d, c)) continue;
        const auto inc = b.inclusion(d, c);
        for (std::size_t a = 0; a < inc.size(); ++a) {
          BlockMatrix sum = BlockMatrix::zero(p->algebra().shape());
          for (std::size_t k : inc[a]) sum += b.component(c)[k];
          CHECK(sum == b.component(d)[a]);
        }
      }
    }
  }
}

TEST_CASE("local duality holds for every context of every bundle") {
  for (const auto& name : bundle_names()) {
    CAPTURE(name);
    const ContextPoset p = bundle_poset(name);
    for (const auto& c : p.contexts()) CHECK(local_duality_roundtrip(c));
  }
  CHECK(local_duality_roundtrip(Context::trivial(StarAlgebra::full_matrix(3))));
}

}  // TEST_SUITE
