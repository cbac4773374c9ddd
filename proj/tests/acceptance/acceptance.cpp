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

// Acceptance run: one pass/fail line per criterion. A criterion fails when
// any of its checks fails or when it overruns its time limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "specpresheaf/bundles.hpp"
#include "specpresheaf/correspondences.hpp"
#include "specpresheaf/presheaf_morphism.hpp"
#include "specpresheaf/spectral_presheaf.hpp"

using namespace specpresheaf;

namespace {

PosetPtr shared(ContextPoset p) { return std::make_shared<const ContextPoset>(std::move(p)); }

// Collects failed expectations for one criterion.
class Outcome {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  bool ok() const { return failed_ == 0; }
  std::size_t checks() const { return checks_; }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::string& notes() const { return notes_; }

 private:
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
  std::string notes_;
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<void(Outcome&)> run;
};

std::string str(std::size_t n) { return std::to_string(n); }

// The atom supports of a context of C^n, as a set partition.
std::set<std::set<int>> blocks_of(const Context& c) {
  std::set<std::set<int>> out;
  for (const auto& a : c.atoms()) {
    std::set<int> block;
    for (std::size_t k = 0; k < a.shape().size(); ++k) {
      if (!a.at(k, 0, 0).is_zero()) block.insert(static_cast<int>(k));
    }
    out.insert(block);
  }
  return out;
}

void context_counts(Outcome& out) {
  const std::size_t expected[] = {1, 2, 5, 15, 52};
  for (std::size_t n = 1; n <= 5; ++n) {
    const ContextPoset p = full_abelian_poset(n);
    const auto partitions = oracle::partitions_via_functions(static_cast<int>(n));
    std::set<std::set<std::set<int>>> found;
    for (const auto& c : p.contexts()) found.insert(blocks_of(c));
    out.expect(p.size() == expected[n - 1], "C^" + str(n) + ": " + str(p.size()) + " contexts");
    out.expect(partitions.size() == expected[n - 1], "oracle for n = " + str(n));
    out.expect(found == partitions, "C^" + str(n) + ": contexts differ from the partition oracle");
  }
  out.note("Bell(1..5) = 1, 2, 5, 15, 52");
}

void presheaf_laws(Outcome& out) {
  std::size_t pairs = 0, triples = 0;
  for (const auto& name : bundle_names()) {
    const PresheafLawReport r = check_presheaf_laws(SpectralPresheaf(shared(bundle_poset(name))));
    out.expect(r.passed(), name + ": " + (r.witnesses.empty() ? std::string("law failed") : r.witnesses.front()));
    pairs += r.pairs_checked;
    triples += r.triples_checked;
  }
  out.note(str(bundle_names().size()) + " posets, " + str(pairs) + " pairs, " + str(triples) + " triples");
}

void global_section_counts(Outcome& out) {
  std::ostringstream counts;
  for (std::size_t n = 2; n <= 5; ++n) {
    const SpectralPresheaf s(shared(full_abelian_poset(n)));
    const std::size_t engine = global_sections(s).size();
    // The full product over all 52 components of C^5 is out of reach; there
    // the product runs over the maximal context and is propagated down.
    const std::size_t brute = n <= 4 ? oracle::count_sections_full_product(s.poset().contexts())
                                     : oracle::count_sections_over_maximal(s.poset().contexts());
    out.expect(engine == n && brute == n, "C^" + str(n) + ": engine " + str(engine) + ", oracle " + str(brute));
    counts << (n == 2 ? "" : ", ") << engine;
  }
  const SpectralPresheaf mp(shared(mermin_peres_poset()));
  const std::size_t engine = global_sections(mp).size();
  const std::size_t assignments = oracle::count_mermin_value_assignments(mermin_peres_generators());
  const std::size_t product = oracle::count_sections_over_maximal(mp.poset().contexts());
  out.expect(engine == 0, "Mermin-Peres engine: " + str(engine));
  out.expect(assignments == 0, "Mermin-Peres 4^6 oracle: " + str(assignments));
  out.expect(product == 0, "Mermin-Peres product oracle: " + str(product));
  out.note("C^2..C^5: " + counts.str() + "; Mermin-Peres (" + str(mp.size()) + " contexts): 0 by engine and both oracles");
}

PosetPtr resolve_abelian(const StarAlgebra& a) {
  if (!a.is_abelian()) throw MissingContext("no stored poset for " + a.label());
  return shared(full_abelian_poset(a.shape().size()));
}

void functoriality(Outcome& out) {
  const StarAlgebra c2 = StarAlgebra::abelian(2), c3 = StarAlgebra::abelian(3), c4 = StarAlgebra::abelian(4);
  std::vector<UnitalStarHom> homs{diagonal_embedding(c2, c3, {0, 0, 1}), diagonal_embedding(c3, c4, {0, 1, 2, 2})};
  for (const auto& h : abelian_automorphisms(3)) homs.push_back(h);
  const VerificationReport s = functor_S_check(homs, resolve_abelian);
  const VerificationReport b = functor_B_check(homs, resolve_abelian);
  for (const auto& c : s.checks) out.expect(c.passed, "S " + c.name + ": " + c.detail);
  for (const auto& c : b.checks) out.expect(c.passed, "B " + c.name + ": " + c.detail);
  // Direction, checked here without the library's check routines.
  const PosetPtr p2 = resolve_abelian(c2), p3 = resolve_abelian(c3), p4 = resolve_abelian(c4);
  const UnitalStarHom gf = compose_hom(homs[1], homs[0]);
  out.expect(induce_presheaf_morphism(gf, p2, p4) ==
                 compose_presheaf_morphisms(induce_presheaf_morphism(homs[0], p2, p3),
                                            induce_presheaf_morphism(homs[1], p3, p4)),
             "S(g o f) = S(f) o S(g) on the chain");
  out.expect(induce_copresheaf_morphism(gf, p2, p4) ==
                 compose_copresheaf_morphisms(induce_copresheaf_morphism(homs[1], p3, p4),
                                              induce_copresheaf_morphism(homs[0], p2, p3)),
             "B(g o f) = B(g) o B(f) on the chain");
  out.note(str(homs.size()) + " homs, " + str(s.checks.size() + b.checks.size()) + " functor checks");
}

void local_duality(Outcome& out) {
  std::size_t contexts = 0;
  for (const auto& name : bundle_names()) {
    const ContextPoset p = bundle_poset(name);
    for (std::size_t c = 0; c < p.size(); ++c) {
      out.expect(local_duality_roundtrip(p.context(c)), name + " context " + str(c));
      ++contexts;
    }
  }
  out.note(str(contexts) + " contexts across " + str(bundle_names().size()) + " posets");
}

void correspondence_roundtrip(Outcome& out) {
  for (std::size_t n : {3, 4}) {
    const PosetPtr p = shared(full_abelian_poset(n));
    const OrthoLattice l = lattice_from_algebra(*p);
    const auto autos = presheaf_automorphisms(p);
    out.expect(autos.size() == (n == 3 ? 6u : 24u), "C^" + str(n) + ": |Aut(Sigma)| = " + str(autos.size()));
    for (const auto& m : autos) {
      const PartialAlgebraIso t = partial_iso_from_presheaf_iso(m);
      out.expect(presheaf_iso_from_partial_iso(t) == m, "C^" + str(n) + ": presheaf -> partial -> presheaf");
      const Permutation perm = lattice_iso_from_partial_iso(t, l, l);
      out.expect(extend_lattice_iso(perm, l, l, p, p) == t, "C^" + str(n) + ": partial -> lattice -> partial");
    }
    // Contravariance on every pair, beyond the generator pairs the library checks.
    for (const auto& a : autos) {
      for (const auto& b : autos) {
        out.expect(partial_iso_from_presheaf_iso(presheaf_group_product(a, b)) ==
                       compose_partial_isos(partial_iso_from_presheaf_iso(b), partial_iso_from_presheaf_iso(a)),
                   "C^" + str(n) + ": bijection does not reverse composition");
      }
    }
    const VerificationReport r = correspondence_roundtrips(p);
    for (const auto& c : r.checks) out.expect(c.passed, "C^" + str(n) + " " + c.name + ": " + c.detail);
  }
  out.note("6 + 24 automorphisms, all pairs composed");
}

void group_orders(Outcome& out) {
  for (std::size_t n : {3, 4}) {
    const std::size_t fact = n == 3 ? 6 : 24;
    const AutGroupReport r = aut_groups(shared(full_abelian_poset(n)), abelian_automorphisms(n));
    const std::string tag = "C^" + str(n) + ": ";
    out.expect(r.order_automorphisms == fact, tag + "|Aut_ord| = " + str(r.order_automorphisms));
    out.expect(r.presheaf_automorphisms == fact, tag + "|Aut(Sigma)| = " + str(r.presheaf_automorphisms));
    out.expect(r.partial_automorphisms == fact, tag + "|Aut_part| = " + str(r.partial_automorphisms));
    out.expect(r.jordan_automorphisms == fact, tag + "|Aut_Jordan|");
    out.expect(oracle::count_jordan_automorphisms_cn(n) == fact, tag + "Jordan oracle");
    for (const auto& c : r.checks.checks) out.expect(c.passed, tag + c.name + ": " + c.detail);
  }
  const ContextPoset p3 = full_abelian_poset(3);
  out.expect(oracle::all_order_automorphisms(p3.order_matrix()).size() == 6, "C^3: brute-force order automorphisms");
  out.expect(oracle::count_presheaf_automorphisms(p3.contexts()) == 6, "C^3: brute-force presheaf automorphisms");
  out.note("C^3: all four groups of order 6; C^4: all four of order 24; isomorphisms checked on generators");
}

void exclusion_witnesses(Outcome& out) {
  const AutGroupReport c2 = aut_groups(shared(full_abelian_poset(2)), abelian_automorphisms(2));
  out.expect(c2.order_automorphisms == 1, "C^2: |Aut_ord| = " + str(c2.order_automorphisms));
  out.expect(c2.partial_automorphisms == 2, "C^2: |Aut_part| = " + str(c2.partial_automorphisms));

  const PosetPtr fan = shared(m2fan_poset());
  const AutGroupReport r = aut_groups(fan, m2fan_automorphisms());
  out.expect(fan->maximal().size() == 3, "fan: 3 maximal contexts");
  out.expect(r.order_automorphisms > r.algebra_induced_partial_automorphisms,
             "fan: |Aut_ord| = " + str(r.order_automorphisms) + ", algebra-induced " +
                 str(r.algebra_induced_partial_automorphisms));
  const QuasiJordanReport q = verify_quasi_jordan(QuasiJordanIso{m2fan_patchwork(fan)}, m2fan_samples());
  out.expect(q.per_context_jordan && q.unital, "patchwork: per-context Jordan");
  out.expect(!q.globally_linear, "patchwork: globally linear");
  out.expect(q.samples_additive < q.samples_evaluated, "patchwork: additive on every sample");
  out.note("C^2: ord 1 < part 2; fan: ord " + str(r.order_automorphisms) + " > " +
           str(r.algebra_induced_partial_automorphisms) + " algebra-induced; patchwork additive on " +
           str(q.samples_additive) + "/" + str(q.samples_evaluated) + " samples");
}

void rigidity(Outcome& out) {
  for (std::size_t n : {3, 4}) {
    const PosetPtr p = shared(full_abelian_poset(n));
    const auto autos = order_automorphisms(*p);
    for (const auto& perm : autos) {
      const BaseMap g = BaseMap::from_permutation(p, perm);
      const auto found = order_iso_to_partial_iso_search(g);
      out.expect(found.has_value() && found->is_valid(), "C^" + str(n) + ": no family found");
      out.expect(compatible_partial_isos(g).size() == 1, "C^" + str(n) + ": family not unique");
      out.expect(presheaf_isos_over(g).size() == 1, "C^" + str(n) + ": presheaf isos over gamma not unique");
    }
    out.note("C^" + str(n) + ": " + str(autos.size()) + " order automorphisms, one family each");
  }
}

void algebra_embedding(Outcome& out) {
  const PosetPtr p3 = shared(full_abelian_poset(3));
  const auto homs = abelian_automorphisms(3);
  const auto group = presheaf_automorphisms(p3);
  std::vector<PresheafMorphism> images;
  for (const auto& h : homs) images.push_back(induce_presheaf_morphism(h, p3, p3));
  for (std::size_t i = 0; i < images.size(); ++i) {
    out.expect(std::find(group.begin(), group.end(), images[i]) != group.end(), "image outside Aut(Sigma)");
    for (std::size_t j = 0; j < i; ++j) out.expect(!(images[i] == images[j]), "images coincide");
  }
  for (std::size_t f = 0; f < homs.size(); ++f) {
    for (std::size_t g = 0; g < homs.size(); ++g) {
      out.expect(induce_presheaf_morphism(compose_hom(homs[g], homs[f]), p3, p3) ==
                     compose_presheaf_morphisms(images[f], images[g]),
                 "composition not reversed");
    }
  }
  out.note("6 distinct images, 36 pairs reversed");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "context-poset counts", 1, context_counts},
      {2, "presheaf laws", 1, presheaf_laws},
      {3, "global sections", 5, global_section_counts},
      {4, "functoriality", 2, functoriality},
      {5, "local duality", 2, local_duality},
      {6, "correspondence roundtrips", 10, correspondence_roundtrip},
      {7, "group orders", 30, group_orders},
      {8, "exclusion witnesses", 5, exclusion_witnesses},
      {9, "uniqueness/rigidity", 30, rigidity},
      {10, "Aut(A) embedding", 2, algebra_embedding},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.run(out);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool ok = out.ok() && error.empty() && in_time;
    if (!ok) ++failed;
    std::printf("[%s] criterion %2d  %-26s %4zu checks  %7.3f s (limit %.0f s)  %s\n", ok ? "PASS" : "FAIL", c.id,
                c.title, out.checks(), secs, c.limit_seconds, out.notes().c_str());
    if (!error.empty()) std::printf("       exception: %s\n", error.c_str());
    if (!in_time) std::printf("       over the time limit\n");
    for (const auto& f : out.failures()) std::printf("       failed: %s\n", f.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
