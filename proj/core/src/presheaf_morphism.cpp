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

#include "specpresheaf/presheaf_morphism.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "specpresheaf/error.hpp"

namespace specpresheaf {
namespace {

void require_poset(const PosetPtr& p, const StarAlgebra& a, const char* role) {
  if (!p) throw ObjectMismatch(std::string(role) + " poset is null");
  if (!(p->algebra() == a)) {
    throw ObjectMismatch(std::string(role) + " poset belongs to '" + p->algebra().label() +
                         "', hom uses '" + a.label() + "'");
  }
}

bool is_permutation_of(const std::vector<std::size_t>& v, std::size_t n) {
  if (v.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (std::size_t x : v) {
    if (x >= n || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

std::string pair_text(std::size_t small, std::size_t big) {
  return "(" + std::to_string(small) + " <= " + std::to_string(big) + ")";
}

}  // namespace

BaseMap BaseMap::identity(const PosetPtr& poset) {
  return {poset, poset, identity_permutation(poset->size())};
}

BaseMap BaseMap::from_permutation(const PosetPtr& poset, Permutation perm) {
  if (perm.size() != poset->size()) throw ShapeMismatch("base map table has wrong length");
  return {poset, poset, std::move(perm)};
}

bool BaseMap::is_monotone() const {
  if (table.size() != source->size()) return false;
  for (std::size_t t : table) {
    if (t >= target->size()) return false;
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = 0; j < table.size(); ++j) {
      if (source->leq(i, j) && !target->leq(table[i], table[j])) return false;
    }
  }
  return true;
}

bool BaseMap::is_order_isomorphism() const {
  if (source->size() != target->size() || !is_permutation_of(table, target->size())) return false;
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = 0; j < table.size(); ++j) {
      if (source->leq(i, j) != target->leq(table[i], table[j])) return false;
    }
  }
  return true;
}

BaseMap compose_base_maps(const BaseMap& second, const BaseMap& first) {
  if (!same_poset(first.target, second.source)) throw ObjectMismatch("base maps are not composable");
  BaseMap out{first.source, second.target, std::vector<std::size_t>(first.table.size())};
  for (std::size_t c = 0; c < first.table.size(); ++c) out.table[c] = second.table.at(first.table[c]);
  return out;
}

PresheafMorphism PresheafMorphism::identity(const PosetPtr& poset) {
  PresheafMorphism m{BaseMap::identity(poset), {}};
  for (std::size_t c = 0; c < poset->size(); ++c) {
    m.components.push_back(identity_permutation(poset->context(c).size()));
  }
  return m;
}

std::string PresheafMorphism::naturality_witness() const {
  const ContextPoset& a = *base.source;
  const ContextPoset& b = *base.target;
  if (components.size() != a.size() || base.table.size() != a.size()) return "component count mismatch";
  for (std::size_t c = 0; c < a.size(); ++c) {
    const std::size_t img = base.table[c];
    if (components[c].size() != b.context(img).size()) {
      return "component " + std::to_string(c) + " has the wrong domain size";
    }
    for (std::size_t x : components[c]) {
      if (x >= a.context(c).size()) return "component " + std::to_string(c) + " leaves its codomain";
    }
  }
  for (std::size_t big = 0; big < a.size(); ++big) {
    for (std::size_t small = 0; small < a.size(); ++small) {
      if (!a.leq(small, big)) continue;
      const std::size_t gb = base.table[big];
      const std::size_t gs = base.table[small];
      if (!b.leq(gs, gb)) return "base map not monotone on " + pair_text(small, big);
      const auto& rho_a = a.restriction(small, big);
      const auto& rho_b = b.restriction(gs, gb);
      for (std::size_t ch = 0; ch < components[big].size(); ++ch) {
        if (rho_a[components[big][ch]] != components[small][rho_b[ch]]) {
          return "naturality square fails on " + pair_text(small, big) + " at character " +
                 std::to_string(ch);
        }
      }
    }
  }
  return {};
}

BaseMap induce_base_map(const UnitalStarHom& h, const PosetPtr& source, const PosetPtr& target) {
  require_poset(source, h.source(), "source");
  require_poset(target, h.target(), "target");
  BaseMap base{source, target, std::vector<std::size_t>(source->size())};
  for (std::size_t c = 0; c < source->size(); ++c) {
    std::vector<BlockMatrix> images;
    for (const auto& atom : source->context(c).atoms()) {
      BlockMatrix img = h(atom);
      if (!img.is_zero()) images.push_back(std::move(img));
    }
    const Context image(h.target(), std::move(images));
    const auto idx = target->index_of(image);
    if (!idx) {
      throw MissingContext("image of context " + std::to_string(c) + " is not in the target poset of '" +
                           h.target().label() + "'; add it to the generators and rebuild the closure");
    }
    base.table[c] = *idx;
  }
  if (!base.is_monotone()) throw InvariantViolation("induced base map is not monotone");
  return base;
}

PresheafMorphism induce_presheaf_morphism(const UnitalStarHom& h, const PosetPtr& source,
                                          const PosetPtr& target) {
  PresheafMorphism m{induce_base_map(h, source, target), {}};
  for (std::size_t c = 0; c < source->size(); ++c) {
    const Context& ctx = source->context(c);
    std::vector<BlockMatrix> images;
    for (const auto& atom : ctx.atoms()) images.push_back(h(atom));
    const Context& image = target->context(m.base.table[c]);
    std::vector<std::size_t> component;
    for (const auto& b : image.atoms()) {
      std::size_t hit = ctx.size();
      std::size_t hits = 0;
      for (std::size_t a = 0; a < images.size(); ++a) {
        if (b * images[a] == b) {
          hit = a;
          ++hits;
        }
      }
      if (hits != 1) throw InvariantViolation("character of the image context has no unique preimage");
      component.push_back(hit);
    }
    m.components.push_back(std::move(component));
  }
  if (auto w = m.naturality_witness(); !w.empty()) throw InvariantViolation("induced morphism: " + w);
  return m;
}

PresheafMorphism compose_presheaf_morphisms(const PresheafMorphism& outer, const PresheafMorphism& inner) {
  if (!same_poset(outer.base.target, inner.base.source)) {
    throw ObjectMismatch("presheaf morphisms are not composable");
  }
  PresheafMorphism out{compose_base_maps(inner.base, outer.base), {}};
  for (std::size_t c = 0; c < outer.components.size(); ++c) {
    const auto& first = inner.components.at(outer.base.table[c]);
    std::vector<std::size_t> comp(first.size());
    for (std::size_t b = 0; b < first.size(); ++b) comp[b] = outer.components[c].at(first[b]);
    out.components.push_back(std::move(comp));
  }
  return out;
}

bool is_presheaf_isomorphism(const PresheafMorphism& m) {
  if (!m.base.is_order_isomorphism()) return false;
  for (std::size_t c = 0; c < m.components.size(); ++c) {
    if (!is_permutation_of(m.components[c], m.base.source->context(c).size())) return false;
  }
  return m.is_natural();
}

PresheafMorphism invert_presheaf_isomorphism(const PresheafMorphism& m) {
  if (!is_presheaf_isomorphism(m)) throw InvariantViolation("morphism is not an isomorphism");
  const Permutation inv = invert_permutation(m.base.table);
  PresheafMorphism out{{m.base.target, m.base.source, inv}, {}};
  for (std::size_t d = 0; d < inv.size(); ++d) {
    out.components.push_back(invert_permutation(m.components[inv[d]]));
  }
  return out;
}

CopresheafMorphism CopresheafMorphism::identity(const PosetPtr& poset) {
  CopresheafMorphism m{BaseMap::identity(poset), {}};
  for (std::size_t c = 0; c < poset->size(); ++c) {
    std::vector<std::vector<std::size_t>> comp;
    for (std::size_t a = 0; a < poset->context(c).size(); ++a) comp.push_back({a});
    m.components.push_back(std::move(comp));
  }
  return m;
}

std::string CopresheafMorphism::naturality_witness() const {
  const ContextPoset& a = *base.source;
  const ContextPoset& b = *base.target;
  if (components.size() != a.size()) return "component count mismatch";
  const Bohrification ba(base.source);
  const Bohrification bb(base.target);
  for (std::size_t big = 0; big < a.size(); ++big) {
    for (std::size_t small = 0; small < a.size(); ++small) {
      if (!a.leq(small, big)) continue;
      const std::size_t gb = base.table[big];
      const std::size_t gs = base.table[small];
      if (!b.leq(gs, gb)) return "base map not monotone on " + pair_text(small, big);
      const auto incl_a = ba.inclusion(small, big);
      const auto incl_b = bb.inclusion(gs, gb);
      for (std::size_t s = 0; s < incl_a.size(); ++s) {
        // theta_C(incl(s)) versus incl(theta_C'(s)), as atom sets of phi(C).
        std::set<std::size_t> lhs;
        for (std::size_t atom : incl_a[s]) {
          lhs.insert(components[big][atom].begin(), components[big][atom].end());
        }
        std::set<std::size_t> rhs;
        for (std::size_t t : components[small][s]) rhs.insert(incl_b[t].begin(), incl_b[t].end());
        if (lhs != rhs) return "covariant square fails on " + pair_text(small, big);
      }
    }
  }
  return {};
}

CopresheafMorphism induce_copresheaf_morphism(const UnitalStarHom& h, const PosetPtr& source,
                                              const PosetPtr& target) {
  CopresheafMorphism m{induce_base_map(h, source, target), {}};
  for (std::size_t c = 0; c < source->size(); ++c) {
    const Context& image = target->context(m.base.table[c]);
    std::vector<std::vector<std::size_t>> comp;
    for (const auto& atom : source->context(c).atoms()) {
      const BlockMatrix img = h(atom);
      std::vector<std::size_t> parts;
      for (std::size_t b = 0; b < image.size(); ++b) {
        if (image.atoms()[b] * img == image.atoms()[b]) parts.push_back(b);
      }
      if (image.atom_sum(parts) != img) throw InvariantViolation("image of an atom is not an atom sum");
      comp.push_back(std::move(parts));
    }
    m.components.push_back(std::move(comp));
  }
  if (auto w = m.naturality_witness(); !w.empty()) throw InvariantViolation("induced copresheaf morphism: " + w);
  return m;
}

CopresheafMorphism compose_copresheaf_morphisms(const CopresheafMorphism& second,
                                                const CopresheafMorphism& first) {
  CopresheafMorphism out{compose_base_maps(second.base, first.base), {}};
  for (std::size_t c = 0; c < first.components.size(); ++c) {
    const auto& later = second.components.at(first.base.table[c]);
    std::vector<std::vector<std::size_t>> comp;
    for (const auto& parts : first.components[c]) {
      std::set<std::size_t> merged;
      for (std::size_t b : parts) merged.insert(later.at(b).begin(), later.at(b).end());
      comp.emplace_back(merged.begin(), merged.end());
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

PresheafMorphism dualize(const CopresheafMorphism& m) {
  PresheafMorphism out{m.base, {}};
  for (std::size_t c = 0; c < m.components.size(); ++c) {
    const std::size_t image_size = m.base.target->context(m.base.table[c]).size();
    std::vector<std::size_t> comp(image_size, kUnassigned);
    for (std::size_t a = 0; a < m.components[c].size(); ++a) {
      for (std::size_t b : m.components[c][a]) comp.at(b) = a;
    }
    if (std::find(comp.begin(), comp.end(), kUnassigned) != comp.end()) {
      throw InvariantViolation("copresheaf component is not unital");
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

namespace {

struct FunctorInputs {
  std::vector<StarAlgebra> algebras;
  std::map<std::string, PosetPtr> posets;  // by algebra label
};

FunctorInputs collect(std::span<const UnitalStarHom> homs, const PosetResolver& resolve) {
  FunctorInputs in;
  auto note = [&](const StarAlgebra& a) {
    if (in.posets.contains(a.label())) return;
    in.algebras.push_back(a);
    in.posets[a.label()] = resolve(a);
  };
  for (const auto& h : homs) {
    note(h.source());
    note(h.target());
  }
  return in;
}

}  // namespace

VerificationReport functor_S_check(std::span<const UnitalStarHom> homs, const PosetResolver& resolve) {
  VerificationReport report;
  const std::string claim = "contravariant functor S into presheaves";
  const FunctorInputs in = collect(homs, resolve);
  for (const auto& a : in.algebras) {
    const PosetPtr& p = in.posets.at(a.label());
    const auto s_id = induce_presheaf_morphism(UnitalStarHom::identity(a), p, p);
    report.add("S(id_" + a.label() + ") = id", s_id == PresheafMorphism::identity(p), claim);
  }
  for (std::size_t i = 0; i < homs.size(); ++i) {
    const auto& f = homs[i];
    const auto sf = induce_presheaf_morphism(f, in.posets.at(f.source().label()), in.posets.at(f.target().label()));
    report.add("S(h" + std::to_string(i) + ") natural", sf.is_natural(), claim, sf.naturality_witness());
    for (std::size_t j = 0; j < homs.size(); ++j) {
      const auto& g = homs[j];
      if (!(f.target() == g.source())) continue;
      const auto sg = induce_presheaf_morphism(g, in.posets.at(g.source().label()), in.posets.at(g.target().label()));
      const auto sgf = induce_presheaf_morphism(compose_hom(g, f), in.posets.at(f.source().label()),
                                                in.posets.at(g.target().label()));
      const bool ok = sgf == compose_presheaf_morphisms(sf, sg);
      report.add("S(h" + std::to_string(j) + " o h" + std::to_string(i) + ") = S(h" + std::to_string(i) +
                     ") o S(h" + std::to_string(j) + ")",
                 ok, claim);
    }
  }
  return report;
}

VerificationReport functor_B_check(std::span<const UnitalStarHom> homs, const PosetResolver& resolve) {
  VerificationReport report;
  const std::string claim = "covariant functor B into copresheaves";
  const FunctorInputs in = collect(homs, resolve);
  for (const auto& a : in.algebras) {
    const PosetPtr& p = in.posets.at(a.label());
    const auto b_id = induce_copresheaf_morphism(UnitalStarHom::identity(a), p, p);
    report.add("B(id_" + a.label() + ") = id", b_id == CopresheafMorphism::identity(p), claim);
  }
  for (std::size_t i = 0; i < homs.size(); ++i) {
    const auto& f = homs[i];
    const PosetPtr& ps = in.posets.at(f.source().label());
    const PosetPtr& pt = in.posets.at(f.target().label());
    const auto bf = induce_copresheaf_morphism(f, ps, pt);
    report.add("B(h" + std::to_string(i) + ") natural", bf.is_natural(), claim, bf.naturality_witness());

    bool restricts = true;
    for (std::size_t c = 0; c < ps->size() && restricts; ++c) {
      const Context& ctx = ps->context(c);
      const Context& image = pt->context(bf.base.table[c]);
      for (std::size_t a = 0; a < ctx.size(); ++a) {
        if (image.atom_sum(bf.components[c][a]) != f(ctx.atoms()[a])) restricts = false;
      }
    }
    report.add("B(h" + std::to_string(i) + ")_C = h restricted to C", restricts, claim);

    const auto sf = induce_presheaf_morphism(f, ps, pt);
    report.add("dual of B(h" + std::to_string(i) + ") = S(h" + std::to_string(i) + ")", dualize(bf) == sf,
               "local duality");

    for (std::size_t j = 0; j < homs.size(); ++j) {
      const auto& g = homs[j];
      if (!(f.target() == g.source())) continue;
      const auto bg = induce_copresheaf_morphism(g, pt, in.posets.at(g.target().label()));
      const auto bgf = induce_copresheaf_morphism(compose_hom(g, f), ps, in.posets.at(g.target().label()));
      report.add("B(h" + std::to_string(j) + " o h" + std::to_string(i) + ") = B(h" + std::to_string(j) +
                     ") o B(h" + std::to_string(i) + ")",
                 bgf == compose_copresheaf_morphisms(bg, bf), claim);
    }
  }
  return report;
}

}  // namespace specpresheaf
