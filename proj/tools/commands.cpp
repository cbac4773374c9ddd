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

#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <sstream>

#include "specpresheaf/bundles.hpp"
#include "specpresheaf/correspondences.hpp"
#include "specpresheaf/error.hpp"
#include "specpresheaf/presheaf_morphism.hpp"
#include "specpresheaf/spectral_presheaf.hpp"

namespace specpresheaf::cli {
namespace {

const char* const kScopeNote =
    "search is exhaustive over the stored family of contexts; nonexistence is certified relative to this family only";

std::string list_text(const std::vector<std::size_t>& v) {
  std::ostringstream s;
  s << '[';
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? " " : "") << v[i];
  s << ']';
  return s.str();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// Reads a poset from a poset, generators or presheaf document.
PosetPtr load_poset_file(const std::string& path) {
  const Json j = io::read_file(path);
  const std::string kind = io::kind_of(j);
  if (kind == "poset") return std::make_shared<const ContextPoset>(io::poset_from_json(j));
  if (kind == "generators") {
    const auto g = io::generators_from_json(j);
    return std::make_shared<const ContextPoset>(closure(g.algebra, g.contexts));
  }
  if (kind == "presheaf") return io::presheaf_from_json(j).poset_ptr();
  throw SchemaError("kind", "expected \"poset\", \"generators\" or \"presheaf\", found \"" + kind + "\"");
}

void add_checks(Outcome& out, const VerificationReport& r) {
  for (const auto& c : r.checks) {
    out.lines.push_back(std::string(c.passed ? "  [pass] " : "  [FAIL] ") + c.name + (c.detail.empty() ? "" : ": " + c.detail) +
                        "  (" + c.claim + ")");
  }
  Json checks = io::to_json(r)["checks"];
  if (!out.report.contains("checks")) out.report["checks"] = Json::array();
  for (auto& c : checks) out.report["checks"].push_back(std::move(c));
  if (!r.passed()) out.exit_code = 1;
}

std::vector<UnitalStarHom> builtin_automorphisms(const ResolvedPoset& r) {
  if (r.bundle == "m2fan") return m2fan_automorphisms();
  if (r.bundle.size() == 2 && r.bundle[0] == 'c') return abelian_automorphisms(static_cast<std::size_t>(r.bundle[1] - '0'));
  return {};
}

Json group_json(const AutGroupReport& g) {
  Json j;
  j["algebra"] = g.algebra;
  j["contexts"] = g.contexts;
  j["order_automorphisms"] = g.order_automorphisms;
  j["presheaf_automorphisms"] = g.presheaf_automorphisms;
  j["partial_automorphisms"] = g.partial_automorphisms;
  j["algebra_induced_partial_automorphisms"] = g.algebra_induced_partial_automorphisms;
  j["lattice_elements"] = g.lattice_elements ? Json(*g.lattice_elements) : Json(nullptr);
  j["lattice_automorphisms"] = g.lattice_automorphisms ? Json(*g.lattice_automorphisms) : Json(nullptr);
  j["jordan_automorphisms"] = g.jordan_automorphisms ? Json(*g.jordan_automorphisms) : Json(nullptr);
  j["supplied_algebra_automorphisms"] = g.supplied_algebra_automorphisms;
  j["witnesses_per_order_automorphism"] = g.witnesses_per_order_automorphism;
  j["rigid"] = g.rigid;
  return j;
}

void group_lines(Outcome& out, const AutGroupReport& g) {
  auto opt = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string("-"); };
  out.lines.push_back(g.algebra + ": " + std::to_string(g.contexts) + " contexts");
  out.lines.push_back("  group          order");
  out.lines.push_back("  Aut_ord        " + std::to_string(g.order_automorphisms));
  out.lines.push_back("  Aut(Sigma)     " + std::to_string(g.presheaf_automorphisms));
  out.lines.push_back("  Aut_part       " + std::to_string(g.partial_automorphisms));
  out.lines.push_back("  Aut_cOML       " + opt(g.lattice_automorphisms) + "  (" + opt(g.lattice_elements) +
                      " lattice elements)");
  out.lines.push_back("  Aut_Jordan     " + opt(g.jordan_automorphisms));
  out.lines.push_back("  partial isos arising from *-automorphisms: " +
                      std::to_string(g.algebra_induced_partial_automorphisms));
  std::size_t lo = 0, hi = 0;
  if (!g.witnesses_per_order_automorphism.empty()) {
    lo = *std::min_element(g.witnesses_per_order_automorphism.begin(), g.witnesses_per_order_automorphism.end());
    hi = *std::max_element(g.witnesses_per_order_automorphism.begin(), g.witnesses_per_order_automorphism.end());
  }
  out.lines.push_back("  compatible families per order automorphism: " + std::to_string(lo) +
                      (lo == hi ? "" : ".." + std::to_string(hi)) + ", rigid: " + yes_no(g.rigid));
}

}  // namespace

ResolvedPoset resolve_poset(const PosetSource& src) {
  const int given = !src.poset_file.empty() + !src.generators_file.empty() + !src.presheaf_file.empty() +
                    !src.bundle.empty() + src.full_abelian.has_value();
  if (given != 1) {
    throw UsageError("give exactly one of --poset, --generators, --presheaf, --bundle, --full-abelian");
  }
  if (!src.poset_file.empty()) return {load_poset_file(src.poset_file), src.poset_file, {}};
  if (!src.generators_file.empty()) return {load_poset_file(src.generators_file), src.generators_file, {}};
  if (!src.presheaf_file.empty()) return {load_poset_file(src.presheaf_file), src.presheaf_file, {}};
  if (src.full_abelian) {
    const std::size_t n = *src.full_abelian;
    if (n == 0) throw UsageError("--full-abelian needs n >= 1");
    auto p = std::make_shared<const ContextPoset>(full_abelian_poset(n));
    const std::string name = "c" + std::to_string(n);
    return {p, name, n <= 9 ? name : std::string()};
  }
  std::string name = src.bundle == "mermin_peres" ? "mermin" : src.bundle;
  const auto names = bundle_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::string all;
    for (const auto& n : names) all += (all.empty() ? "" : ", ") + n;
    throw UsageError("unknown bundle '" + src.bundle + "' (known: " + all + ")");
  }
  return {std::make_shared<const ContextPoset>(bundle_poset(name)), name, name};
}

Outcome build_poset(const PosetSource& src, const std::string& algebra_file, const std::string& out_file) {
  const ResolvedPoset r = resolve_poset(src);
  const ContextPoset& p = *r.poset;
  if (!algebra_file.empty()) {
    const StarAlgebra a = io::algebra_from_json(io::read_file(algebra_file), {});
    if (!(a == p.algebra())) {
      throw UsageError("the contexts belong to '" + p.algebra().label() + "', not to the algebra in '" + algebra_file + "'");
    }
  }
  Outcome out;
  out.report["command"] = "build-poset";
  out.report["source"] = r.name;
  out.report["algebra"] = p.algebra().label();
  out.report["contexts"] = p.size();
  out.report["maximal"] = p.maximal().size();
  Json sizes = Json::array();
  for (const auto& c : p.contexts()) sizes.push_back(c.size());
  out.report["atom_counts"] = std::move(sizes);
  out.lines.push_back(r.name + ": " + std::to_string(p.size()) + " contexts (" + std::to_string(p.maximal().size()) +
                      " maximal) in " + p.algebra().label());
  out.lines.push_back("  index  atoms  covers");
  for (std::size_t c = 0; c < p.size(); ++c) {
    out.lines.push_back("  " + std::to_string(c) + std::string(7 - std::min<std::size_t>(6, std::to_string(c).size()), ' ') +
                        std::to_string(p.context(c).size()) + "      " + list_text(p.covers_below(c)));
  }
  if (!out_file.empty()) {
    io::write_file(out_file, io::to_json(p));
    out.report["written"] = out_file;
    out.lines.push_back("wrote " + out_file);
  }
  return out;
}

Outcome presheaf(const PosetSource& src, const std::string& out_file) {
  const ResolvedPoset r = resolve_poset(src);
  const SpectralPresheaf s(r.poset);
  const PresheafLawReport law = check_presheaf_laws(s);
  Outcome out;
  out.report["command"] = "presheaf";
  out.report["source"] = r.name;
  out.report["contexts"] = s.size();
  Json sizes = Json::array();
  for (std::size_t c = 0; c < s.size(); ++c) sizes.push_back(s.component_size(c));
  out.report["components"] = std::move(sizes);
  out.report["pairs_checked"] = law.pairs_checked;
  out.report["triples_checked"] = law.triples_checked;
  out.report["identity"] = law.identity;
  out.report["composition"] = law.composition;
  out.report["surjectivity"] = law.surjectivity;
  out.report["witnesses"] = law.witnesses;
  out.report["claim"] = "spectral presheaf: restriction of characters is functorial and surjective";
  out.lines.push_back("spectral presheaf over " + std::to_string(s.size()) + " contexts of " +
                      s.poset().algebra().label());
  out.lines.push_back("  identity " + yes_no(law.identity) + ", composition " + yes_no(law.composition) +
                      ", surjectivity " + yes_no(law.surjectivity) + " (" + std::to_string(law.pairs_checked) +
                      " pairs, " + std::to_string(law.triples_checked) + " triples)");
  for (const auto& w : law.witnesses) out.lines.push_back("  witness: " + w);
  if (!law.passed()) out.exit_code = 1;
  if (!out_file.empty()) {
    io::write_file(out_file, io::to_json(s));
    out.report["written"] = out_file;
    out.lines.push_back("wrote " + out_file);
  }
  return out;
}

Outcome global_sections(const PosetSource& src, bool count_only) {
  const ResolvedPoset r = resolve_poset(src);
  const SpectralPresheaf s(r.poset);
  const auto sections = specpresheaf::global_sections(s);
  Outcome out;
  out.report["command"] = "global-sections";
  out.report["source"] = r.name;
  out.report["contexts"] = s.size();
  out.report["sections"] = sections.size();
  out.report["scope"] = kScopeNote;
  out.report["claim"] = "global section; Kochen-Specker obstruction when there is none";
  out.lines.push_back(std::to_string(s.size()) + " contexts, " + std::to_string(sections.size()) + " sections");
  if (!count_only) {
    Json list = Json::array();
    for (const auto& g : sections) {
      list.push_back(g);
      out.lines.push_back("  " + list_text(g));
    }
    out.report["list"] = std::move(list);
  }
  if (sections.empty()) out.lines.push_back("  no global section: " + std::string(kScopeNote));
  return out;
}

Outcome induce(const std::string& hom_file, const std::string& source_file, const std::string& target_file,
               const std::string& out_file) {
  const UnitalStarHom h = io::hom_from_json(io::read_file(hom_file));
  auto poset_for = [](const std::string& file, const StarAlgebra& a, const char* flag) -> PosetPtr {
    if (!file.empty()) {
      PosetPtr p = load_poset_file(file);
      if (!(p->algebra() == a)) throw UsageError(std::string(flag) + " poset is not over '" + a.label() + "'");
      return p;
    }
    if (a.is_abelian()) return std::make_shared<const ContextPoset>(full_abelian_poset(a.dimension()));
    throw UsageError(std::string(flag) + " is required for the non-abelian algebra '" + a.label() + "'");
  };
  const PosetPtr source = poset_for(source_file, h.source(), "--source");
  const PosetPtr target = poset_for(target_file, h.target(), "--target");
  const PresheafMorphism m = induce_presheaf_morphism(h, source, target);
  const CopresheafMorphism b = induce_copresheaf_morphism(h, source, target);
  Outcome out;
  out.report["command"] = "induce";
  out.report["source"] = h.source().label();
  out.report["target"] = h.target().label();
  out.report["base"] = m.base.table;
  Json comps = Json::array();
  for (const auto& c : m.components) comps.push_back(c);
  out.report["components"] = std::move(comps);
  const bool natural = m.is_natural();
  const bool iso = is_presheaf_isomorphism(m);
  const bool dual = dualize(b) == m;
  out.report["natural"] = natural;
  out.report["isomorphism"] = iso;
  out.report["copresheaf_natural"] = b.is_natural();
  out.report["dual_of_bohrification_map"] = dual;
  out.report["claim"] = "base map and natural transformation induced by a unital *-homomorphism";
  out.lines.push_back("S(h): " + h.target().label() + " -> " + h.source().label() + " presheaves over base map " +
                      list_text(m.base.table));
  for (std::size_t c = 0; c < m.components.size(); ++c) {
    out.lines.push_back("  component at " + std::to_string(c) + ": " + list_text(m.components[c]));
  }
  out.lines.push_back("  natural " + yes_no(natural) + ", isomorphism " + yes_no(iso) + ", B(h) natural " +
                      yes_no(b.is_natural()) + ", dual of B(h) = S(h) " + yes_no(dual));
  if (!natural || !b.is_natural() || !dual) out.exit_code = 1;
  if (!out_file.empty()) {
    io::write_file(out_file, io::to_json(m));
    out.report["written"] = out_file;
    out.lines.push_back("wrote " + out_file);
  }
  return out;
}

Outcome verify_functor(const std::string& homs_file) {
  std::vector<UnitalStarHom> homs;
  std::map<std::string, PosetPtr> cache;
  io::Workspace ws;
  if (homs_file.empty()) {
    const StarAlgebra c2 = StarAlgebra::abelian(2), c3 = StarAlgebra::abelian(3), c4 = StarAlgebra::abelian(4);
    homs.push_back(diagonal_embedding(c2, c3, {0, 0, 1}));
    homs.push_back(diagonal_embedding(c3, c4, {0, 1, 2, 2}));
    for (auto& a : abelian_automorphisms(3)) homs.push_back(std::move(a));
  } else if (std::filesystem::is_directory(homs_file)) {
    // One document per file: homs, posets or whole workspaces, in file-name order.
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(homs_file)) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const Json j = io::read_file(f);
      const std::string kind = io::kind_of(j);
      const std::string stem = f.stem().string();
      if (kind == "hom") {
        ws.add(stem, io::hom_from_json(j));
      } else if (kind == "poset") {
        ws.add(stem, std::make_shared<const ContextPoset>(io::poset_from_json(j)));
      } else if (kind == "workspace") {
        const io::Workspace part = io::Workspace::from_json(j);
        for (const auto& [name, h] : part.homs()) ws.add(stem + "/" + name, h);
        for (const auto& [name, q] : part.posets()) ws.add(stem + "/" + name, q);
      }
    }
  } else {
    ws = io::Workspace::load(homs_file);
  }
  if (!homs_file.empty()) {
    for (const auto& [name, h] : ws.homs()) homs.push_back(h);
    if (homs.empty()) throw UsageError("'" + homs_file + "' contains no homs");
  }
  PosetResolver posets = [&](const StarAlgebra& a) -> PosetPtr {
    if (auto p = ws.poset_for(a)) return p;
    auto it = cache.find(a.label());
    if (it != cache.end() && it->second->algebra() == a) return it->second;
    if (!a.is_abelian()) throw MissingContext("no stored poset for '" + a.label() + "'; add one to the workspace");
    auto p = std::make_shared<const ContextPoset>(full_abelian_poset(a.dimension()));
    cache.insert_or_assign(a.label(), p);
    return p;
  };
  Outcome out;
  out.report["command"] = "verify-functor";
  out.report["homs"] = homs.size();
  out.lines.push_back("functor checks over " + std::to_string(homs.size()) + " homs");
  out.lines.push_back("S (contravariant):");
  add_checks(out, functor_S_check(homs, posets));
  out.lines.push_back("B (covariant):");
  add_checks(out, functor_B_check(homs, posets));
  out.report["passed"] = out.exit_code == 0;
  return out;
}

Outcome aut_groups(const PosetSource& src, const std::string& automorphisms_file) {
  const ResolvedPoset r = resolve_poset(src);
  std::vector<UnitalStarHom> autos;
  if (automorphisms_file.empty()) {
    autos = builtin_automorphisms(r);
  } else {
    const io::Workspace ws = io::Workspace::load(automorphisms_file);
    for (const auto& [name, h] : ws.homs()) autos.push_back(h);
  }
  const AutGroupReport g = specpresheaf::aut_groups(r.poset, autos);
  Outcome out;
  out.report["command"] = "aut-groups";
  out.report["source"] = r.name;
  out.report["groups"] = group_json(g);
  group_lines(out, g);
  add_checks(out, g.checks);
  out.report["passed"] = out.exit_code == 0;
  return out;
}

Outcome roundtrip(const PosetSource& src, const std::string& iso_file) {
  Outcome out;
  out.report["command"] = "roundtrip";
  if (iso_file.empty()) {
    const ResolvedPoset r = resolve_poset(src);
    out.report["source"] = r.name;
    out.lines.push_back("roundtrips over every automorphism of Sigma(" + r.poset->algebra().label() + ")");
    add_checks(out, correspondence_roundtrips(r.poset));
    out.report["passed"] = out.exit_code == 0;
    return out;
  }
  const PresheafMorphism m = io::presheaf_morphism_from_json(io::read_file(iso_file));
  if (!src.poset_file.empty() || !src.presheaf_file.empty() || !src.generators_file.empty() || !src.bundle.empty() ||
      src.full_abelian) {
    const ResolvedPoset r = resolve_poset(src);
    if (!same_poset(r.poset, m.base.source) && !same_poset(r.poset, m.base.target)) {
      throw UsageError("the isomorphism in '" + iso_file + "' is not over the given poset");
    }
  }
  out.report["source"] = iso_file;
  VerificationReport rep;
  const std::string claim = "bijective correspondence between isomorphisms";
  if (!is_presheaf_isomorphism(m)) {
    rep.add("is_presheaf_isomorphism", false, claim, "the morphism is not an isomorphism");
  } else {
    const PartialAlgebraIso t = partial_iso_from_presheaf_iso(m);
    rep.add("presheaf -> partial -> presheaf", presheaf_iso_from_partial_iso(t) == m, claim);
    rep.add("partial -> presheaf -> partial", partial_iso_from_presheaf_iso(presheaf_iso_from_partial_iso(t)) == t, claim);
    const OrthoLattice ls = lattice_from_algebra(*m.base.source);
    const OrthoLattice lt = lattice_from_algebra(*m.base.target);
    const Permutation l = lattice_iso_from_partial_iso(t, ls, lt);
    const PartialAlgebraIso back = extend_lattice_iso(l, ls, lt, m.base.source, m.base.target);
    rep.add("partial -> lattice -> partial", back == t, "isomorphisms of complete orthomodular lattices");
    rep.add("lattice -> partial -> lattice", lattice_iso_from_partial_iso(back, ls, lt) == l,
            "isomorphisms of complete orthomodular lattices");
    out.report["kappa"] = io::to_json(t)["kappa"];
    out.report["lattice_map"] = l;
  }
  out.lines.push_back("roundtrips for " + iso_file);
  add_checks(out, rep);
  out.report["passed"] = out.exit_code == 0;
  return out;
}

Outcome verify_correspondence(const std::string& algebra) {
  Outcome out;
  out.report["command"] = "verify-correspondence";
  out.report["algebra"] = algebra;
  VerificationReport extra;
  AutGroupReport g;

  if (algebra == "c2" || algebra == "c3" || algebra == "c4") {
    const std::size_t n = static_cast<std::size_t>(algebra[1] - '0');
    auto p = std::make_shared<const ContextPoset>(full_abelian_poset(n));
    const auto autos = abelian_automorphisms(n);
    g = specpresheaf::aut_groups(p, autos);
    if (n == 2) {
      const auto swaps = compatible_partial_isos(BaseMap::identity(p));
      const bool witnessed = g.order_automorphisms == 1 && g.partial_automorphisms == 2 && swaps.size() == 2;
      extra.add("C^2 exclusion witness", witnessed, "the base map alone cannot recover the swap of C^2",
                "|Aut_ord| = " + std::to_string(g.order_automorphisms) + ", |Aut_part| = " +
                    std::to_string(g.partial_automorphisms) + ", families over the identity base map = " +
                    std::to_string(swaps.size()));
    } else {
      const bool orders = g.order_automorphisms == g.presheaf_automorphisms &&
                          g.presheaf_automorphisms == g.partial_automorphisms &&
                          g.jordan_automorphisms == g.partial_automorphisms;
      extra.add("group orders agree", orders, "the four groups are isomorphic",
                "order " + std::to_string(g.order_automorphisms));
      extra.add("rigidity", g.rigid, "induces a unique isomorphism",
                "one compatible family for each of " + std::to_string(g.order_automorphisms) + " order automorphisms");
      bool qj = true;
      for (const auto& h : jordan_automorphisms_abelian(p->algebra())) {
        const auto q = verify_quasi_jordan({partial_iso_from_map(h, p, p)});
        qj = qj && q.passed() && q.globally_linear;
      }
      extra.add("coordinate permutations are linear quasi-Jordan maps", qj, "quasi-Jordan isomorphism");
    }
    extra.append(correspondence_roundtrips(p));
  } else if (algebra == "m2fan") {
    auto p = std::make_shared<const ContextPoset>(m2fan_poset());
    g = specpresheaf::aut_groups(p, m2fan_automorphisms());
    extra.add("fan exclusion witness (orders)", g.order_automorphisms > g.algebra_induced_partial_automorphisms,
              "the base map alone cannot single out a Jordan isomorphism of M_2",
              "|Aut_ord| = " + std::to_string(g.order_automorphisms) + " > " +
                  std::to_string(g.algebra_induced_partial_automorphisms) + " partial isos from *-automorphisms");
    const auto samples = m2fan_samples();
    const auto q = verify_quasi_jordan({m2fan_patchwork(p)}, samples);
    extra.add("fan exclusion witness (patchwork)", q.passed() && !q.globally_linear,
              "quasi-Jordan isomorphism that is not linear",
              "per-context Jordan " + yes_no(q.per_context_jordan) + ", globally linear " + yes_no(q.globally_linear) +
                  ", additive on " + std::to_string(q.samples_additive) + "/" + std::to_string(q.samples_evaluated) +
                  " samples");
    extra.append(correspondence_roundtrips(p));
  } else if (algebra == "mermin") {
    auto p = std::make_shared<const ContextPoset>(mermin_peres_poset());
    const auto sections = specpresheaf::global_sections(SpectralPresheaf(p));
    extra.add("no global section", sections.empty(), "Kochen-Specker obstruction",
              std::to_string(sections.size()) + " sections over " + std::to_string(p->size()) + " contexts; " + kScopeNote);
    g = specpresheaf::aut_groups(p);
    extra.append(correspondence_roundtrips(p));
  } else {
    throw UsageError("unknown algebra '" + algebra + "' (expected c2, c3, c4, m2fan, mermin)");
  }
  out.report["groups"] = group_json(g);
  group_lines(out, g);
  add_checks(out, g.checks);
  add_checks(out, extra);
  out.report["passed"] = out.exit_code == 0;
  return out;
}

}  // namespace specpresheaf::cli
