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

#include "specpresheaf/correspondences.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

#include "specpresheaf/error.hpp"
#include "specpresheaf/groups.hpp"
#include "specpresheaf/linear_algebra.hpp"

namespace specpresheaf {
namespace {

bool is_bijection(const std::vector<std::size_t>& v, std::size_t n) {
  if (v.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (std::size_t x : v) {
    if (x >= n || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

std::optional<std::size_t> find_atom(const Context& c, const BlockMatrix& p) {
  const auto& atoms = c.atoms();
  auto it = std::find(atoms.begin(), atoms.end(), p);
  if (it == atoms.end()) return std::nullopt;
  return static_cast<std::size_t>(it - atoms.begin());
}

BlockMatrix combine(std::span<const GaussianRational> coeffs, const std::vector<BlockMatrix>& images,
                    const Shape& shape) {
  BlockMatrix out = BlockMatrix::zero(shape);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i].is_zero()) out += coeffs[i] * images[i];
  }
  return out;
}

std::vector<std::size_t> presheaf_key(const PresheafMorphism& m) {
  std::vector<std::size_t> k = m.base.table;
  for (const auto& comp : m.components) k.insert(k.end(), comp.begin(), comp.end());
  return k;
}

AlgebraMap compose_maps(const AlgebraMap& g, const AlgebraMap& f) {
  std::vector<BlockMatrix> images;
  const std::size_t dim = f.source.dimension();
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<GaussianRational> e(dim);
    e[k] = GaussianRational(1);
    images.push_back(g.apply(f.apply(BlockMatrix::from_coordinates(f.source.shape(), e))));
  }
  return AlgebraMap::from_unit_images(f.source, g.target, images);
}

// Images of the standard coordinate units, compared by value.
std::vector<std::size_t> map_key(const AlgebraMap& h) {
  std::vector<std::size_t> k;
  for (const auto& row : h.matrix) {
    for (const auto& x : row) {
      // Entries of Jordan automorphisms of C^n are 0 or 1.
      k.push_back(x.is_zero() ? 0 : (x == GaussianRational(1) ? 1 : 2));
    }
  }
  return k;
}

}  // namespace

// ---------------------------------------------------------------------------
// PartialAlgebraIso

PartialAlgebraIso PartialAlgebraIso::identity(const PosetPtr& poset) {
  PartialAlgebraIso t{BaseMap::identity(poset), {}};
  for (const auto& c : poset->contexts()) t.kappa.push_back(identity_permutation(c.size()));
  return t;
}

const BlockMatrix& PartialAlgebraIso::image_atom(std::size_t c, std::size_t a) const {
  return base.target->context(base.table.at(c)).atoms().at(kappa.at(c).at(a));
}

std::string PartialAlgebraIso::validity_witness() const {
  if (!base.source || !base.target) return "null poset";
  if (!base.is_order_isomorphism()) return "base map is not an order isomorphism";
  const ContextPoset& a = *base.source;
  const ContextPoset& b = *base.target;
  if (kappa.size() != a.size()) return "kappa has " + std::to_string(kappa.size()) + " entries";
  for (std::size_t c = 0; c < a.size(); ++c) {
    const std::size_t n = a.context(c).size();
    if (b.context(base.table[c]).size() != n || !is_bijection(kappa[c], n)) {
      return "kappa at context " + std::to_string(c) + " is not an atom bijection";
    }
  }
  // The atoms of gamma(C) are linearly independent, so image(a') = sum of the
  // images of the atoms of C below a' holds iff kappa commutes with the
  // restriction tables.
  for (std::size_t big = 0; big < a.size(); ++big) {
    for (std::size_t small = 0; small < a.size(); ++small) {
      if (small == big || !a.leq(small, big)) continue;
      const auto& rho = a.restriction(small, big);
      const auto& rho_image = b.restriction(base.table[small], base.table[big]);
      for (std::size_t k = 0; k < rho.size(); ++k) {
        if (rho_image[kappa[big][k]] != kappa[small][rho[k]]) {
          return "kappa disagrees on atom " + std::to_string(rho[k]) + " of context " + std::to_string(small) +
                 " inside context " + std::to_string(big);
        }
      }
    }
  }
  return {};
}

std::optional<BlockMatrix> PartialAlgebraIso::try_apply(const BlockMatrix& x) const {
  const ContextPoset& a = *base.source;
  a.algebra().require_element(x);
  const Shape& shape = target().shape();
  for (std::size_t c = 0; c < a.size(); ++c) {
    auto coeffs = a.context(c).coordinates(x);
    if (!coeffs) continue;
    BlockMatrix out = BlockMatrix::zero(shape);
    for (std::size_t k = 0; k < coeffs->size(); ++k) {
      if (!(*coeffs)[k].is_zero()) out += (*coeffs)[k] * image_atom(c, k);
    }
    return out;
  }
  return std::nullopt;
}

BlockMatrix PartialAlgebraIso::apply(const BlockMatrix& x) const {
  auto y = try_apply(x);
  if (!y) throw InvariantViolation("element " + x.to_string() + " lies in no stored context");
  return *y;
}

std::vector<std::size_t> PartialAlgebraIso::key() const {
  std::vector<std::size_t> k = base.table;
  for (const auto& row : kappa) k.insert(k.end(), row.begin(), row.end());
  return k;
}

PartialAlgebraIso compose_partial_isos(const PartialAlgebraIso& second, const PartialAlgebraIso& first) {
  PartialAlgebraIso out{compose_base_maps(second.base, first.base), {}};
  out.kappa.resize(first.kappa.size());
  for (std::size_t c = 0; c < first.kappa.size(); ++c) {
    const auto& mid = second.kappa.at(first.base.table[c]);
    for (std::size_t a : first.kappa[c]) out.kappa[c].push_back(mid.at(a));
  }
  return out;
}

PartialAlgebraIso invert_partial_iso(const PartialAlgebraIso& t) {
  const std::string why = t.validity_witness();
  if (!why.empty()) throw InvariantViolation("invert_partial_iso(): " + why);
  PartialAlgebraIso out{{t.base.target, t.base.source, invert_permutation(t.base.table)}, {}};
  out.kappa.resize(t.kappa.size());
  for (std::size_t c = 0; c < t.kappa.size(); ++c) out.kappa[t.base.table[c]] = invert_permutation(t.kappa[c]);
  return out;
}

PartialAlgebraIso partial_iso_from_presheaf_iso(const PresheafMorphism& m) {
  if (!is_presheaf_isomorphism(m)) {
    throw InvariantViolation("partial_iso_from_presheaf_iso(): morphism is not an isomorphism");
  }
  PartialAlgebraIso t{m.base, {}};
  for (const auto& comp : m.components) t.kappa.push_back(invert_permutation(comp));
  const std::string why = t.validity_witness();
  if (!why.empty()) throw InvariantViolation("partial_iso_from_presheaf_iso(): " + why);
  return t;
}

PresheafMorphism presheaf_iso_from_partial_iso(const PartialAlgebraIso& t) {
  PresheafMorphism m{t.base, {}};
  for (const auto& k : t.kappa) m.components.push_back(invert_permutation(k));
  return m;
}

PartialAlgebraIso partial_iso_from_map(const AlgebraMap& h, const PosetPtr& source, const PosetPtr& target) {
  if (!(h.source == source->algebra()) || !(h.target == target->algebra())) {
    throw ObjectMismatch("partial_iso_from_map(): map and posets belong to different algebras");
  }
  PartialAlgebraIso t{{source, target, {}}, {}};
  for (std::size_t c = 0; c < source->size(); ++c) {
    std::vector<BlockMatrix> images;
    for (const auto& p : source->context(c).atoms()) {
      BlockMatrix q = h.apply(p);
      if (q.is_zero() || !is_projection(q)) {
        throw InvariantViolation("atom of context " + std::to_string(c) + " is not sent to a nonzero projection");
      }
      images.push_back(std::move(q));
    }
    const Context image(target->algebra(), images);
    const auto idx = target->index_of(image);
    if (!idx) {
      throw MissingContext("image of context " + std::to_string(c) + " is not stored in the target poset");
    }
    t.base.table.push_back(*idx);
    std::vector<std::size_t> row;
    for (const auto& q : images) row.push_back(*find_atom(target->context(*idx), q));
    t.kappa.push_back(std::move(row));
  }
  const std::string why = t.validity_witness();
  if (!why.empty()) throw InvariantViolation("partial_iso_from_map(): " + why);
  return t;
}

// ---------------------------------------------------------------------------
// Lattices

Permutation lattice_iso_from_partial_iso(const PartialAlgebraIso& t, const OrthoLattice& source,
                                         const OrthoLattice& target) {
  if (source.size() != target.size()) throw InvariantViolation("lattices of different sizes");
  Permutation l(source.size());
  std::vector<char> hit(target.size(), 0);
  for (std::size_t i = 0; i < source.size(); ++i) {
    const auto j = target.index_of(t.apply(source.element(i)));
    if (!j) throw InvariantViolation("image of lattice element " + std::to_string(i) + " is not in the target lattice");
    if (hit[*j]) throw InvariantViolation("lattice map not injective at element " + std::to_string(i));
    hit[*j] = 1;
    l[i] = *j;
  }
  return l;
}

LatticeAtlas lattice_atlas(const ContextPoset& poset, const OrthoLattice& lattice) {
  LatticeAtlas atlas;
  atlas.chart.assign(lattice.size(), {kUnassigned, 0});
  for (std::size_t c = 0; c < poset.size(); ++c) {
    const Context& ctx = poset.context(c);
    if (ctx.size() > 20) throw SizeBoundExceeded("lattice_atlas(): context with " + std::to_string(ctx.size()) + " atoms");
    std::vector<std::size_t> row(std::size_t{1} << ctx.size());
    for (std::uint64_t mask = 0; mask < row.size(); ++mask) {
      std::vector<std::size_t> subset;
      for (std::size_t a = 0; a < ctx.size(); ++a) {
        if (mask & (std::uint64_t{1} << a)) subset.push_back(a);
      }
      const auto i = lattice.index_of(subset.empty() ? poset.algebra().zero() : ctx.atom_sum(subset));
      if (!i) throw InvariantViolation("atom sum of context " + std::to_string(c) + " missing from the lattice");
      row[mask] = *i;
      if (atlas.chart[*i].first == kUnassigned) atlas.chart[*i] = {c, mask};
    }
    atlas.index.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    if (atlas.chart[i].first == kUnassigned) {
      throw InvariantViolation("lattice element " + std::to_string(i) + " is no atom sum of a stored context");
    }
  }
  return atlas;
}

Permutation lattice_iso_from_partial_iso(const PartialAlgebraIso& t, const LatticeAtlas& source,
                                         const LatticeAtlas& target) {
  const std::size_t n = source.chart.size();
  Permutation l(n);
  std::vector<char> hit(target.chart.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [c, mask] = source.chart[i];
    std::uint64_t image = 0;
    for (std::size_t a = 0; a < t.kappa[c].size(); ++a) {
      if (mask & (std::uint64_t{1} << a)) image |= std::uint64_t{1} << t.kappa[c][a];
    }
    const std::size_t j = target.index.at(t.base.table[c]).at(image);
    if (hit.at(j)) throw InvariantViolation("lattice map not injective at element " + std::to_string(i));
    hit[j] = 1;
    l[i] = j;
  }
  return l;
}

namespace {

// Bijection, complement and order laws of a candidate lattice map.
void check_lattice_laws(const Permutation& l, const OrthoLattice& source, const OrthoLattice& target) {
  const std::size_t n = source.size();
  if (target.size() != n) throw InvariantViolation("lattices of different sizes");
  if (l.size() != n) throw ShapeMismatch("lattice map has " + std::to_string(l.size()) + " entries");
  std::vector<std::size_t> preimage(n, kUnassigned);
  for (std::size_t i = 0; i < n; ++i) {
    if (l[i] >= n) throw LatticeLawViolation("bijection", i, i);
    if (preimage[l[i]] != kUnassigned) throw LatticeLawViolation("bijection", preimage[l[i]], i);
    preimage[l[i]] = i;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (l[source.complement(i)] != target.complement(l[i])) {
      throw LatticeLawViolation("complement", i, source.complement(i));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (source.leq(i, j) != target.leq(l[i], l[j])) throw LatticeLawViolation("order", i, j);
    }
  }
}

}  // namespace

PartialAlgebraIso extend_lattice_iso(const Permutation& l, const OrthoLattice& source,
                                     const OrthoLattice& target, const PosetPtr& source_poset,
                                     const PosetPtr& target_poset) {
  check_lattice_laws(l, source, target);
  PartialAlgebraIso t{{source_poset, target_poset, {}}, {}};
  const Shape& shape = target_poset->algebra().shape();
  for (std::size_t c = 0; c < source_poset->size(); ++c) {
    const Context& ctx = source_poset->context(c);
    const std::size_t k = ctx.size();
    std::vector<std::size_t> atom_idx;
    std::vector<BlockMatrix> images;
    for (const auto& p : ctx.atoms()) {
      const auto i = source.index_of(p);
      if (!i) throw InvariantViolation("atom of context " + std::to_string(c) + " missing from the lattice");
      atom_idx.push_back(*i);
      images.push_back(target.element(l[*i]));
    }
    if (k > 20) throw SizeBoundExceeded("extend_lattice_iso(): context with " + std::to_string(k) + " atoms");
    for (std::uint32_t mask = 3; mask < (1u << k); ++mask) {
      if ((mask & (mask - 1)) == 0) continue;
      std::vector<std::size_t> subset;
      BlockMatrix expected = BlockMatrix::zero(shape);
      for (std::size_t a = 0; a < k; ++a) {
        if (mask & (1u << a)) {
          subset.push_back(a);
          expected += images[a];
        }
      }
      const auto sum = source.index_of(ctx.atom_sum(subset));
      if (!sum) throw InvariantViolation("atom sum of context " + std::to_string(c) + " missing from the lattice");
      if (!(target.element(l[*sum]) == expected)) {
        throw LatticeLawViolation("commuting sum", atom_idx[subset.front()], *sum);
      }
    }
    // The lattice laws above make the images an orthogonal decomposition of
    // the unit, so the image context is found by its sorted atom list.
    std::vector<BlockMatrix> sorted = images;
    std::sort(sorted.begin(), sorted.end());
    std::optional<std::size_t> idx;
    for (std::size_t d = 0; d < target_poset->size() && !idx; ++d) {
      if (target_poset->context(d).atoms() == sorted) idx = d;
    }
    if (!idx) throw MissingContext("image of context " + std::to_string(c) + " is not stored in the target poset");
    t.base.table.push_back(*idx);
    std::vector<std::size_t> row;
    for (const auto& q : images) row.push_back(*find_atom(target_poset->context(*idx), q));
    t.kappa.push_back(std::move(row));
  }
  const std::string why = t.validity_witness();
  if (!why.empty()) throw InvariantViolation("extend_lattice_iso(): " + why);
  return t;
}

PartialAlgebraIso extend_lattice_iso(const Permutation& l, const OrthoLattice& source,
                                     const OrthoLattice& target, const LatticeAtlas& source_atlas,
                                     const LatticeAtlas& target_atlas, const PosetPtr& source_poset,
                                     const PosetPtr& target_poset) {
  check_lattice_laws(l, source, target);
  if (source_atlas.index.size() != source_poset->size() || target_atlas.index.size() != target_poset->size()) {
    throw ObjectMismatch("extend_lattice_iso(): atlas does not belong to the poset");
  }
  PartialAlgebraIso t{{source_poset, target_poset, {}}, {}};
  for (std::size_t c = 0; c < source_poset->size(); ++c) {
    const std::size_t k = source_poset->context(c).size();
    const auto& chart = source_atlas.index[c];
    // Image context: the stored context whose atoms are exactly l(atoms of c).
    std::optional<std::size_t> image;
    std::vector<std::size_t> row(k, kUnassigned);
    for (std::size_t d = 0; d < target_poset->size() && !image; ++d) {
      if (target_poset->context(d).size() != k) continue;
      const auto& target_chart = target_atlas.index[d];
      bool all = true;
      for (std::size_t a = 0; a < k && all; ++a) {
        row[a] = kUnassigned;
        for (std::size_t b = 0; b < k; ++b) {
          if (target_chart[std::size_t{1} << b] == l[chart[std::size_t{1} << a]]) row[a] = b;
        }
        all = row[a] != kUnassigned;
      }
      if (all) image = d;
    }
    if (!image) throw MissingContext("image of context " + std::to_string(c) + " is not stored in the target poset");
    const auto& target_chart = target_atlas.index[*image];
    for (std::uint64_t mask = 1; mask < chart.size(); ++mask) {
      std::uint64_t mapped = 0;
      for (std::size_t a = 0; a < k; ++a) {
        if (mask & (std::uint64_t{1} << a)) mapped |= std::uint64_t{1} << row[a];
      }
      if (target_chart[mapped] != l[chart[mask]]) {
        throw LatticeLawViolation("commuting sum", chart[mask & (~mask + 1)], chart[mask]);
      }
    }
    t.base.table.push_back(*image);
    t.kappa.push_back(std::move(row));
  }
  const std::string why = t.validity_witness();
  if (!why.empty()) throw InvariantViolation("extend_lattice_iso(): " + why);
  return t;
}

// ---------------------------------------------------------------------------
// Linear and multiplicative extension

std::optional<BlockMatrix> LinearExtension::apply(const BlockMatrix& x) const {
  if (!consistent) return std::nullopt;
  auto coeffs = solve_membership(x, basis);
  if (!coeffs) return std::nullopt;
  return combine(*coeffs, images, target_shape);
}

LinearExtension linear_extension(const PartialAlgebraIso& t) {
  LinearExtension ext;
  ext.target_shape = t.target().shape();
  const ContextPoset& a = *t.base.source;
  LinearSpan span(a.algebra().shape());
  for (std::size_t c = 0; c < a.size(); ++c) {
    const auto& atoms = a.context(c).atoms();
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      const BlockMatrix& image = t.image_atom(c, k);
      if (span.add(atoms[k])) {
        ext.images.push_back(image);
        continue;
      }
      const auto coeffs = span.coefficients(atoms[k]);
      if (!(combine(*coeffs, ext.images, ext.target_shape) == image)) {
        ext.witness = "atom " + std::to_string(k) + " of context " + std::to_string(c) +
                      " is a linear combination of earlier atoms whose images do not combine to its image";
        ext.basis = span.elements();
        return ext;
      }
    }
  }
  ext.basis = span.elements();
  ext.consistent = true;
  return ext;
}

std::optional<AlgebraMap> extend_to_algebra_map(const PartialAlgebraIso& t, ProductKind kind, std::string* why) {
  auto fail = [&](std::string msg) -> std::optional<AlgebraMap> {
    if (why) *why = std::move(msg);
    return std::nullopt;
  };
  const LinearExtension ext = linear_extension(t);
  if (!ext.consistent) return fail(ext.witness);
  const StarAlgebra& src = t.source();
  const Shape& tshape = t.target().shape();
  auto product = [kind](const BlockMatrix& x, const BlockMatrix& y) {
    return kind == ProductKind::Associative ? x * y : jordan_product(x, y);
  };

  LinearSpan span(src.shape());
  std::vector<BlockMatrix> images = ext.images;
  for (const auto& b : ext.basis) span.add(b);
  for (std::size_t k = 0; k < span.dimension(); ++k) {
    for (std::size_t m = 0; m <= k; ++m) {
      for (int order = 0; order < 2; ++order) {
        const std::size_t i = order == 0 ? k : m;
        const std::size_t j = order == 0 ? m : k;
        const BlockMatrix w = product(span.elements()[i], span.elements()[j]);
        const BlockMatrix wi = product(images[i], images[j]);
        if (auto coeffs = span.coefficients(w)) {
          if (!(combine(*coeffs, images, tshape) == wi)) {
            return fail("product law fails on generated elements " + std::to_string(i) + ", " + std::to_string(j));
          }
        } else {
          span.add(w);
          images.push_back(wi);
        }
      }
    }
  }
  if (span.dimension() < src.dimension()) {
    return fail("atoms generate a proper subalgebra of dimension " + std::to_string(span.dimension()));
  }
  std::vector<BlockMatrix> unit_images;
  for (std::size_t k = 0; k < src.dimension(); ++k) {
    std::vector<GaussianRational> e(src.dimension());
    e[k] = GaussianRational(1);
    unit_images.push_back(combine(*span.coefficients(BlockMatrix::from_coordinates(src.shape(), e)), images, tshape));
  }
  AlgebraMap h = AlgebraMap::from_unit_images(src, t.target(), unit_images);
  const bool ok = kind == ProductKind::Associative ? verify_hom(h) : verify_jordan_hom(h);
  if (!ok) return fail("extension is not a homomorphism");
  return h;
}

// ---------------------------------------------------------------------------
// Quasi-Jordan

QuasiJordanReport verify_quasi_jordan(const QuasiJordanIso& q,
                                      std::span<const std::pair<BlockMatrix, BlockMatrix>> samples) {
  QuasiJordanReport r;
  const PartialAlgebraIso& t = q.map;
  const std::string why = t.validity_witness();
  if (!why.empty()) {
    r.witnesses.push_back(why);
    return r;
  }
  const ContextPoset& a = *t.base.source;
  r.unital = t.apply(a.algebra().unit()) == t.target().unit();
  if (!r.unital) r.witnesses.push_back("T(1) != 1");

  r.per_context_jordan = true;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const auto& atoms = a.context(c).atoms();
    for (std::size_t i = 0; i < atoms.size() && r.per_context_jordan; ++i) {
      if (!is_self_adjoint(t.image_atom(c, i))) {
        r.per_context_jordan = false;
        r.witnesses.push_back("image of atom " + std::to_string(i) + " of context " + std::to_string(c) +
                              " is not self-adjoint");
      }
      for (std::size_t j = 0; j < atoms.size() && r.per_context_jordan; ++j) {
        const BlockMatrix lhs = t.apply(jordan_product(atoms[i], atoms[j]));
        const BlockMatrix rhs = jordan_product(t.image_atom(c, i), t.image_atom(c, j));
        if (!(lhs == rhs)) {
          r.per_context_jordan = false;
          r.witnesses.push_back("Jordan law fails on atoms (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") of context " + std::to_string(c));
        }
      }
    }
    ++r.contexts_checked;
  }

  const LinearExtension ext = linear_extension(t);
  if (!ext.consistent) r.witnesses.push_back("not linear: " + ext.witness);
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& [x, y] = samples[s];
    if (!is_self_adjoint(x) || !is_self_adjoint(y)) {
      r.witnesses.push_back("sample " + std::to_string(s) + " is not self-adjoint");
      ++r.samples_skipped;
      continue;
    }
    const auto tx = t.try_apply(x);
    const auto ty = t.try_apply(y);
    const auto txy = t.try_apply(x + y);
    if (!tx || !ty || !txy) {
      ++r.samples_skipped;
      continue;
    }
    ++r.samples_evaluated;
    if (*txy == *tx + *ty) {
      ++r.samples_additive;
    } else {
      r.witnesses.push_back("T(x + y) != T(x) + T(y) on sample " + std::to_string(s));
    }
  }
  r.globally_linear = ext.consistent && r.samples_additive == r.samples_evaluated;
  return r;
}

// ---------------------------------------------------------------------------
// Searches

namespace {

void require_order_iso(const BaseMap& gamma, const char* who) {
  if (!gamma.source || !gamma.target || !gamma.is_order_isomorphism()) {
    throw InvariantViolation(std::string(who) + ": base map is not an order isomorphism");
  }
}

// Maximal contexts, largest first; ties by index.
std::vector<std::size_t> search_order(const ContextPoset& p) {
  auto maxes = p.maximal();
  std::stable_sort(maxes.begin(), maxes.end(),
                   [&](std::size_t x, std::size_t y) { return p.context(x).size() > p.context(y).size(); });
  return maxes;
}

bool sizes_match(const BaseMap& gamma) {
  for (std::size_t c = 0; c < gamma.table.size(); ++c) {
    if (gamma.source->context(c).size() != gamma.target->context(gamma.table[c]).size()) return false;
  }
  return true;
}

// Shared backtracking skeleton: for each maximal context choose a bijection,
// then `derive` fills in (or checks) every context below it.
template <class Derive, class Emit>
void search_families(const ContextPoset& a, const std::vector<std::size_t>& maxes, Derive derive, Emit emit) {
  std::vector<std::vector<std::size_t>> table(a.size());
  std::map<std::size_t, std::vector<Permutation>> perms;
  std::function<void(std::size_t)> step = [&](std::size_t depth) {
    if (depth == maxes.size()) {
      emit(table);
      return;
    }
    const std::size_t m = maxes[depth];
    const std::size_t k = a.context(m).size();
    auto it = perms.find(k);
    if (it == perms.end()) it = perms.emplace(k, all_permutations(k)).first;
    for (const auto& pi : it->second) {
      std::vector<std::size_t> assigned;
      bool ok = true;
      for (std::size_t c = 0; c < a.size() && ok; ++c) {
        if (!a.leq(c, m)) continue;
        auto row = derive(c, m, pi);
        if (!row) {
          ok = false;
        } else if (table[c].empty()) {
          table[c] = std::move(*row);
          assigned.push_back(c);
        } else if (table[c] != *row) {
          ok = false;
        }
      }
      if (ok) step(depth + 1);
      for (std::size_t c : assigned) table[c].clear();
    }
  };
  step(0);
}

}  // namespace

std::vector<PartialAlgebraIso> compatible_partial_isos(const BaseMap& gamma) {
  require_order_iso(gamma, "compatible_partial_isos()");
  std::vector<PartialAlgebraIso> out;
  if (!sizes_match(gamma)) return out;
  const ContextPoset& a = *gamma.source;
  const ContextPoset& b = *gamma.target;
  const Shape& shape = b.algebra().shape();

  // Sum of a set of atoms of gamma(m), looked up among the atoms of gamma(c).
  // Memoised on (gamma(c), gamma(m), atom set).
  std::map<std::tuple<std::size_t, std::size_t, std::uint64_t>, std::optional<std::size_t>> sums;
  auto atom_of_sum = [&](std::size_t gc, std::size_t gm, std::uint64_t mask) {
    auto [it, fresh] = sums.try_emplace({gc, gm, mask});
    if (fresh) {
      const auto& big_atoms = b.context(gm).atoms();
      BlockMatrix sum = BlockMatrix::zero(shape);
      for (std::size_t k = 0; k < big_atoms.size(); ++k) {
        if (mask & (std::uint64_t{1} << k)) sum += big_atoms[k];
      }
      it->second = find_atom(b.context(gc), sum);
    }
    return it->second;
  };
  for (const auto& c : b.contexts()) {
    if (c.size() > 64) throw SizeBoundExceeded("compatible_partial_isos(): context with more than 64 atoms");
  }

  auto derive = [&](std::size_t c, std::size_t m, const Permutation& pi) -> std::optional<std::vector<std::size_t>> {
    if (c == m) return pi;
    const auto& rho = a.restriction(c, m);
    std::vector<std::uint64_t> masks(a.context(c).size(), 0);
    for (std::size_t k = 0; k < rho.size(); ++k) masks[rho[k]] |= std::uint64_t{1} << pi[k];
    std::vector<std::size_t> row;
    for (std::uint64_t mask : masks) {
      const auto idx = atom_of_sum(gamma.table[c], gamma.table[m], mask);
      if (!idx) return std::nullopt;
      row.push_back(*idx);
    }
    return row;
  };
  // The derivation already enforces agreement along every stored inclusion.
  auto emit = [&](const std::vector<std::vector<std::size_t>>& table) { out.push_back({gamma, table}); };
  search_families(a, search_order(a), derive, emit);
  return out;
}

std::optional<PartialAlgebraIso> order_iso_to_partial_iso_search(const BaseMap& gamma) {
  auto all = compatible_partial_isos(gamma);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::vector<PresheafMorphism> presheaf_isos_over(const BaseMap& gamma) {
  require_order_iso(gamma, "presheaf_isos_over()");
  std::vector<PresheafMorphism> out;
  if (!sizes_match(gamma)) return out;
  const ContextPoset& a = *gamma.source;
  const ContextPoset& b = *gamma.target;

  // iota_c o rho^B(gc <= gm) = rho^A(c <= m) o iota_m
  auto derive = [&](std::size_t c, std::size_t m, const Permutation& pi) -> std::optional<std::vector<std::size_t>> {
    if (c == m) return pi;
    const auto& rho_a = a.restriction(c, m);
    const auto& rho_b = b.restriction(gamma.table[c], gamma.table[m]);
    std::vector<std::size_t> row(b.context(gamma.table[c]).size(), kUnassigned);
    for (std::size_t k = 0; k < rho_b.size(); ++k) {
      const std::size_t want = rho_a[pi[k]];
      std::size_t& slot = row[rho_b[k]];
      if (slot == kUnassigned) {
        slot = want;
      } else if (slot != want) {
        return std::nullopt;
      }
    }
    if (!is_bijection(row, a.context(c).size())) return std::nullopt;
    return row;
  };
  auto emit = [&](const std::vector<std::vector<std::size_t>>& table) {
    PresheafMorphism m{gamma, table};
    if (m.is_natural()) out.push_back(std::move(m));
  };
  search_families(a, search_order(a), derive, emit);
  return out;
}

std::vector<PresheafMorphism> presheaf_automorphisms(const PosetPtr& poset, const SizeLimits& limits) {
  std::vector<PresheafMorphism> out;
  for (const auto& g : order_automorphisms(*poset, limits)) {
    auto isos = presheaf_isos_over(BaseMap::from_permutation(poset, g));
    out.insert(out.end(), std::make_move_iterator(isos.begin()), std::make_move_iterator(isos.end()));
  }
  return out;
}

std::vector<AlgebraMap> jordan_automorphisms_abelian(const StarAlgebra& cn) {
  if (!cn.is_abelian()) throw ObjectMismatch("jordan_automorphisms_abelian(): '" + cn.label() + "' is not abelian");
  const std::size_t n = cn.dimension();
  std::vector<AlgebraMap> out;
  for (const auto& perm : all_permutations(n)) {
    std::vector<BlockMatrix> images;
    for (std::size_t k = 0; k < n; ++k) images.push_back(BlockMatrix::unit(cn.shape(), perm[k], 0, 0));
    AlgebraMap h = AlgebraMap::from_unit_images(cn, cn, images);
    if (verify_jordan_hom(h)) out.push_back(std::move(h));
  }
  return out;
}

PresheafMorphism presheaf_group_product(const PresheafMorphism& m1, const PresheafMorphism& m2) {
  return compose_presheaf_morphisms(m1, m2);
}

// ---------------------------------------------------------------------------
// Groups

namespace {

FiniteGroup<PresheafMorphism> presheaf_group(std::vector<PresheafMorphism> elements) {
  return FiniteGroup<PresheafMorphism>(std::move(elements), presheaf_group_product, presheaf_key);
}

FiniteGroup<PartialAlgebraIso> partial_group(std::vector<PartialAlgebraIso> elements) {
  return FiniteGroup<PartialAlgebraIso>(
      std::move(elements), [](const PartialAlgebraIso& x, const PartialAlgebraIso& y) { return compose_partial_isos(x, y); },
      [](const PartialAlgebraIso& x) { return x.key(); });
}

FiniteGroup<Permutation> permutation_group(std::vector<Permutation> elements) {
  return FiniteGroup<Permutation>(
      std::move(elements), [](const Permutation& x, const Permutation& y) { return compose_permutations(x, y); },
      [](const Permutation& x) { return x; });
}

// Size of the subgroup {g : member(g)}. Known members close under products;
// a known non-member x marks x*k and k*x as non-members for every known
// member k, so only about one test per coset is needed.
template <class T, class Pred>
std::size_t count_subgroup(const FiniteGroup<T>& g, Pred member) {
  enum : char { kUnknown, kIn, kOut };
  std::vector<char> state(g.size(), kUnknown);
  std::vector<std::size_t> inside;
  std::vector<std::size_t> tested_in;
  std::vector<std::size_t> outside;
  std::size_t in_done = 0;
  std::size_t out_done = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (state[i] != kUnknown) continue;
    if (member(g.element(i))) {
      tested_in.push_back(i);
      state[i] = kIn;
      inside.push_back(i);
      for (std::size_t q = 0; q < inside.size(); ++q) {
        for (std::size_t gen : tested_in) {
          const std::size_t y = g.product_index(inside[q], gen);
          if (state[y] == kOut) throw InvariantViolation("membership predicate does not define a subgroup");
          if (state[y] == kUnknown) {
            state[y] = kIn;
            inside.push_back(y);
          }
        }
      }
    } else {
      state[i] = kOut;
      outside.push_back(i);
    }
    auto mark = [&](std::size_t o, std::size_t k) {
      for (std::size_t y : {g.product_index(o, k), g.product_index(k, o)}) {
        if (state[y] == kIn) throw InvariantViolation("membership predicate does not define a subgroup");
        state[y] = kOut;
      }
    };
    for (std::size_t a = 0; a < out_done; ++a) {
      for (std::size_t b = in_done; b < inside.size(); ++b) mark(outside[a], inside[b]);
    }
    for (std::size_t a = out_done; a < outside.size(); ++a) {
      for (std::size_t k : inside) mark(outside[a], k);
    }
    out_done = outside.size();
    in_done = inside.size();
  }
  return inside.size();
}

template <class Fn>
void guarded(VerificationReport& report, const std::string& name, const std::string& claim, Fn fn) {
  try {
    report.checks.push_back(fn());
  } catch (const Error& e) {
    report.add(name, false, claim, e.what());
  }
}

}  // namespace

AutGroupReport aut_groups(const PosetPtr& poset, std::span<const UnitalStarHom> algebra_automorphisms,
                          const SizeLimits& limits) {
  AutGroupReport r;
  r.algebra = poset->algebra().label();
  r.contexts = poset->size();

  auto ord = permutation_group(order_automorphisms(*poset, limits));
  auto sigma = presheaf_group(presheaf_automorphisms(poset, limits));
  std::vector<PartialAlgebraIso> parts;
  for (const auto& g : ord.elements()) {
    auto ws = compatible_partial_isos(BaseMap::from_permutation(poset, g));
    r.witnesses_per_order_automorphism.push_back(ws.size());
    parts.insert(parts.end(), std::make_move_iterator(ws.begin()), std::make_move_iterator(ws.end()));
  }
  auto part = partial_group(std::move(parts));
  r.order_automorphisms = ord.size();
  r.presheaf_automorphisms = sigma.size();
  r.partial_automorphisms = part.size();
  r.rigid = std::all_of(r.witnesses_per_order_automorphism.begin(), r.witnesses_per_order_automorphism.end(),
                        [](std::size_t w) { return w == 1; });
  r.algebra_induced_partial_automorphisms = count_subgroup(part, [](const PartialAlgebraIso& t) {
    return extend_to_algebra_map(t, ProductKind::Associative).has_value();
  });

  guarded(r.checks, "aut_sigma_to_aut_part", "contravariant group isomorphism", [&] {
    return check_group_isomorphism<PresheafMorphism, PartialAlgebraIso>(
        "aut_sigma_to_aut_part", "contravariant group isomorphism", sigma, part, partial_iso_from_presheaf_iso, true);
  });
  if (r.rigid) {
    guarded(r.checks, "aut_part_to_aut_ord", "the four groups are isomorphic", [&] {
      return check_group_isomorphism<PartialAlgebraIso, Permutation>(
          "aut_part_to_aut_ord", "the four groups are isomorphic", part, ord,
          [](const PartialAlgebraIso& t) { return t.base.table; }, false);
    });
  }

  const OrthoLattice lattice = lattice_from_algebra(*poset);
  r.lattice_elements = lattice.size();
  if (lattice.size() <= 512) {
    auto lat = permutation_group(lattice_automorphisms(lattice));
    const LatticeAtlas atlas = lattice_atlas(*poset, lattice);
    r.lattice_automorphisms = lat.size();
    guarded(r.checks, "aut_part_to_aut_lattice", "isomorphisms of complete orthomodular lattices", [&] {
      return check_group_isomorphism<PartialAlgebraIso, Permutation>(
          "aut_part_to_aut_lattice", "isomorphisms of complete orthomodular lattices", part, lat,
          [&](const PartialAlgebraIso& t) { return lattice_iso_from_partial_iso(t, atlas, atlas); }, false);
    });
  }

  if (poset->algebra().is_abelian()) {
    FiniteGroup<AlgebraMap> jordan(jordan_automorphisms_abelian(poset->algebra()), compose_maps, map_key);
    r.jordan_automorphisms = jordan.size();
    guarded(r.checks, "aut_jordan_to_aut_part", "the four groups are isomorphic", [&] {
      return check_group_isomorphism<AlgebraMap, PartialAlgebraIso>(
          "aut_jordan_to_aut_part", "the four groups are isomorphic", jordan, part,
          [&](const AlgebraMap& h) { return partial_iso_from_map(h, poset, poset); }, false);
    });
  }

  r.supplied_algebra_automorphisms = algebra_automorphisms.size();
  if (!algebra_automorphisms.empty()) {
    const std::string claim = "injective group homomorphism Aut(A) -> Aut(Sigma)^op";
    try {
      std::vector<PresheafMorphism> images;
      for (const auto& h : algebra_automorphisms) images.push_back(induce_presheaf_morphism(h, poset, poset));
      std::string detail;
      bool ok = true;
      for (std::size_t i = 0; i < images.size() && ok; ++i) {
        if (!sigma.find(images[i])) {
          ok = false;
          detail = "image of automorphism " + std::to_string(i) + " is not in Aut(Sigma)";
        }
        for (std::size_t j = 0; j < i && ok; ++j) {
          if (images[i] == images[j] && !(algebra_automorphisms[i] == algebra_automorphisms[j])) {
            ok = false;
            detail = "automorphisms " + std::to_string(j) + " and " + std::to_string(i) + " have the same image";
          }
        }
      }
      for (std::size_t i = 0; i < images.size() && ok; ++i) {
        for (std::size_t j = 0; j < images.size() && ok; ++j) {
          const UnitalStarHom ji = compose_hom(algebra_automorphisms[j], algebra_automorphisms[i]);
          auto known = std::find(algebra_automorphisms.begin(), algebra_automorphisms.end(), ji);
          const PresheafMorphism lhs = known != algebra_automorphisms.end()
                                           ? images[static_cast<std::size_t>(known - algebra_automorphisms.begin())]
                                           : induce_presheaf_morphism(ji, poset, poset);
          if (!(lhs == presheaf_group_product(images[i], images[j]))) {
            ok = false;
            detail = "composition not reversed on (" + std::to_string(j) + ", " + std::to_string(i) + ")";
          }
        }
      }
      if (ok) detail = std::to_string(images.size()) + " automorphisms, injective, composition reversed";
      r.checks.add("aut_algebra_embedding", ok, claim, detail);
    } catch (const Error& e) {
      r.checks.add("aut_algebra_embedding", false, claim, e.what());
    }
  }
  return r;
}

VerificationReport correspondence_roundtrips(const PosetPtr& poset, const SizeLimits& limits) {
  VerificationReport report;
  const std::string claim = "bijective correspondence between isomorphisms";
  auto sigma = presheaf_group(presheaf_automorphisms(poset, limits));
  const OrthoLattice lattice = lattice_from_algebra(*poset);
  const LatticeAtlas atlas = lattice_atlas(*poset, lattice);

  std::size_t presheaf_ok = 0, partial_ok = 0, lattice_ok = 0, extension_ok = 0, extension_ok_matrix = 0;
  std::vector<char> is_generator(sigma.size(), 0);
  std::size_t generators = 0;
  for (std::size_t g : sigma.generators()) {
    is_generator[g] = 1;
    ++generators;
  }
  std::string first_failure;
  auto note = [&](bool ok, std::size_t& counter, const std::string& what, std::size_t i) {
    if (ok) {
      ++counter;
    } else if (first_failure.empty()) {
      first_failure = what + " fails on automorphism " + std::to_string(i);
    }
  };
  try {
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      const PresheafMorphism& m = sigma.element(i);
      const PartialAlgebraIso t = partial_iso_from_presheaf_iso(m);
      note(presheaf_iso_from_partial_iso(t) == m, presheaf_ok, "presheaf -> partial -> presheaf", i);
      note(partial_iso_from_presheaf_iso(presheaf_iso_from_partial_iso(t)) == t, partial_ok,
           "partial -> presheaf -> partial", i);
      const Permutation l = lattice_iso_from_partial_iso(t, atlas, atlas);
      const PartialAlgebraIso back = is_generator[i] ? extend_lattice_iso(l, lattice, lattice, poset, poset)
                                                     : extend_lattice_iso(l, lattice, lattice, atlas, atlas, poset, poset);
      note(back == t, lattice_ok, "partial -> lattice -> partial", i);
      note(lattice_iso_from_partial_iso(back, atlas, atlas) == l, extension_ok, "lattice -> partial -> lattice", i);
      // The atlas is checked against the matrix-level images on the group generators.
      if (is_generator[i]) {
        note(lattice_iso_from_partial_iso(back, lattice, lattice) == l, extension_ok_matrix,
             "lattice -> partial -> lattice (matrix level)", i);
      }
    }
  } catch (const Error& e) {
    first_failure = e.what();
  }
  const std::string n = std::to_string(sigma.size());
  report.add("presheaf_partial_roundtrip", presheaf_ok == sigma.size() && partial_ok == sigma.size(), claim,
             first_failure.empty() ? n + " automorphisms, both orders table-exact" : first_failure);
  report.add("partial_lattice_roundtrip",
             lattice_ok == sigma.size() && extension_ok == sigma.size() && extension_ok_matrix == generators,
             "isomorphisms of complete orthomodular lattices",
             first_failure.empty() ? n + " automorphisms, both orders table-exact" : first_failure);

  guarded(report, "presheaf_partial_contravariance", "contravariant group isomorphism", [&] {
    std::vector<PartialAlgebraIso> parts;
    for (const auto& m : sigma.elements()) parts.push_back(partial_iso_from_presheaf_iso(m));
    auto part = partial_group(std::move(parts));
    return check_group_isomorphism<PresheafMorphism, PartialAlgebraIso>(
        "presheaf_partial_contravariance", "contravariant group isomorphism", sigma, part,
        partial_iso_from_presheaf_iso, true);
  });
  return report;
}

}  // namespace specpresheaf
