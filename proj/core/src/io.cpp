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

#include "specpresheaf/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "specpresheaf/error.hpp"

namespace specpresheaf::io {
namespace {

std::string field(const std::string& where, const std::string& name) {
  return where.empty() ? name : where + "." + name;
}

std::string item(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

const Json& require(const Json& j, const std::string& where, const char* name) {
  if (!j.is_object()) throw SchemaError(where, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) throw SchemaError(field(where, name), "missing field");
  return *it;
}

const Json& require_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where, "expected an array");
  return j;
}

std::size_t index_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned()) throw SchemaError(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

std::vector<std::size_t> indices_from_json(const Json& j, const std::string& where) {
  std::vector<std::size_t> out;
  const Json& arr = require_array(j, where);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(index_from_json(arr[i], item(where, i)));
  return out;
}

std::vector<std::vector<std::size_t>> tables_from_json(const Json& j, const std::string& where) {
  std::vector<std::vector<std::size_t>> out;
  const Json& arr = require_array(j, where);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(indices_from_json(arr[i], item(where, i)));
  return out;
}

void expect_kind(const Json& j, const std::string& where, const char* kind) {
  const std::string k = kind_of(j, where);
  if (k != kind) throw SchemaError(field(where, "kind"), "expected \"" + std::string(kind) + "\", found \"" + k + "\"");
}

// Re-raises invariant failures with the field path in front.
template <class Fn>
auto located(const std::string& where, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const SchemaError&) {
    throw;
  } catch (const InvariantViolation& e) {
    throw InvariantViolation((where.empty() ? std::string() : where + ": ") + e.what());
  }
}

// Either one shared "poset" or separate "source"/"target".
std::pair<PosetPtr, PosetPtr> poset_pair_from_json(const Json& j, const std::string& where) {
  if (j.is_object() && j.contains("poset")) {
    auto p = std::make_shared<const ContextPoset>(poset_from_json(j["poset"], field(where, "poset")));
    return {p, p};
  }
  auto s = std::make_shared<const ContextPoset>(poset_from_json(require(j, where, "source"), field(where, "source")));
  auto t = std::make_shared<const ContextPoset>(poset_from_json(require(j, where, "target"), field(where, "target")));
  return {s, t};
}

void poset_pair_to_json(Json& out, const BaseMap& base) {
  if (same_poset(base.source, base.target)) {
    out["poset"] = to_json(*base.source);
  } else {
    out["source"] = to_json(*base.source);
    out["target"] = to_json(*base.target);
  }
}

Json tables_to_json(const std::vector<std::vector<std::size_t>>& tables) {
  Json out = Json::array();
  for (const auto& t : tables) out.push_back(t);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Writers

Json to_json(const GaussianRational& x) { return x.to_string(); }

Json to_json(const BlockMatrix& m) {
  Json out;
  const bool diagonal =
      !m.shape().empty() && std::all_of(m.shape().begin(), m.shape().end(), [](std::size_t n) { return n == 1; });
  out["shape"] = m.shape();
  if (diagonal) {
    Json d = Json::array();
    for (std::size_t b = 0; b < m.num_blocks(); ++b) d.push_back(to_json(m.at(b, 0, 0)));
    out["diagonal"] = std::move(d);
    return out;
  }
  Json blocks = Json::array();
  for (std::size_t b = 0; b < m.num_blocks(); ++b) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.block_dim(b); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < m.block_dim(b); ++c) row.push_back(to_json(m.at(b, r, c)));
      rows.push_back(std::move(row));
    }
    blocks.push_back(std::move(rows));
  }
  out["blocks"] = std::move(blocks);
  return out;
}

Json to_json(const StarAlgebra& a) {
  Json out;
  out["kind"] = "algebra";
  out["label"] = a.label();
  out["shape"] = a.shape();
  return out;
}

Json to_json(const Context& c) {
  Json atoms = Json::array();
  for (const auto& p : c.atoms()) atoms.push_back(to_json(p));
  Json out;
  out["atoms"] = std::move(atoms);
  return out;
}

Json to_json(const ContextPoset& p) {
  Json out;
  out["kind"] = "poset";
  out["algebra"] = to_json(p.algebra());
  Json contexts = Json::array();
  for (const auto& c : p.contexts()) contexts.push_back(to_json(c));
  out["contexts"] = std::move(contexts);
  return out;
}

Json to_json(const GeneratorSet& g) {
  Json out;
  out["kind"] = "generators";
  out["algebra"] = to_json(g.algebra);
  Json contexts = Json::array();
  for (const auto& c : g.contexts) contexts.push_back(to_json(c));
  out["contexts"] = std::move(contexts);
  return out;
}

Json to_json(const SpectralPresheaf& s) {
  const ContextPoset& p = s.poset();
  Json out;
  out["kind"] = "presheaf";
  out["poset"] = to_json(p);
  Json sizes = Json::array();
  for (std::size_t c = 0; c < p.size(); ++c) sizes.push_back(s.component_size(c));
  out["components"] = std::move(sizes);
  Json restrictions = Json::array();
  for (std::size_t big = 0; big < p.size(); ++big) {
    for (std::size_t small : p.covers_below(big)) {
      Json r;
      r["small"] = small;
      r["big"] = big;
      r["table"] = s.restriction(small, big);
      restrictions.push_back(std::move(r));
    }
  }
  out["restrictions"] = std::move(restrictions);
  return out;
}

Json to_json(const UnitalStarHom& h) {
  Json out;
  out["kind"] = "hom";
  out["source"] = to_json(h.source());
  out["target"] = to_json(h.target());
  Json images = Json::array();
  const std::size_t dim = h.source().dimension();
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<GaussianRational> e(dim);
    e[k] = GaussianRational(1);
    images.push_back(to_json(h(BlockMatrix::from_coordinates(h.source().shape(), e))));
  }
  out["images"] = std::move(images);
  return out;
}

Json to_json(const PresheafMorphism& m) {
  Json out;
  out["kind"] = "presheaf_morphism";
  poset_pair_to_json(out, m.base);
  out["base"] = m.base.table;
  out["components"] = tables_to_json(m.components);
  return out;
}

Json to_json(const PartialAlgebraIso& t) {
  Json out;
  out["kind"] = "partial_iso";
  poset_pair_to_json(out, t.base);
  out["base"] = t.base.table;
  out["kappa"] = tables_to_json(t.kappa);
  return out;
}

Json to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json x;
    x["name"] = c.name;
    x["passed"] = c.passed;
    x["claim"] = c.claim;
    x["detail"] = c.detail;
    checks.push_back(std::move(x));
  }
  Json out;
  out["passed"] = r.passed();
  out["checks"] = std::move(checks);
  return out;
}

// ---------------------------------------------------------------------------
// Readers

GaussianRational scalar_from_json(const Json& j, const std::string& where) {
  if (!j.is_string()) throw SchemaError(where, "expected a string-encoded exact scalar");
  try {
    return GaussianRational::parse(j.get<std::string>());
  } catch (const Error& e) {
    throw SchemaError(where, e.what());
  }
}

BlockMatrix matrix_from_json(const Json& j, const std::string& where) {
  const Json& shape_j = require_array(require(j, where, "shape"), field(where, "shape"));
  Shape shape;
  for (std::size_t i = 0; i < shape_j.size(); ++i) {
    const std::size_t n = index_from_json(shape_j[i], item(field(where, "shape"), i));
    if (n == 0) throw SchemaError(item(field(where, "shape"), i), "block size must be positive");
    shape.push_back(n);
  }
  if (shape.empty()) throw SchemaError(field(where, "shape"), "empty shape");
  if (j.contains("diagonal")) {
    const std::string w = field(where, "diagonal");
    const Json& d = require_array(j["diagonal"], w);
    if (d.size() != shape.size()) throw SchemaError(w, "expected " + std::to_string(shape.size()) + " entries");
    for (std::size_t n : shape) {
      if (n != 1) throw SchemaError(w, "diagonal form needs 1x1 blocks");
    }
    std::vector<GaussianRational> entries;
    for (std::size_t i = 0; i < d.size(); ++i) entries.push_back(scalar_from_json(d[i], item(w, i)));
    return BlockMatrix::from_coordinates(shape, entries);
  }
  const std::string w = field(where, "blocks");
  const Json& blocks = require_array(require(j, where, "blocks"), w);
  if (blocks.size() != shape.size()) throw SchemaError(w, "expected " + std::to_string(shape.size()) + " blocks");
  std::vector<GaussianRational> coords;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::string wb = item(w, b);
    const Json& rows = require_array(blocks[b], wb);
    if (rows.size() != shape[b]) throw SchemaError(wb, "expected " + std::to_string(shape[b]) + " rows");
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::string wr = item(wb, r);
      const Json& row = require_array(rows[r], wr);
      if (row.size() != shape[b]) throw SchemaError(wr, "expected " + std::to_string(shape[b]) + " entries");
      for (std::size_t c = 0; c < row.size(); ++c) coords.push_back(scalar_from_json(row[c], item(wr, c)));
    }
  }
  return BlockMatrix::from_coordinates(shape, coords);
}

StarAlgebra algebra_from_json(const Json& j, const std::string& where) {
  const Json& label = require(j, where, "label");
  if (!label.is_string()) throw SchemaError(field(where, "label"), "expected a string");
  Shape shape;
  const Json& s = require_array(require(j, where, "shape"), field(where, "shape"));
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::size_t n = index_from_json(s[i], item(field(where, "shape"), i));
    if (n == 0) throw SchemaError(item(field(where, "shape"), i), "block size must be positive");
    shape.push_back(n);
  }
  if (shape.empty()) throw SchemaError(field(where, "shape"), "empty shape");
  return StarAlgebra(label.get<std::string>(), shape);
}

Context context_from_json(const Json& j, const StarAlgebra& algebra, const std::string& where) {
  auto matrices = [&](const char* name) {
    const std::string w = field(where, name);
    const Json& arr = require_array(j[name], w);
    std::vector<BlockMatrix> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      BlockMatrix m = matrix_from_json(arr[i], item(w, i));
      if (m.shape() != algebra.shape()) throw SchemaError(item(w, i), "shape differs from the algebra");
      out.push_back(std::move(m));
    }
    return out;
  };
  if (!j.is_object()) throw SchemaError(where, "expected an object");
  return located(where, [&] {
    if (j.contains("atoms")) return Context(algebra, matrices("atoms"));
    if (j.contains("projections")) {
      const auto ps = matrices("projections");
      return context_from_projections(algebra, ps);
    }
    if (j.contains("involutions")) {
      const auto us = matrices("involutions");
      return context_from_involutions(algebra, us);
    }
    throw SchemaError(where, "expected one of \"atoms\", \"projections\", \"involutions\"");
  });
}

ContextPoset poset_from_json(const Json& j, const std::string& where) {
  expect_kind(j, where, "poset");
  const StarAlgebra algebra = algebra_from_json(require(j, where, "algebra"), field(where, "algebra"));
  const std::string w = field(where, "contexts");
  const Json& arr = require_array(require(j, where, "contexts"), w);
  std::vector<Context> contexts;
  for (std::size_t i = 0; i < arr.size(); ++i) contexts.push_back(context_from_json(arr[i], algebra, item(w, i)));
  return located(where, [&] { return ContextPoset(algebra, std::move(contexts)); });
}

GeneratorSet generators_from_json(const Json& j, const std::string& where) {
  expect_kind(j, where, "generators");
  GeneratorSet g{algebra_from_json(require(j, where, "algebra"), field(where, "algebra")), {}};
  const std::string w = field(where, "contexts");
  const Json& arr = require_array(require(j, where, "contexts"), w);
  for (std::size_t i = 0; i < arr.size(); ++i) g.contexts.push_back(context_from_json(arr[i], g.algebra, item(w, i)));
  return g;
}

SpectralPresheaf presheaf_from_json(const Json& j, const std::string& where) {
  expect_kind(j, where, "presheaf");
  SpectralPresheaf s(std::make_shared<const ContextPoset>(poset_from_json(require(j, where, "poset"), field(where, "poset"))));
  if (j.contains("components")) {
    const auto sizes = indices_from_json(j["components"], field(where, "components"));
    if (sizes.size() != s.size()) throw SchemaError(field(where, "components"), "wrong number of components");
    for (std::size_t c = 0; c < sizes.size(); ++c) {
      if (sizes[c] != s.component_size(c)) {
        throw InvariantViolation(item(field(where, "components"), c) + ": stored size disagrees with the poset");
      }
    }
  }
  if (j.contains("restrictions")) {
    const std::string w = field(where, "restrictions");
    const Json& arr = require_array(j["restrictions"], w);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string wi = item(w, i);
      const std::size_t small = index_from_json(require(arr[i], wi, "small"), field(wi, "small"));
      const std::size_t big = index_from_json(require(arr[i], wi, "big"), field(wi, "big"));
      const auto table = indices_from_json(require(arr[i], wi, "table"), field(wi, "table"));
      if (small >= s.size() || big >= s.size() || !s.poset().leq(small, big)) {
        throw SchemaError(wi, "not a stored inclusion");
      }
      if (table != s.restriction(small, big)) throw InvariantViolation(wi + ": stored restriction disagrees with the poset");
    }
  }
  return s;
}

UnitalStarHom hom_from_json(const Json& j, const std::string& where) {
  expect_kind(j, where, "hom");
  const StarAlgebra source = algebra_from_json(require(j, where, "source"), field(where, "source"));
  const StarAlgebra target = algebra_from_json(require(j, where, "target"), field(where, "target"));
  const std::string w = field(where, "images");
  const Json& arr = require_array(require(j, where, "images"), w);
  if (arr.size() != source.dimension()) {
    throw SchemaError(w, "expected " + std::to_string(source.dimension()) + " images, one per matrix unit");
  }
  std::vector<BlockMatrix> images;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    BlockMatrix m = matrix_from_json(arr[i], item(w, i));
    if (m.shape() != target.shape()) throw SchemaError(item(w, i), "shape differs from the target algebra");
    images.push_back(std::move(m));
  }
  return located(where, [&] { return UnitalStarHom(AlgebraMap::from_unit_images(source, target, images)); });
}

PresheafMorphism presheaf_morphism_from_json(const Json& j, const std::string& where) {
  expect_kind(j, where, "presheaf_morphism");
  auto [source, target] = poset_pair_from_json(j, where);
  PresheafMorphism m{{source, target, indices_from_json(require(j, where, "base"), field(where, "base"))},
                     tables_from_json(require(j, where, "components"), field(where, "components"))};
  if (!m.base.is_monotone()) throw InvariantViolation(field(where, "base") + ": not a monotone map");
  if (m.components.size() != source->size()) throw SchemaError(field(where, "components"), "wrong number of components");
  for (std::size_t c = 0; c < m.components.size(); ++c) {
    const std::string wc = item(field(where, "components"), c);
    if (m.components[c].size() != target->context(m.base.table[c]).size()) throw SchemaError(wc, "wrong length");
    for (std::size_t x : m.components[c]) {
      if (x >= source->context(c).size()) throw SchemaError(wc, "character index out of range");
    }
  }
  const std::string why = m.naturality_witness();
  if (!why.empty()) throw InvariantViolation(where.empty() ? why : where + ": " + why);
  return m;
}

PartialAlgebraIso partial_iso_from_json(const Json& j, const std::string& where) {
  expect_kind(j, where, "partial_iso");
  auto [source, target] = poset_pair_from_json(j, where);
  PartialAlgebraIso t{{source, target, indices_from_json(require(j, where, "base"), field(where, "base"))},
                      tables_from_json(require(j, where, "kappa"), field(where, "kappa"))};
  const std::string why = t.validity_witness();
  if (!why.empty()) throw InvariantViolation(where.empty() ? why : where + ": " + why);
  return t;
}

// ---------------------------------------------------------------------------
// Text and files

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw SchemaError(source + ":" + std::to_string(line) + ":" + std::to_string(column),
                      "malformed JSON (line " + std::to_string(line) + ", column " + std::to_string(column) + ")");
  }
}

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(path.string(), "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

void write_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError(path.string(), "cannot write file");
  out << dump(j);
}

std::string kind_of(const Json& j, const std::string& where) {
  const Json& k = require(j, where, "kind");
  if (!k.is_string()) throw SchemaError(field(where, "kind"), "expected a string");
  return k.get<std::string>();
}

// ---------------------------------------------------------------------------
// Workspace

namespace {

template <class Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& name, const char* what) {
  auto it = m.find(name);
  if (it == m.end()) throw ObjectMismatch(std::string("workspace has no ") + what + " named '" + name + "'");
  return it->second;
}

template <class Map, class Fn>
Json section(const Map& m, Fn fn) {
  Json out = Json::object();
  for (const auto& [name, value] : m) out[name] = fn(value);
  return out;
}

template <class Fn>
void read_section(const Json& j, const char* name, Fn fn) {
  if (!j.contains(name)) return;
  const Json& s = j[name];
  if (!s.is_object()) throw SchemaError(name, "expected an object keyed by name");
  for (auto it = s.begin(); it != s.end(); ++it) fn(it.key(), it.value(), std::string(name) + "." + it.key());
}

}  // namespace

const StarAlgebra& Workspace::algebra(const std::string& name) const { return lookup(algebras_, name, "algebra"); }
const PosetPtr& Workspace::poset(const std::string& name) const { return lookup(posets_, name, "poset"); }
const UnitalStarHom& Workspace::hom(const std::string& name) const { return lookup(homs_, name, "hom"); }
const PresheafMorphism& Workspace::presheaf_morphism(const std::string& name) const {
  return lookup(morphisms_, name, "presheaf morphism");
}
const PartialAlgebraIso& Workspace::partial_iso(const std::string& name) const {
  return lookup(partial_isos_, name, "partial iso");
}

PosetPtr Workspace::poset_for(const StarAlgebra& a) const {
  for (const auto& [name, p] : posets_) {
    if (p->algebra() == a) return p;
  }
  return nullptr;
}

Json Workspace::to_json() const {
  Json out;
  out["kind"] = "workspace";
  out["algebras"] = section(algebras_, [](const StarAlgebra& a) { return io::to_json(a); });
  out["posets"] = section(posets_, [](const PosetPtr& p) { return io::to_json(*p); });
  out["homs"] = section(homs_, [](const UnitalStarHom& h) { return io::to_json(h); });
  out["presheaf_morphisms"] = section(morphisms_, [](const PresheafMorphism& m) { return io::to_json(m); });
  out["partial_isos"] = section(partial_isos_, [](const PartialAlgebraIso& t) { return io::to_json(t); });
  return out;
}

Workspace Workspace::from_json(const Json& j) {
  expect_kind(j, {}, "workspace");
  Workspace w;
  read_section(j, "algebras", [&](const std::string& n, const Json& x, const std::string& at) {
    w.add(n, algebra_from_json(x, at));
  });
  read_section(j, "posets", [&](const std::string& n, const Json& x, const std::string& at) {
    w.add(n, std::make_shared<const ContextPoset>(poset_from_json(x, at)));
  });
  read_section(j, "homs", [&](const std::string& n, const Json& x, const std::string& at) {
    w.add(n, hom_from_json(x, at));
  });
  read_section(j, "presheaf_morphisms", [&](const std::string& n, const Json& x, const std::string& at) {
    w.add(n, presheaf_morphism_from_json(x, at));
  });
  read_section(j, "partial_isos", [&](const std::string& n, const Json& x, const std::string& at) {
    w.add(n, partial_iso_from_json(x, at));
  });
  return w;
}

}  // namespace specpresheaf::io
