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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "specpresheaf/context_poset.hpp"
#include "specpresheaf/correspondences.hpp"
#include "specpresheaf/presheaf_morphism.hpp"
#include "specpresheaf/report.hpp"
#include "specpresheaf/spectral_presheaf.hpp"
#include "specpresheaf/star_algebra.hpp"

// JSON interchange. Every exact scalar is a string ("3", "-1/2", "1/2+3/4 i");
// JSON numbers are rejected for entries. Loaders rebuild objects through
// their validating constructors, so invariant failures surface on load.
// Schemas are described in docs/formats.md.
namespace specpresheaf::io {

using Json = nlohmann::ordered_json;

// Generating contexts for a closure, as stored in bundle files.
struct GeneratorSet {
  StarAlgebra algebra;
  std::vector<Context> contexts;
};

Json to_json(const GaussianRational& x);
Json to_json(const BlockMatrix& m);
Json to_json(const StarAlgebra& a);
Json to_json(const Context& c);  // atoms only; the algebra is implied by the container
Json to_json(const ContextPoset& p);
Json to_json(const GeneratorSet& g);
Json to_json(const SpectralPresheaf& s);
Json to_json(const UnitalStarHom& h);
Json to_json(const PresheafMorphism& m);
Json to_json(const PartialAlgebraIso& t);
Json to_json(const VerificationReport& r);

// `where` is the field path of `j` used in SchemaError diagnostics.
GaussianRational scalar_from_json(const Json& j, const std::string& where);
BlockMatrix matrix_from_json(const Json& j, const std::string& where);
StarAlgebra algebra_from_json(const Json& j, const std::string& where);
Context context_from_json(const Json& j, const StarAlgebra& algebra, const std::string& where);
ContextPoset poset_from_json(const Json& j, const std::string& where = {});
GeneratorSet generators_from_json(const Json& j, const std::string& where = {});
SpectralPresheaf presheaf_from_json(const Json& j, const std::string& where = {});
UnitalStarHom hom_from_json(const Json& j, const std::string& where = {});
PresheafMorphism presheaf_morphism_from_json(const Json& j, const std::string& where = {});
PartialAlgebraIso partial_iso_from_json(const Json& j, const std::string& where = {});

// Text form with two-space indent and a trailing newline; identical objects
// give identical bytes.
std::string dump(const Json& j);
// Throws SchemaError with "line L, column C" on malformed text.
Json parse(std::string_view text, const std::string& source = "<input>");
Json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const Json& j);

// The "kind" field of a document, or a SchemaError when absent.
std::string kind_of(const Json& j, const std::string& where = {});

// Named objects; names are the JSON object keys. Every object is
// revalidated when a workspace is loaded.
class Workspace {
 public:
  void add(const std::string& name, StarAlgebra a) { algebras_.insert_or_assign(name, std::move(a)); }
  void add(const std::string& name, PosetPtr p) { posets_.insert_or_assign(name, std::move(p)); }
  void add(const std::string& name, UnitalStarHom h) { homs_.insert_or_assign(name, std::move(h)); }
  void add(const std::string& name, PresheafMorphism m) { morphisms_.insert_or_assign(name, std::move(m)); }
  void add(const std::string& name, PartialAlgebraIso t) { partial_isos_.insert_or_assign(name, std::move(t)); }

  // Throw ObjectMismatch naming the missing entry.
  const StarAlgebra& algebra(const std::string& name) const;
  const PosetPtr& poset(const std::string& name) const;
  const UnitalStarHom& hom(const std::string& name) const;
  const PresheafMorphism& presheaf_morphism(const std::string& name) const;
  const PartialAlgebraIso& partial_iso(const std::string& name) const;

  const std::map<std::string, StarAlgebra>& algebras() const { return algebras_; }
  const std::map<std::string, PosetPtr>& posets() const { return posets_; }
  const std::map<std::string, UnitalStarHom>& homs() const { return homs_; }
  const std::map<std::string, PresheafMorphism>& presheaf_morphisms() const { return morphisms_; }
  const std::map<std::string, PartialAlgebraIso>& partial_isos() const { return partial_isos_; }

  // The stored poset of an algebra (first match by name order), or null.
  PosetPtr poset_for(const StarAlgebra& a) const;

  Json to_json() const;
  static Workspace from_json(const Json& j);
  static Workspace load(const std::filesystem::path& path) { return from_json(read_file(path)); }
  void save(const std::filesystem::path& path) const { write_file(path, to_json()); }

 private:
  std::map<std::string, StarAlgebra> algebras_;
  std::map<std::string, PosetPtr> posets_;
  std::map<std::string, UnitalStarHom> homs_;
  std::map<std::string, PresheafMorphism> morphisms_;
  std::map<std::string, PartialAlgebraIso> partial_isos_;
};

}  // namespace specpresheaf::io
