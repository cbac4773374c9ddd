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

// Writes the bundled data files from the built-in constructors:
//   specpresheaf_export_bundles <data-dir>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>

#include "specpresheaf/bundles.hpp"
#include "specpresheaf/context_poset.hpp"
#include "specpresheaf/io.hpp"
#include "specpresheaf/presheaf_morphism.hpp"

using namespace specpresheaf;
namespace fs = std::filesystem;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: specpresheaf_export_bundles <data-dir>\n";
    return 2;
  }
  const fs::path dir = argv[1];
  fs::create_directories(dir / "cn_partitions");
  fs::create_directories(dir / "homs");

  io::write_file(dir / "mermin_peres.json", io::to_json(io::GeneratorSet{StarAlgebra::full_matrix(4), mermin_peres_generators()}));
  io::write_file(dir / "m2fan.json", io::to_json(io::GeneratorSet{StarAlgebra::full_matrix(2), m2fan_generators()}));
  for (std::size_t n = 1; n <= 5; ++n) {
    io::write_file(dir / "cn_partitions" / ("c" + std::to_string(n) + ".json"), io::to_json(full_abelian_poset(n)));
  }

  // Homs for verify-functor: a composable chain plus the automorphisms of C^3.
  io::Workspace ws;
  const StarAlgebra c2 = StarAlgebra::abelian(2), c3 = StarAlgebra::abelian(3), c4 = StarAlgebra::abelian(4);
  ws.add("c2_to_c3", diagonal_embedding(c2, c3, {0, 0, 1}));
  ws.add("c3_to_c4", diagonal_embedding(c3, c4, {0, 1, 2, 2}));
  const auto autos = abelian_automorphisms(3);
  for (std::size_t k = 0; k < autos.size(); ++k) ws.add("c3_aut" + std::to_string(k), autos[k]);
  ws.save(dir / "functor_homs.json");

  io::Workspace fan;
  const auto fan_autos = m2fan_automorphisms();
  for (std::size_t k = 0; k < fan_autos.size(); ++k) fan.add("m2_aut" + std::to_string(k), fan_autos[k]);
  fan.add("m2fan", std::make_shared<const ContextPoset>(m2fan_poset()));
  fan.save(dir / "m2fan_automorphisms.json");

  // Single-object files for induce and roundtrip --iso.
  io::write_file(dir / "homs" / "c2_to_c3.json", io::to_json(diagonal_embedding(c2, c3, {0, 0, 1})));
  io::write_file(dir / "homs" / "c3_to_c4.json", io::to_json(diagonal_embedding(c3, c4, {0, 1, 2, 2})));
  const UnitalStarHom cycle = permutation_automorphism(c3, {1, 2, 0});
  io::write_file(dir / "homs" / "c3_cycle.json", io::to_json(cycle));
  const auto p3 = std::make_shared<const ContextPoset>(full_abelian_poset(3));
  io::write_file(dir / "homs" / "c3_cycle_presheaf_iso.json", io::to_json(induce_presheaf_morphism(cycle, p3, p3)));

  std::cout << "wrote bundles to " << dir << '\n';
  return 0;
}
