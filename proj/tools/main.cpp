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

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "specpresheaf/error.hpp"

namespace cli = specpresheaf::cli;

namespace {

void add_poset_source(CLI::App* cmd, cli::PosetSource& src) {
  cmd->add_option("--poset", src.poset_file, "poset JSON file");
  cmd->add_option("--generators", src.generators_file, "generating contexts; the poset is their closure");
  cmd->add_option("--presheaf", src.presheaf_file, "presheaf JSON file");
  cmd->add_option("--bundle", src.bundle, "built-in bundle (c1..c6, m2fan, mermin)");
  cmd->add_option("--full-abelian", src.full_abelian, "all contexts of C^n")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral presheaves of finite-dimensional *-algebras, with exact arithmetic"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "print the JSON report instead of text");

  cli::PosetSource src;
  std::string out_file, hom_file, source_file, target_file, homs_file, autos_file, iso_file, algebra, algebra_file;
  bool count_only = false;
  std::function<cli::Outcome()> run;

  auto* build = app.add_subcommand("build-poset", "close generators under intersection and list the contexts");
  add_poset_source(build, src);
  build->add_option("--algebra", algebra_file, "algebra JSON file the contexts must belong to");
  build->add_option("--out", out_file, "write the poset here");
  build->callback([&] { run = [&] { return cli::build_poset(src, algebra_file, out_file); }; });

  auto* pre = app.add_subcommand("presheaf", "build the spectral presheaf and check its laws");
  add_poset_source(pre, src);
  pre->add_option("--out", out_file, "write the presheaf here");
  pre->callback([&] { run = [&] { return cli::presheaf(src, out_file); }; });

  auto* gs = app.add_subcommand("global-sections", "enumerate global sections");
  add_poset_source(gs, src);
  gs->add_flag("--count-only", count_only, "print only the count");
  gs->callback([&] { run = [&] { return cli::global_sections(src, count_only); }; });

  auto* ind = app.add_subcommand("induce", "base map and presheaf morphism induced by a *-homomorphism");
  ind->add_option("--hom", hom_file, "hom JSON file")->required();
  ind->add_option("--source,--source-poset", source_file, "poset of the hom's source algebra");
  ind->add_option("--target,--target-poset", target_file, "poset of the hom's target algebra");
  ind->add_option("--out", out_file, "write the presheaf morphism here");
  ind->callback([&] { run = [&] { return cli::induce(hom_file, source_file, target_file, out_file); }; });

  auto* fun = app.add_subcommand("verify-functor", "identity and composition laws of S and B");
  fun->add_option("--homs", homs_file, "workspace file, or directory of hom/poset/workspace files");
  fun->callback([&] { run = [&] { return cli::verify_functor(homs_file); }; });

  auto* aut = app.add_subcommand("aut-groups", "orders of the automorphism groups and the maps between them");
  add_poset_source(aut, src);
  aut->add_option("--automorphisms", autos_file, "workspace with *-automorphisms of the algebra");
  aut->callback([&] { run = [&] { return cli::aut_groups(src, autos_file); }; });

  auto* rt = app.add_subcommand("roundtrip", "presheaf iso <-> partial iso <-> lattice iso roundtrips");
  add_poset_source(rt, src);
  rt->add_option("--iso", iso_file, "presheaf_morphism JSON file");
  rt->callback([&] { run = [&] { return cli::roundtrip(src, iso_file); }; });

  auto* vc = app.add_subcommand("verify-correspondence", "all correspondence checks for one algebra");
  vc->add_option("--algebra", algebra, "c2, c3, c4, m2fan or mermin")->required();
  vc->callback([&] { run = [&] { return cli::verify_correspondence(algebra); }; });

  for (auto* sub : app.get_subcommands({})) sub->add_flag("--json", json, "print the JSON report instead of text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const cli::Outcome out = run();
    if (json) {
      std::cout << specpresheaf::io::dump(out.report);
    } else {
      for (const auto& line : out.lines) std::cout << line << '\n';
    }
    return out.exit_code;
  } catch (const cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const specpresheaf::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return 2;
  } catch (const specpresheaf::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
