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

#include <optional>
#include <string>
#include <vector>

#include "specpresheaf/context_poset.hpp"
#include "specpresheaf/io.hpp"

namespace specpresheaf::cli {

using io::Json;

// Bad flag combinations and unreadable inputs; exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Result of one subcommand: a JSON report, the same content as text lines,
// and the exit code (0 verified, 1 verification failure).
struct Outcome {
  Json report;
  std::vector<std::string> lines;
  int exit_code = 0;
};

// Exactly one of these selects the poset a command works on.
struct PosetSource {
  std::string poset_file;
  std::string generators_file;
  std::string presheaf_file;
  std::string bundle;
  std::optional<std::size_t> full_abelian;
};

struct ResolvedPoset {
  PosetPtr poset;
  std::string name;     // bundle name, "c<n>" or file path
  std::string bundle;   // non-empty for built-in bundles and full-abelian posets
};
ResolvedPoset resolve_poset(const PosetSource& src);

// `algebra_file`, when given, must describe the algebra of the contexts.
Outcome build_poset(const PosetSource& src, const std::string& algebra_file, const std::string& out);
Outcome presheaf(const PosetSource& src, const std::string& out);
Outcome global_sections(const PosetSource& src, bool count_only);
Outcome induce(const std::string& hom_file, const std::string& source_file, const std::string& target_file,
               const std::string& out);
Outcome verify_functor(const std::string& homs_file);
Outcome aut_groups(const PosetSource& src, const std::string& automorphisms_file);
Outcome roundtrip(const PosetSource& src, const std::string& iso_file);
Outcome verify_correspondence(const std::string& algebra);

}  // namespace specpresheaf::cli
