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

#include <cstddef>

namespace specpresheaf {

// Fail-fast size bounds. SPECPRESHEAF_MAX_CONTEXTS overrides both context
// counts; the full-abelian bound then also admits n with Bell(n) within it.
struct SizeLimits {
  std::size_t max_contexts = 5000;
  std::size_t max_automorphism_contexts = 200;
  std::size_t max_full_abelian_n = 6;

  static SizeLimits from_environment();
};

}  // namespace specpresheaf
