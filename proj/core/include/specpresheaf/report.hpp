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

#include <string>
#include <vector>

namespace specpresheaf {

// One pass/fail line of a verification run. `claim` names the statement the
// check instantiates (glossary vocabulary), `detail` carries the witness.
struct Check {
  std::string name;
  bool passed = false;
  std::string claim;
  std::string detail;
};

struct VerificationReport {
  std::vector<Check> checks;

  void add(std::string name, bool passed, std::string claim, std::string detail = {}) {
    checks.push_back({std::move(name), passed, std::move(claim), std::move(detail)});
  }
  void append(const VerificationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

}  // namespace specpresheaf
