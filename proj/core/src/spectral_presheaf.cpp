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

#include "specpresheaf/spectral_presheaf.hpp"

#include <algorithm>
#include <numeric>

#include "specpresheaf/error.hpp"

namespace specpresheaf {

SpectralPresheaf::SpectralPresheaf(PosetPtr poset) : poset_(std::move(poset)) {
  if (!poset_) throw InvariantViolation("spectral presheaf over a null poset");
  // Restriction tables come from the poset; a missing or ambiguous entry would
  // mean an atom of C has no unique atom of C' above it.
  for (std::size_t big = 0; big < poset_->size(); ++big) {
    for (std::size_t small = 0; small < poset_->size(); ++small) {
      if (!poset_->leq(small, big)) continue;
      for (std::size_t a : poset_->restriction(small, big)) {
        if (a >= component_size(small)) {
          throw InvariantViolation("restriction " + std::to_string(big) + " -> " +
                                   std::to_string(small) + " is not well defined");
        }
      }
    }
  }
}

SpectralPresheaf build_presheaf(PosetPtr poset) { return SpectralPresheaf(std::move(poset)); }

PresheafLawReport check_presheaf_laws(const SpectralPresheaf& sigma) {
  PresheafLawReport report;
  const auto& poset = sigma.poset();
  const std::size_t n = poset.size();
  for (std::size_t c = 0; c < n; ++c) {
    const auto& r = sigma.restriction(c, c);
    std::vector<std::size_t> id(sigma.component_size(c));
    std::iota(id.begin(), id.end(), 0);
    if (r != id) {
      report.identity = false;
      report.witnesses.push_back("identity fails at context " + std::to_string(c));
    }
  }
  for (std::size_t big = 0; big < n; ++big) {
    for (std::size_t mid = 0; mid < n; ++mid) {
      if (!poset.leq(mid, big)) continue;
      ++report.pairs_checked;
      const auto& r_mid = sigma.restriction(mid, big);
      std::vector<char> hit(sigma.component_size(mid), 0);
      for (std::size_t a : r_mid) hit[a] = 1;
      if (std::find(hit.begin(), hit.end(), 0) != hit.end()) {
        report.surjectivity = false;
        report.witnesses.push_back("restriction " + std::to_string(big) + " -> " +
                                   std::to_string(mid) + " is not surjective");
      }
      for (std::size_t small = 0; small < n; ++small) {
        if (!poset.leq(small, mid)) continue;
        ++report.triples_checked;
        const auto& direct = sigma.restriction(small, big);
        const auto& second = sigma.restriction(small, mid);
        for (std::size_t a = 0; a < r_mid.size(); ++a) {
          if (direct[a] != second[r_mid[a]]) {
            report.composition = false;
            report.witnesses.push_back("composition fails on " + std::to_string(small) + " <= " +
                                       std::to_string(mid) + " <= " + std::to_string(big));
            break;
          }
        }
      }
    }
  }
  return report;
}

namespace {

struct SectionSearch {
  const SpectralPresheaf& sigma;
  std::vector<std::size_t> order;  // maximal contexts, search order
  std::vector<std::vector<std::size_t>> below;  // for each maximal context, all contexts <= it
  GlobalSection assignment;
  std::vector<std::size_t> depth_of;  // search depth that fixed each context's value
  std::vector<GlobalSection> found;

  void run(std::size_t depth) {
    if (depth == order.size()) {
      found.push_back(assignment);
      return;
    }
    const std::size_t top = order[depth];
    for (std::size_t a = 0; a < sigma.component_size(top); ++a) {
      if (assign(top, a, depth)) run(depth + 1);
      undo(depth);
    }
  }

  bool assign(std::size_t top, std::size_t a, std::size_t depth) {
    for (std::size_t c : below[top]) {
      const std::size_t value = sigma.restriction(c, top)[a];
      if (assignment[c] == kUnassigned) {
        assignment[c] = value;
        depth_of[c] = depth;
      } else if (assignment[c] != value) {
        return false;
      }
    }
    return true;
  }

  void undo(std::size_t depth) {
    for (std::size_t c = 0; c < assignment.size(); ++c) {
      if (depth_of[c] == depth) {
        assignment[c] = kUnassigned;
        depth_of[c] = kUnassigned;
      }
    }
  }
};

}  // namespace

std::vector<GlobalSection> global_sections(const SpectralPresheaf& sigma) {
  const auto& poset = sigma.poset();
  const std::size_t n = poset.size();
  SectionSearch search{sigma, poset.maximal(), std::vector<std::vector<std::size_t>>(n),
                       GlobalSection(n, kUnassigned), std::vector<std::size_t>(n, kUnassigned), {}};
  std::stable_sort(search.order.begin(), search.order.end(), [&](std::size_t a, std::size_t b) {
    return sigma.component_size(a) > sigma.component_size(b);
  });
  for (std::size_t top : search.order) {
    for (std::size_t c = 0; c < n; ++c) {
      if (poset.leq(c, top)) search.below[top].push_back(c);
    }
  }
  search.run(0);
  std::sort(search.found.begin(), search.found.end());
  return std::move(search.found);
}

bool is_global_section(const SpectralPresheaf& sigma, const GlobalSection& section) {
  const auto& poset = sigma.poset();
  if (section.size() != poset.size()) return false;
  for (std::size_t big = 0; big < poset.size(); ++big) {
    if (section[big] >= sigma.component_size(big)) return false;
    for (std::size_t small = 0; small < poset.size(); ++small) {
      if (poset.leq(small, big) && sigma.restriction(small, big)[section[big]] != section[small]) {
        return false;
      }
    }
  }
  return true;
}

std::vector<std::vector<std::size_t>> Bohrification::inclusion(std::size_t small, std::size_t big) const {
  const auto& table = poset_->restriction(small, big);
  std::vector<std::vector<std::size_t>> out(poset_->context(small).size());
  for (std::size_t a = 0; a < table.size(); ++a) out[table[a]].push_back(a);
  return out;
}

bool local_duality_roundtrip(const Context& c) {
  const std::size_t k = c.size();
  const auto& atoms = c.atoms();
  // eta: C -> functions on atoms. On the atom basis it must send a_j to the
  // indicator of point j, be multiplicative and *-preserving, and send 1 to
  // the constant function 1.
  std::vector<Vector> eta;
  eta.reserve(k);
  for (const auto& a : atoms) {
    auto coeffs = c.coordinates(a);
    if (!coeffs) return false;
    eta.push_back(std::move(*coeffs));
  }
  const auto one = c.coordinates(c.algebra().unit());
  if (!one || *one != Vector(k, GaussianRational(1))) return false;
  for (std::size_t i = 0; i < k; ++i) {
    const auto star = c.coordinates(atoms[i].adjoint());
    if (!star) return false;
    for (std::size_t p = 0; p < k; ++p) {
      if ((*star)[p] != eta[i][p].conj()) return false;
    }
    for (std::size_t j = 0; j < k; ++j) {
      const auto prod = c.coordinates(atoms[i] * atoms[j]);
      if (!prod) return false;
      for (std::size_t p = 0; p < k; ++p) {
        if ((*prod)[p] != eta[i][p] * eta[j][p]) return false;
      }
    }
  }
  // Bijectivity: the images of the atoms are the standard basis of the
  // function algebra, and eta^{-1} reconstructs every element.
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      if (eta[i][p] != GaussianRational(p == i ? 1 : 0)) return false;
    }
  }
  // Double dual: evaluation at point p, pulled back along eta, is a character
  // of C taking the value 1 exactly on atom p. Distinct points give distinct
  // characters, recovering the original character set.
  for (std::size_t p = 0; p < k; ++p) {
    std::size_t ones = 0;
    std::size_t where = k;
    for (std::size_t i = 0; i < k; ++i) {
      const GaussianRational value = eta[i][p];
      if (value == GaussianRational(1)) {
        ++ones;
        where = i;
      } else if (!value.is_zero()) {
        return false;
      }
    }
    if (ones != 1 || where != p) return false;
  }
  return true;
}

}  // namespace specpresheaf
