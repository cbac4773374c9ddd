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

#include "specpresheaf/order_search.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace specpresheaf {
namespace {

struct Search {
  const std::vector<std::vector<char>>& leq;
  const CandidateFilter& filter;
  std::vector<std::pair<std::size_t, std::size_t>> signature;
  std::vector<std::size_t> order;
  Permutation partial;
  std::vector<char> used;
  std::vector<Permutation> found;

  bool consistent(std::size_t s, std::size_t t) const {
    for (std::size_t u = 0; u < partial.size(); ++u) {
      const std::size_t fu = partial[u];
      if (fu == kUnassigned) continue;
      if (leq[s][u] != leq[t][fu] || leq[u][s] != leq[fu][t]) return false;
    }
    return true;
  }

  void run(std::size_t depth) {
    if (depth == order.size()) {
      found.push_back(partial);
      return;
    }
    const std::size_t s = order[depth];
    for (std::size_t t = 0; t < partial.size(); ++t) {
      if (used[t] || signature[t] != signature[s]) continue;
      if (!consistent(s, t)) continue;
      if (filter && !filter(s, t, partial)) continue;
      partial[s] = t;
      used[t] = 1;
      run(depth + 1);
      used[t] = 0;
      partial[s] = kUnassigned;
    }
  }
};

}  // namespace

std::vector<Permutation> relation_automorphisms(const std::vector<std::vector<char>>& leq,
                                                const CandidateFilter& filter) {
  const std::size_t n = leq.size();
  Search search{leq, filter, {}, {}, Permutation(n, kUnassigned), std::vector<char>(n, 0), {}};
  search.signature.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t below = 0;
    std::size_t above = 0;
    for (std::size_t j = 0; j < n; ++j) {
      below += leq[j][i] ? 1 : 0;
      above += leq[i][j] ? 1 : 0;
    }
    search.signature[i] = {below, above};
  }
  // Start from the rarest signature, then repeatedly take the element
  // comparable to the most already-ordered ones (rarer signature, then lower
  // index, breaks ties), so that every assignment is constrained early.
  std::vector<std::size_t> multiplicity(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) multiplicity[i] += search.signature[i] == search.signature[j];
  }
  std::vector<char> placed(n, 0);
  std::vector<std::size_t> links(n, 0);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (placed[i]) continue;
      if (best == n || links[i] > links[best] ||
          (links[i] == links[best] && multiplicity[i] < multiplicity[best])) {
        best = i;
      }
    }
    placed[best] = 1;
    search.order.push_back(best);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != best && (leq[best][j] || leq[j][best])) ++links[j];
    }
  }
  search.run(0);
  std::sort(search.found.begin(), search.found.end());
  return std::move(search.found);
}

Permutation compose_permutations(const Permutation& second, const Permutation& first) {
  Permutation out(first.size());
  for (std::size_t k = 0; k < first.size(); ++k) out[k] = second.at(first[k]);
  return out;
}

Permutation invert_permutation(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) out.at(p[k]) = k;
  return out;
}

Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<Permutation> out;
  Permutation p = identity_permutation(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace specpresheaf
