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

// Independent oracles. They recompute the quantities under test by brute
// force from raw matrices, without the library's restriction tables, search
// orders or group code, so agreement is evidence rather than tautology.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "specpresheaf/block_matrix.hpp"
#include "specpresheaf/context_poset.hpp"

namespace specpresheaf::oracle {

using Table = std::vector<std::size_t>;

// Set partitions of {0..n-1}, found by collapsing every function
// {0..n-1} -> {0..n-1} to its fibres.
inline std::set<std::set<std::set<int>>> partitions_via_functions(int n) {
  std::set<std::set<std::set<int>>> out;
  std::vector<int> f(n, 0);
  for (;;) {
    std::vector<std::set<int>> fibres(n);
    for (int i = 0; i < n; ++i) fibres[f[i]].insert(i);
    std::set<std::set<int>> p;
    for (auto& b : fibres) {
      if (!b.empty()) p.insert(b);
    }
    out.insert(p);
    int k = 0;
    while (k < n && ++f[k] == n) f[k++] = 0;
    if (k == n) break;
  }
  return out;
}

// The projection p lies below q (pq = p).
inline bool below(const BlockMatrix& p, const BlockMatrix& q) { return p * q == p; }

// small <= big as subalgebras: each atom of small is the sum of the atoms of
// big below it.
inline bool subcontext(const Context& small, const Context& big) {
  for (const auto& p : small.atoms()) {
    BlockMatrix sum = BlockMatrix::zero(p.shape());
    for (const auto& q : big.atoms()) {
      if (below(q, p)) sum += q;
    }
    if (!(sum == p)) return false;
  }
  return true;
}

// For small <= big: the atom of small above each atom of big.
inline Table restriction(const Context& small, const Context& big) {
  Table t(big.size());
  for (std::size_t b = 0; b < big.size(); ++b) {
    for (std::size_t s = 0; s < small.size(); ++s) {
      if (below(big.atoms()[b], small.atoms()[s])) t[b] = s;
    }
  }
  return t;
}

struct Order {
  std::vector<std::vector<char>> leq;
  std::vector<std::size_t> maximal;
  // tables[small][big] for small <= big.
  std::vector<std::vector<Table>> tables;
};

inline Order order_of(const std::vector<Context>& contexts) {
  const std::size_t n = contexts.size();
  Order o;
  o.leq.assign(n, std::vector<char>(n, 0));
  o.tables.assign(n, std::vector<Table>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (subcontext(contexts[i], contexts[j])) {
        o.leq[i][j] = 1;
        o.tables[i][j] = restriction(contexts[i], contexts[j]);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    bool top = true;
    for (std::size_t j = 0; j < n; ++j) top = top && (i == j || !o.leq[i][j]);
    if (top) o.maximal.push_back(i);
  }
  return o;
}

// Global sections by enumerating every choice of atoms at the maximal
// contexts (the full product) and deriving the rest; a choice counts when
// every context gets one consistent value.
inline std::size_t count_sections_over_maximal(const std::vector<Context>& contexts) {
  const Order o = order_of(contexts);
  const std::size_t n = contexts.size();
  std::vector<std::size_t> pick(o.maximal.size(), 0);
  std::size_t count = 0;
  for (;;) {
    std::vector<std::size_t> value(n, SIZE_MAX);
    bool ok = true;
    for (std::size_t c = 0; c < n && ok; ++c) {
      for (std::size_t m = 0; m < o.maximal.size() && ok; ++m) {
        const std::size_t big = o.maximal[m];
        if (!o.leq[c][big]) continue;
        const std::size_t v = o.tables[c][big][pick[m]];
        if (value[c] == SIZE_MAX) {
          value[c] = v;
        } else if (value[c] != v) {
          ok = false;
        }
      }
    }
    if (ok) ++count;
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == contexts[o.maximal[k]].size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return count;
}

// Global sections by enumerating the full product of all components.
inline std::size_t count_sections_full_product(const std::vector<Context>& contexts) {
  const Order o = order_of(contexts);
  const std::size_t n = contexts.size();
  std::vector<std::size_t> pick(n, 0);
  std::size_t count = 0;
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (i != j && o.leq[i][j]) ok = o.tables[i][j][pick[j]] == pick[i];
      }
    }
    if (ok) ++count;
    std::size_t k = 0;
    while (k < n && ++pick[k] == contexts[k].size()) pick[k++] = 0;
    if (k == n) break;
  }
  return count;
}

// Bijections of {0..n-1} preserving and reflecting leq, by trying all n!.
inline std::vector<Table> all_order_automorphisms(const std::vector<std::vector<char>>& leq) {
  const std::size_t n = leq.size();
  Table p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Table> out;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = 0; j < n && ok; ++j) ok = leq[i][j] == leq[p[i]][p[j]];
    }
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Presheaf automorphisms: every order automorphism g combined with every
// tuple of component bijections iota_c : atoms(g(c)) -> atoms(c), kept when
// all naturality squares commute.
inline std::size_t count_presheaf_automorphisms(const std::vector<Context>& contexts) {
  const Order o = order_of(contexts);
  const std::size_t n = contexts.size();
  std::size_t count = 0;
  for (const Table& g : all_order_automorphisms(o.leq)) {
    std::vector<std::vector<Table>> choices(n);
    for (std::size_t c = 0; c < n; ++c) {
      Table p(contexts[c].size());
      std::iota(p.begin(), p.end(), 0);
      do choices[c].push_back(p);
      while (std::next_permutation(p.begin(), p.end()));
    }
    std::vector<std::size_t> pick(n, 0);
    for (;;) {
      bool natural = true;
      for (std::size_t s = 0; s < n && natural; ++s) {
        for (std::size_t b = 0; b < n && natural; ++b) {
          if (s == b || !o.leq[s][b]) continue;
          // iota_s(r_{g s, g b}(x)) == r_{s b}(iota_b(x)) for x in atoms(g b)
          const Table& rg = o.tables[g[s]][g[b]];
          const Table& r = o.tables[s][b];
          const Table& is = choices[s][pick[s]];
          const Table& ib = choices[b][pick[b]];
          for (std::size_t x = 0; x < rg.size() && natural; ++x) natural = is[rg[x]] == r[ib[x]];
        }
      }
      if (natural) ++count;
      std::size_t k = 0;
      while (k < n && ++pick[k] == choices[k].size()) pick[k++] = 0;
      if (k == n) break;
    }
  }
  return count;
}

// Jordan automorphisms of C^n: 0/1 matrices M (columns = images of the
// minimal projections) whose columns are nonzero, pairwise disjoint and
// cover every coordinate. Idempotents of C^n are 0/1 vectors, so nothing is
// lost by restricting the search to 0/1 entries.
inline std::size_t count_jordan_automorphisms_cn(std::size_t n) {
  std::size_t count = 0;
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    std::uint64_t covered = 0;
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      const std::uint64_t col = (bits >> (j * n)) & ((std::uint64_t{1} << n) - 1);
      ok = col != 0 && (col & covered) == 0;
      covered |= col;
    }
    if (ok && covered == (std::uint64_t{1} << n) - 1) ++count;
  }
  return count;
}

// Pauli matrices and two-qubit words, built here rather than taken from the
// bundle code.
inline BlockMatrix pauli2(char c) {
  const GaussianRational o(0), l(1), m(-1), i = GaussianRational::i();
  switch (c) {
    case 'X': return BlockMatrix::square({{o, l}, {l, o}});
    case 'Y': return BlockMatrix::square({{o, -i}, {i, o}});
    case 'Z': return BlockMatrix::square({{l, o}, {o, m}});
    default: return BlockMatrix::square({{l, o}, {o, l}});
  }
}

inline BlockMatrix word(const std::string& w) {
  const BlockMatrix a = pauli2(w[0]), b = pauli2(w[1]);
  std::vector<std::vector<GaussianRational>> rows(4, std::vector<GaussianRational>(4));
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) rows[r][c] = a.at(0, r / 2, c / 2) * b.at(0, r % 2, c % 2);
  }
  return BlockMatrix::square(rows);
}

// Noncontextual value assignments for the Mermin-Peres square: pick one
// joint eigen-atom in each of the six maximal contexts (4^6 choices) and
// require every one of the nine observables to receive the same eigenvalue
// in both contexts containing it. Returns the number of consistent choices.
inline std::size_t count_mermin_value_assignments(const std::vector<Context>& maximal) {
  const std::vector<std::string> observables = {"XI", "IX", "XX", "IY", "YI", "YY", "XY", "YX", "ZZ"};
  // value[o][c][a]: eigenvalue of observable o at atom a of context c, or 0
  // when o is not diagonal in c.
  std::vector<std::vector<std::vector<int>>> value(observables.size());
  for (std::size_t o = 0; o < observables.size(); ++o) {
    const BlockMatrix obs = word(observables[o]);
    for (const auto& ctx : maximal) {
      std::vector<int> v;
      for (const auto& p : ctx.atoms()) {
        if (obs * p == p) {
          v.push_back(1);
        } else if (obs * p == GaussianRational(-1) * p) {
          v.push_back(-1);
        } else {
          v.assign(ctx.size(), 0);
          break;
        }
      }
      value[o].push_back(v);
    }
  }
  std::size_t consistent = 0;
  std::vector<std::size_t> pick(maximal.size(), 0);
  for (;;) {
    bool ok = true;
    for (std::size_t o = 0; o < observables.size() && ok; ++o) {
      int seen = 0;
      for (std::size_t c = 0; c < maximal.size() && ok; ++c) {
        const int v = value[o][c][pick[c]];
        if (v == 0) continue;
        if (seen == 0) seen = v;
        ok = seen == v;
      }
    }
    if (ok) ++consistent;
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == maximal[k].size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return consistent;
}

// Each observable must be diagonal in exactly two of the maximal contexts.
inline std::vector<std::size_t> mermin_observable_multiplicities(const std::vector<Context>& maximal) {
  std::vector<std::size_t> out;
  for (const char* w : {"XI", "IX", "XX", "IY", "YI", "YY", "XY", "YX", "ZZ"}) {
    const BlockMatrix obs = word(w);
    std::size_t m = 0;
    for (const auto& ctx : maximal) {
      bool diagonal = true;
      for (const auto& p : ctx.atoms()) diagonal = diagonal && (obs * p == p || obs * p == GaussianRational(-1) * p);
      m += diagonal;
    }
    out.push_back(m);
  }
  return out;
}

}  // namespace specpresheaf::oracle
