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

#include "specpresheaf/context_poset.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

#include "specpresheaf/error.hpp"

namespace specpresheaf {
namespace {

void check_count(std::size_t n, const SizeLimits& limits) {
  if (n > limits.max_contexts) {
    throw SizeBoundExceeded("poset would hold " + std::to_string(n) + " contexts; limit is " +
                            std::to_string(limits.max_contexts) +
                            " (set SPECPRESHEAF_MAX_CONTEXTS to raise it)");
  }
}

std::vector<Context> canonical(std::vector<Context> contexts) {
  std::sort(contexts.begin(), contexts.end());
  contexts.erase(std::unique(contexts.begin(), contexts.end()), contexts.end());
  return contexts;
}

}  // namespace

SizeLimits SizeLimits::from_environment() {
  SizeLimits limits;
  if (const char* env = std::getenv("SPECPRESHEAF_MAX_CONTEXTS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      limits.max_contexts = static_cast<std::size_t>(v);
      limits.max_automorphism_contexts = static_cast<std::size_t>(v);
      std::size_t n = 0;
      while (n < 12 && bell_number(n + 1) <= v) ++n;
      limits.max_full_abelian_n = n;
    }
  }
  return limits;
}

ContextPoset::ContextPoset(StarAlgebra algebra, std::vector<Context> contexts, const SizeLimits& limits)
    : algebra_(std::move(algebra)), contexts_(canonical(std::move(contexts))) {
  check_count(contexts_.size(), limits);
  for (const auto& c : contexts_) {
    if (c.algebra().shape() != algebra_.shape()) {
      throw ObjectMismatch("context from algebra of shape " + shape_to_string(c.algebra().shape()) +
                           " in poset of '" + algebra_.label() + "'");
    }
  }
  if (contexts_.empty() || !contexts_.front().is_trivial()) {
    throw InvariantViolation("poset does not contain the trivial context");
  }
  for (std::size_t i = 0; i < contexts_.size(); ++i) {
    for (std::size_t j = i + 1; j < contexts_.size(); ++j) {
      const Context meet = intersect(contexts_[i], contexts_[j]);
      if (!std::binary_search(contexts_.begin(), contexts_.end(), meet)) {
        throw InvariantViolation("poset not closed under intersection: contexts " + std::to_string(i) +
                                 " and " + std::to_string(j) + " meet outside the family");
      }
    }
  }
  build_order();
}

ContextPoset::ContextPoset(Trusted, StarAlgebra algebra, std::vector<Context> contexts,
                           const SizeLimits& limits)
    : algebra_(std::move(algebra)), contexts_(canonical(std::move(contexts))) {
  check_count(contexts_.size(), limits);
  build_order();
}

void ContextPoset::build_order() {
  const std::size_t n = contexts_.size();
  leq_.assign(n, std::vector<char>(n, 0));
  for (std::size_t big = 0; big < n; ++big) {
    for (std::size_t small = 0; small < n; ++small) {
      // A subcontext never has more atoms.
      if (contexts_[small].size() > contexts_[big].size()) continue;
      if (auto table = restriction_table(contexts_[small], contexts_[big])) {
        leq_[small][big] = 1;
        restrictions_.emplace(big * n + small, std::move(*table));
      }
    }
  }
  covers_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !leq_[j][i]) continue;
      bool cover = true;
      for (std::size_t k = 0; k < n && cover; ++k) {
        if (k != i && k != j && leq_[j][k] && leq_[k][i]) cover = false;
      }
      if (cover) covers_[i].push_back(j);
    }
  }
}

std::optional<std::size_t> ContextPoset::index_of(const Context& c) const {
  auto it = std::lower_bound(contexts_.begin(), contexts_.end(), c);
  if (it == contexts_.end() || !(*it == c)) return std::nullopt;
  return static_cast<std::size_t>(it - contexts_.begin());
}

const std::vector<std::size_t>& ContextPoset::restriction(std::size_t small, std::size_t big) const {
  auto it = restrictions_.find(big * contexts_.size() + small);
  if (it == restrictions_.end()) {
    throw ObjectMismatch("context " + std::to_string(small) + " is not below context " +
                         std::to_string(big));
  }
  return it->second;
}

std::vector<std::size_t> ContextPoset::maximal() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i) {
    bool top = true;
    for (std::size_t j = 0; j < size() && top; ++j) {
      if (j != i && leq_[i][j]) top = false;
    }
    if (top) out.push_back(i);
  }
  return out;
}

ContextPoset closure(const StarAlgebra& algebra, std::span<const Context> generators,
                     const SizeLimits& limits) {
  std::set<Context> family{Context::trivial(algebra)};
  for (const auto& g : generators) {
    if (g.algebra().shape() != algebra.shape()) {
      throw ObjectMismatch("generator from algebra of shape " + shape_to_string(g.algebra().shape()));
    }
    family.insert(g);
  }
  std::vector<Context> frontier(family.begin(), family.end());
  while (!frontier.empty()) {
    check_count(family.size(), limits);
    const std::vector<Context> current(family.begin(), family.end());
    std::vector<Context> fresh;
    for (const auto& f : frontier) {
      for (const auto& c : current) {
        Context meet = intersect(f, c);
        if (!family.contains(meet)) {
          family.insert(meet);
          fresh.push_back(std::move(meet));
        }
      }
    }
    frontier = std::move(fresh);
  }
  return ContextPoset(ContextPoset::Trusted{}, algebra,
                      std::vector<Context>(family.begin(), family.end()), limits);
}

std::vector<std::vector<std::size_t>> set_partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  if (n == 0) return {{}};
  std::vector<std::size_t> rgs(n, 0);
  std::vector<std::size_t> prefix_max(n, 0);
  while (true) {
    out.push_back(rgs);
    // Next restricted growth string: increment the last position that may grow.
    std::size_t k = n;
    while (k-- > 1) {
      if (rgs[k] <= prefix_max[k - 1]) break;
    }
    if (k == 0) break;
    ++rgs[k];
    prefix_max[k] = std::max(prefix_max[k - 1], rgs[k]);
    for (std::size_t j = k + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[k];
    }
  }
  return out;
}

std::size_t bell_number(std::size_t n) {
  // Bell triangle.
  std::vector<std::size_t> row{1};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::size_t> next{row.back()};
    for (std::size_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

ContextPoset full_abelian_poset(std::size_t n, const SizeLimits& limits) {
  if (n == 0) throw InvariantViolation("full_abelian_poset(): n must be positive");
  if (n > limits.max_full_abelian_n) {
    throw SizeBoundExceeded("full_abelian_poset(" + std::to_string(n) + "): bound is " +
                            std::to_string(limits.max_full_abelian_n));
  }
  const StarAlgebra algebra = StarAlgebra::abelian(n);
  std::vector<Context> contexts;
  for (const auto& rgs : set_partitions(n)) {
    const std::size_t blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<BlockMatrix> atoms(blocks, algebra.zero());
    for (std::size_t k = 0; k < n; ++k) atoms[rgs[k]].at(k, 0, 0) = 1;
    contexts.emplace_back(algebra, std::move(atoms));
  }
  return ContextPoset(ContextPoset::Trusted{}, algebra, std::move(contexts), limits);
}

std::vector<Permutation> order_automorphisms(const ContextPoset& poset, const SizeLimits& limits) {
  if (poset.size() > limits.max_automorphism_contexts) {
    throw SizeBoundExceeded("order_automorphisms(): poset has " + std::to_string(poset.size()) +
                            " contexts; limit is " + std::to_string(limits.max_automorphism_contexts));
  }
  return relation_automorphisms(poset.order_matrix());
}

}  // namespace specpresheaf
