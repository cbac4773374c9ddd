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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specpresheaf/error.hpp"
#include "specpresheaf/report.hpp"

namespace specpresheaf {

// A finite group given by its element list, a product and a flattening key
// used for lookup. Products must stay inside the list.
template <class T>
class FiniteGroup {
 public:
  using Key = std::vector<std::size_t>;
  using Product = std::function<T(const T&, const T&)>;
  using KeyOf = std::function<Key(const T&)>;

  FiniteGroup(std::vector<T> elements, Product product, KeyOf key)
      : elements_(std::move(elements)), product_(std::move(product)), key_(std::move(key)) {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (!index_.emplace(key_(elements_[i]), i).second) {
        throw InvariantViolation("duplicate group element " + std::to_string(i));
      }
    }
  }

  std::size_t size() const { return elements_.size(); }
  const T& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<T>& elements() const { return elements_; }
  T multiply(const T& a, const T& b) const { return product_(a, b); }

  std::optional<std::size_t> find(const T& x) const {
    auto it = index_.find(key_(x));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Index of a * b; throws InvariantViolation when the list is not closed.
  std::size_t product_index(std::size_t a, std::size_t b) const {
    auto p = find(multiply(elements_[a], elements_[b]));
    if (!p) {
      throw InvariantViolation("product of elements " + std::to_string(a) + " and " + std::to_string(b) +
                               " leaves the group");
    }
    return *p;
  }

  // Greedy generating set: scan the elements in order, keep each one not yet
  // in the subgroup generated by those kept.
  std::vector<std::size_t> generators() const {
    std::vector<std::size_t> gens;
    std::vector<char> covered(size(), 0);
    for (std::size_t i = 0; i < size(); ++i) {
      if (covered[i]) continue;
      gens.push_back(i);
      covered.assign(size(), 0);
      std::vector<std::size_t> queue(gens.begin(), gens.end());
      for (std::size_t g : gens) covered[g] = 1;
      while (!queue.empty()) {
        const std::size_t x = queue.back();
        queue.pop_back();
        for (std::size_t g : gens) {
          const std::size_t y = product_index(x, g);
          if (!covered[y]) {
            covered[y] = 1;
            queue.push_back(y);
          }
        }
      }
    }
    return gens;
  }

 private:
  std::vector<T> elements_;
  Product product_;
  KeyOf key_;
  std::map<Key, std::size_t> index_;
};

// Checks that phi is a bijection G -> H and a homomorphism (or, when
// `contravariant`, an anti-homomorphism) on all pairs (generator, element).
template <class T, class U>
Check check_group_isomorphism(std::string name, std::string claim, const FiniteGroup<T>& g,
                              const FiniteGroup<U>& h, const std::function<U(const T&)>& phi,
                              bool contravariant) {
  Check out{std::move(name), false, std::move(claim), {}};
  if (g.size() != h.size()) {
    out.detail = "orders differ: " + std::to_string(g.size()) + " vs " + std::to_string(h.size());
    return out;
  }
  std::vector<std::size_t> image(g.size());
  std::vector<char> hit(h.size(), 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto j = h.find(phi(g.element(i)));
    if (!j) {
      out.detail = "image of element " + std::to_string(i) + " is not in the codomain";
      return out;
    }
    if (hit[*j]) {
      out.detail = "not injective at element " + std::to_string(i);
      return out;
    }
    hit[*j] = 1;
    image[i] = *j;
  }
  const auto gens = g.generators();
  for (std::size_t a : gens) {
    for (std::size_t b = 0; b < g.size(); ++b) {
      const std::size_t ab = g.product_index(a, b);
      const std::size_t expect = contravariant ? h.product_index(image[b], image[a]) : h.product_index(image[a], image[b]);
      if (image[ab] != expect) {
        out.detail = "product law fails on (" + std::to_string(a) + ", " + std::to_string(b) + ")";
        return out;
      }
    }
  }
  out.passed = true;
  out.detail = "order " + std::to_string(g.size()) + ", " + std::to_string(gens.size()) + " generators";
  return out;
}

}  // namespace specpresheaf
