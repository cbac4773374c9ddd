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

#include "specpresheaf/block_matrix.hpp"

#include <ostream>
#include <sstream>

#include "specpresheaf/error.hpp"

namespace specpresheaf {
namespace {

void require_same_shape(const BlockMatrix& a, const BlockMatrix& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw ShapeMismatch(std::string(op) + ": shape " + shape_to_string(a.shape()) +
                        " vs " + shape_to_string(b.shape()));
  }
}

}  // namespace

std::size_t coordinate_dimension(const Shape& shape) {
  std::size_t d = 0;
  for (std::size_t n : shape) d += n * n;
  return d;
}

std::string shape_to_string(const Shape& shape) {
  std::string out = "[";
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(shape[k]);
  }
  return out + "]";
}

BlockMatrix::BlockMatrix(Shape shape) : shape_(std::move(shape)) {
  blocks_.reserve(shape_.size());
  for (std::size_t n : shape_) blocks_.emplace_back(n * n);
}

BlockMatrix::BlockMatrix(Shape shape, std::vector<std::vector<GaussianRational>> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
  if (blocks_.size() != shape_.size()) {
    throw ShapeMismatch("block count " + std::to_string(blocks_.size()) +
                        " does not match shape " + shape_to_string(shape_));
  }
  for (std::size_t b = 0; b < shape_.size(); ++b) {
    if (blocks_[b].size() != shape_[b] * shape_[b]) {
      throw ShapeMismatch("block " + std::to_string(b) + " has " +
                          std::to_string(blocks_[b].size()) + " entries, expected " +
                          std::to_string(shape_[b] * shape_[b]));
    }
  }
}

BlockMatrix BlockMatrix::identity(const Shape& shape) {
  BlockMatrix m(shape);
  for (std::size_t b = 0; b < shape.size(); ++b) {
    for (std::size_t r = 0; r < shape[b]; ++r) m.at(b, r, r) = 1;
  }
  return m;
}

BlockMatrix BlockMatrix::unit(const Shape& shape, std::size_t block, std::size_t row,
                              std::size_t col) {
  BlockMatrix m(shape);
  m.at(block, row, col) = 1;
  return m;
}

BlockMatrix BlockMatrix::diagonal(std::span<const GaussianRational> entries) {
  BlockMatrix m(Shape(entries.size(), 1));
  for (std::size_t k = 0; k < entries.size(); ++k) m.blocks_[k][0] = entries[k];
  return m;
}

BlockMatrix BlockMatrix::square(const std::vector<std::vector<GaussianRational>>& rows) {
  const std::size_t n = rows.size();
  std::vector<GaussianRational> flat;
  flat.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw ShapeMismatch("square(): ragged rows");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return BlockMatrix(Shape{n}, {std::move(flat)});
}

BlockMatrix BlockMatrix::from_coordinates(const Shape& shape,
                                          std::span<const GaussianRational> coords) {
  if (coords.size() != coordinate_dimension(shape)) {
    throw ShapeMismatch("coordinate vector of length " + std::to_string(coords.size()) +
                        " for shape " + shape_to_string(shape));
  }
  BlockMatrix m(shape);
  std::size_t k = 0;
  for (auto& block : m.blocks_) {
    for (auto& entry : block) entry = coords[k++];
  }
  return m;
}

const GaussianRational& BlockMatrix::at(std::size_t block, std::size_t row,
                                        std::size_t col) const {
  return blocks_.at(block).at(row * shape_[block] + col);
}

GaussianRational& BlockMatrix::at(std::size_t block, std::size_t row, std::size_t col) {
  return blocks_.at(block).at(row * shape_[block] + col);
}

std::vector<GaussianRational> BlockMatrix::coordinates() const {
  std::vector<GaussianRational> out;
  out.reserve(coordinate_dimension(shape_));
  for (const auto& block : blocks_) out.insert(out.end(), block.begin(), block.end());
  return out;
}

bool BlockMatrix::is_zero() const {
  for (const auto& block : blocks_) {
    for (const auto& e : block) {
      if (!e.is_zero()) return false;
    }
  }
  return true;
}

BlockMatrix BlockMatrix::adjoint() const {
  BlockMatrix m(shape_);
  for (std::size_t b = 0; b < shape_.size(); ++b) {
    const std::size_t n = shape_[b];
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) m.at(b, c, r) = at(b, r, c).conj();
    }
  }
  return m;
}

GaussianRational BlockMatrix::trace() const {
  GaussianRational t;
  for (std::size_t b = 0; b < shape_.size(); ++b) {
    for (std::size_t r = 0; r < shape_[b]; ++r) {
      if (!at(b, r, r).is_zero()) t += at(b, r, r);
    }
  }
  return t;
}

GaussianRational trace_product(const BlockMatrix& a, const BlockMatrix& b) {
  require_same_shape(a, b, "trace_product");
  GaussianRational t;
  for (std::size_t k = 0; k < a.num_blocks(); ++k) {
    const std::size_t n = a.block_dim(k);
    const auto& x = a.block(k);
    const auto& y = b.block(k);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!x[i * n + j].is_zero() && !y[j * n + i].is_zero()) t += x[i * n + j] * y[j * n + i];
      }
    }
  }
  return t;
}

BlockMatrix& BlockMatrix::operator+=(const BlockMatrix& o) {
  require_same_shape(*this, o, "add");
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (std::size_t k = 0; k < blocks_[b].size(); ++k) blocks_[b][k] += o.blocks_[b][k];
  }
  return *this;
}

BlockMatrix& BlockMatrix::operator-=(const BlockMatrix& o) {
  require_same_shape(*this, o, "subtract");
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (std::size_t k = 0; k < blocks_[b].size(); ++k) blocks_[b][k] -= o.blocks_[b][k];
  }
  return *this;
}

BlockMatrix& BlockMatrix::operator*=(const GaussianRational& s) {
  for (auto& block : blocks_) {
    for (auto& e : block) e *= s;
  }
  return *this;
}

BlockMatrix operator*(const BlockMatrix& a, const BlockMatrix& b) {
  require_same_shape(a, b, "multiply");
  BlockMatrix m(a.shape_);
  for (std::size_t blk = 0; blk < a.shape_.size(); ++blk) {
    const std::size_t n = a.shape_[blk];
    const auto& x = a.blocks_[blk];
    const auto& y = b.blocks_[blk];
    auto& z = m.blocks_[blk];
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t k = 0; k < n; ++k) {
        const GaussianRational& xrk = x[r * n + k];
        if (xrk.is_zero()) continue;
        for (std::size_t c = 0; c < n; ++c) {
          const GaussianRational& ykc = y[k * n + c];
          if (!ykc.is_zero()) z[r * n + c] += xrk * ykc;
        }
      }
    }
  }
  return m;
}

std::strong_ordering operator<=>(const BlockMatrix& a, const BlockMatrix& b) {
  if (auto c = a.shape_ <=> b.shape_; c != 0) return c;
  for (std::size_t blk = 0; blk < a.blocks_.size(); ++blk) {
    for (std::size_t k = 0; k < a.blocks_[blk].size(); ++k) {
      // Reversed so that larger entries sort first.
      if (auto c = b.blocks_[blk][k] <=> a.blocks_[blk][k]; c != 0) return c;
    }
  }
  return std::strong_ordering::equal;
}

std::string BlockMatrix::to_string() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t b = 0; b < shape_.size(); ++b) {
    if (b) os << " (+) ";
    os << "[";
    const std::size_t n = shape_[b];
    for (std::size_t r = 0; r < n; ++r) {
      if (r) os << "; ";
      for (std::size_t c = 0; c < n; ++c) {
        if (c) os << ", ";
        os << at(b, r, c);
      }
    }
    os << "]";
  }
  os << "}";
  return os.str();
}

BlockMatrix mat_add(const BlockMatrix& a, const BlockMatrix& b) { return a + b; }
BlockMatrix mat_mul(const BlockMatrix& a, const BlockMatrix& b) { return a * b; }
BlockMatrix mat_adjoint(const BlockMatrix& a) { return a.adjoint(); }

BlockMatrix jordan_product(const BlockMatrix& a, const BlockMatrix& b) {
  BlockMatrix m = a * b + b * a;
  m *= GaussianRational::fraction(1, 2);
  return m;
}

BlockMatrix kronecker(const BlockMatrix& a, const BlockMatrix& b) {
  if (a.num_blocks() != 1 || b.num_blocks() != 1) {
    throw ShapeMismatch("kronecker(): both factors must be single-block");
  }
  const std::size_t p = a.block_dim(0);
  const std::size_t q = b.block_dim(0);
  BlockMatrix m(Shape{p * q});
  for (std::size_t r1 = 0; r1 < p; ++r1) {
    for (std::size_t c1 = 0; c1 < p; ++c1) {
      const GaussianRational& x = a.at(0, r1, c1);
      if (x.is_zero()) continue;
      for (std::size_t r2 = 0; r2 < q; ++r2) {
        for (std::size_t c2 = 0; c2 < q; ++c2) {
          m.at(0, r1 * q + r2, c1 * q + c2) = x * b.at(0, r2, c2);
        }
      }
    }
  }
  return m;
}

std::ostream& operator<<(std::ostream& os, const BlockMatrix& m) { return os << m.to_string(); }

}  // namespace specpresheaf
