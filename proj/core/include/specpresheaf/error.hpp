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

#include <stdexcept>
#include <string>

namespace specpresheaf {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands have incompatible block shapes.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

// An object violates one of its structural invariants; the message names the
// witness (residual, offending pair, ...).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// Objects from different algebras or posets were combined.
class ObjectMismatch : public Error {
 public:
  using Error::Error;
};

// A configured size bound was exceeded.
class SizeBoundExceeded : public Error {
 public:
  using Error::Error;
};

// A required context is absent from a stored poset.
class MissingContext : public Error {
 public:
  using Error::Error;
};

// Division by zero or a malformed scalar literal.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

// JSON input does not match the documented schema. `where` is a field path
// such as "contexts[2].atoms[0]".
class SchemaError : public Error {
 public:
  SchemaError(const std::string& where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

}  // namespace specpresheaf
