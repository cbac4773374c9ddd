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

#include "specpresheaf/gaussian_rational.hpp"

#include <cctype>
#include <ostream>

#include "specpresheaf/error.hpp"

namespace specpresheaf {
namespace {

bool is_integer_literal(std::string_view s) {
  std::size_t pos = 0;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) pos = 1;
  if (pos == s.size()) return false;
  for (; pos < s.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(s[pos]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  if (!is_integer_literal(s)) {
    throw ArithmeticError("malformed scalar literal '" + std::string(whole) + "'");
  }
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

Rational parse_rational(std::string_view s, std::string_view whole) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s, whole));
  const Integer num = parse_integer(s.substr(0, slash), whole);
  const std::string_view den_text = s.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
    throw ArithmeticError("malformed scalar literal '" + std::string(whole) + "'");
  }
  const Integer den = parse_integer(den_text, whole);
  if (den == 0) throw ArithmeticError("zero denominator in '" + std::string(whole) + "'");
  return Rational(num, den);
}

std::string rational_text(const Rational& q) {
  std::string out = boost::multiprecision::numerator(q).str();
  const Integer den = boost::multiprecision::denominator(q);
  if (den != 1) out += "/" + den.str();
  return out;
}

}  // namespace

GaussianRational GaussianRational::fraction(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ArithmeticError("zero denominator");
  return {Rational(num) / Rational(den)};
}

// Zero components are common (real matrices, sparse atoms) and rational
// addition normalises even then, so they are skipped.
GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  if (!o.re_.is_zero()) re_ += o.re_;
  if (!o.im_.is_zero()) im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  if (!o.re_.is_zero()) re_ -= o.re_;
  if (!o.im_.is_zero()) im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (im_.is_zero() && o.im_.is_zero()) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw ArithmeticError("division by zero");
  if (o.im_.is_zero()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  const Rational n = o.norm_squared();
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b) {
  if (a.re_ < b.re_) return std::strong_ordering::less;
  if (b.re_ < a.re_) return std::strong_ordering::greater;
  if (a.im_ < b.im_) return std::strong_ordering::less;
  if (b.im_ < a.im_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string GaussianRational::to_string() const {
  if (im_.is_zero()) return rational_text(re_);
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = rational_text(im_) + " i";
  }
  if (re_.is_zero()) return imag;
  if (im_ > 0) return rational_text(re_) + "+" + imag;
  return rational_text(re_) + imag;
}

GaussianRational GaussianRational::parse(std::string_view text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw ArithmeticError("empty scalar literal");
  if (s.back() != 'i') return {parse_rational(s, text)};

  s.pop_back();
  // Split at the last sign that is not the leading one.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  std::string_view re_part;
  std::string_view im_part = s;
  if (split != std::string::npos) {
    re_part = std::string_view(s).substr(0, split);
    im_part = std::string_view(s).substr(split);
  }
  Rational im;
  if (im_part.empty() || im_part == "+") {
    im = 1;
  } else if (im_part == "-") {
    im = -1;
  } else {
    im = parse_rational(im_part, text);
  }
  const Rational re = re_part.empty() ? Rational(0) : parse_rational(re_part, text);
  return {re, im};
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
  return os << z.to_string();
}

}  // namespace specpresheaf
