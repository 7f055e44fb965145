// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0
//
// Sparse multivariate polynomials and rational functions over exact
// rationals, sized for the parametric oracle: few variables, moderate
// degrees. Rational functions cancel scalar content, common monomial
// factors, and syntactic equality of numerator and denominator; full
// polynomial gcd is intentionally out of scope.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <pstctl/rational.hpp>

namespace pstctl {

using Exponents = std::vector<std::uint32_t>;

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t nvars, const Rational& constant = Rational(0));
  static Polynomial variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const Rational& constant_value() const;  // requires is_constant()
  std::size_t term_count() const { return terms_.size(); }
  std::uint32_t degree() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial scaled(const Rational& c) const;

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

  Rational evaluate(const std::vector<Rational>& values) const;

  // Lexicographically leading coefficient; 0 for the zero polynomial.
  Rational leading_coefficient() const;
  // Componentwise minimum exponent vector over all terms.
  Exponents monomial_content() const;
  // Divides every term by x^shift (caller guarantees divisibility).
  Polynomial shifted_down(const Exponents& shift) const;

  // Canonical text, e.g. "1 - 2*x + x^2*y"; variables named by `names`.
  std::string to_string(const std::vector<std::string>& names) const;

  const std::map<Exponents, Rational>& terms() const { return terms_; }

 private:
  void add_term(const Exponents& e, const Rational& c);

  std::size_t nvars_ = 0;
  std::map<Exponents, Rational> terms_;  // no zero coefficients
};

struct RationalFunction {
  Polynomial num;
  Polynomial den;

  RationalFunction() = default;
  explicit RationalFunction(std::size_t nvars, const Rational& constant = Rational(0));
  RationalFunction(Polynomial n, Polynomial d);
  static RationalFunction variable(std::size_t nvars, std::size_t index);

  bool is_zero() const { return num.is_zero(); }
  bool is_constant() const { return num.is_constant() && den.is_constant(); }
  Rational constant_value() const;

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;

  bool operator==(const RationalFunction& o) const { return num == o.num && den == o.den; }

  // Exact evaluation; throws ModelError when the denominator vanishes at the
  // given point (evaluation is deferred until here by design).
  Rational evaluate(const std::vector<Rational>& values) const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void normalize();
};

// Guard against runaway symbolic growth.
inline constexpr std::size_t kMaxPolynomialTerms = 200'000;

}  // namespace pstctl
