// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0

#include <pstctl/polynomial.hpp>

#include <algorithm>
#include <sstream>

#include <pstctl/errors.hpp>

namespace pstctl {

Polynomial::Polynomial(std::size_t nvars, const Rational& constant) : nvars_(nvars) {
  if (constant != 0) terms_.emplace(Exponents(nvars, 0), constant);
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  Polynomial p;
  p.nvars_ = nvars;
  Exponents e(nvars, 0);
  e.at(index) = 1;
  p.terms_.emplace(std::move(e), Rational(1));
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
}

const Rational& Polynomial::constant_value() const {
  static const Rational zero(0);
  if (terms_.empty()) return zero;
  return terms_.begin()->second;
}

std::uint32_t Polynomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) {
    (void)c;
    std::uint32_t t = 0;
    for (auto x : e) t += x;
    d = std::max(d, t);
  }
  return d;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (c != 0) terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  r += o;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  if (terms_.size() > kMaxPolynomialTerms)
    throw ResourceError("polynomial exceeds term cap during addition");
  return *this;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  r -= o;
  return r;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  r.nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      Exponents e(r.nvars_, 0);
      for (std::size_t i = 0; i < e1.size(); ++i) e[i] += e1[i];
      for (std::size_t i = 0; i < e2.size(); ++i) e[i] += e2[i];
      r.add_term(e, c1 * c2);
    }
    if (r.terms_.size() > kMaxPolynomialTerms)
      throw ResourceError("polynomial exceeds term cap during multiplication");
  }
  return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial r;
  r.nvars_ = nvars_;
  if (c == 0) return r;
  for (const auto& [e, coef] : terms_) r.terms_.emplace(e, coef * c);
  return r;
}

Rational Polynomial::evaluate(const std::vector<Rational>& values) const {
  Rational out(0);
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::uint32_t k = 0; k < e[i]; ++k) term *= values.at(i);
    }
    out += term;
  }
  return out;
}

Rational Polynomial::leading_coefficient() const {
  if (terms_.empty()) return Rational(0);
  return terms_.rbegin()->second;  // lexicographically largest monomial
}

Exponents Polynomial::monomial_content() const {
  if (terms_.empty()) return Exponents(nvars_, 0);
  Exponents content = terms_.begin()->first;
  for (const auto& [e, c] : terms_) {
    (void)c;
    for (std::size_t i = 0; i < content.size(); ++i) content[i] = std::min(content[i], e[i]);
  }
  return content;
}

Polynomial Polynomial::shifted_down(const Exponents& shift) const {
  Polynomial r;
  r.nvars_ = nvars_;
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    for (std::size_t i = 0; i < shift.size() && i < f.size(); ++i) f[i] -= shift[i];
    r.terms_.emplace(std::move(f), c);
  }
  return r;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational coef = c;
    if (first) {
      if (coef < 0) {
        os << "-";
        coef = -coef;
      }
    } else {
      os << (coef < 0 ? " - " : " + ");
      if (coef < 0) coef = -coef;
    }
    first = false;
    bool has_var = std::any_of(e.begin(), e.end(), [](std::uint32_t x) { return x > 0; });
    if (coef != 1 || !has_var) os << rational_to_string(coef);
    bool star = coef != 1 || !has_var;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (star) os << "*";
      star = true;
      os << (i < names.size() ? names[i] : "x" + std::to_string(i));
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

// ── Rational functions ──────────────────────────────────────────────────────

RationalFunction::RationalFunction(std::size_t nvars, const Rational& constant)
    : num(nvars, constant), den(nvars, Rational(1)) {}

RationalFunction::RationalFunction(Polynomial n, Polynomial d)
    : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw ModelError("rational function with zero denominator");
  normalize();
}

RationalFunction RationalFunction::variable(std::size_t nvars, std::size_t index) {
  RationalFunction f;
  f.num = Polynomial::variable(nvars, index);
  f.den = Polynomial(nvars, Rational(1));
  return f;
}

Rational RationalFunction::constant_value() const {
  return num.constant_value() / den.constant_value();
}

void RationalFunction::normalize() {
  if (num.is_zero()) {
    den = Polynomial(den.nvars(), Rational(1));
    return;
  }
  if (num == den) {
    num = Polynomial(num.nvars(), Rational(1));
    den = Polynomial(den.nvars(), Rational(1));
    return;
  }
  // pull out a common monomial factor
  Exponents cn = num.monomial_content();
  Exponents cd = den.monomial_content();
  Exponents common(std::min(cn.size(), cd.size()), 0);
  bool any = false;
  for (std::size_t i = 0; i < common.size(); ++i) {
    common[i] = std::min(cn[i], cd[i]);
    any = any || common[i] > 0;
  }
  if (any) {
    num = num.shifted_down(common);
    den = den.shifted_down(common);
  }
  // scale the denominator monic (lex-leading coefficient 1)
  Rational lead = den.leading_coefficient();
  if (lead != 1) {
    Rational inv = Rational(1) / lead;
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  if (num == den) {
    num = Polynomial(num.nvars(), Rational(1));
    den = Polynomial(den.nvars(), Rational(1));
  }
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den == o.den) return RationalFunction(num + o.num, den);
  return RationalFunction(num * o.den + o.num * den, den * o.den);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  if (o.is_zero()) return *this;
  if (den == o.den) return RationalFunction(num - o.num, den);
  return RationalFunction(num * o.den - o.num * den, den * o.den);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  if (is_zero() || o.is_zero()) return RationalFunction(std::max(num.nvars(), o.num.nvars()));
  // cross-cancellation by syntactic equality
  if (num == o.den && o.num == den) return RationalFunction(num.nvars(), Rational(1));
  if (num == o.den) return RationalFunction(o.num, den);
  if (o.num == den) return RationalFunction(num, o.den);
  return RationalFunction(num * o.num, den * o.den);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) throw ModelError("division by the zero rational function");
  return *this * RationalFunction(o.den, o.num);
}

Rational RationalFunction::evaluate(const std::vector<Rational>& values) const {
  Rational d = den.evaluate(values);
  if (d == 0) throw ModelError("rational function denominator vanishes at evaluation point");
  return num.evaluate(values) / d;
}

std::string RationalFunction::to_string(const std::vector<std::string>& names) const {
  if (den.is_constant() && den.constant_value() == 1) return num.to_string(names);
  return "(" + num.to_string(names) + ") / (" + den.to_string(names) + ")";
}

}  // namespace pstctl
