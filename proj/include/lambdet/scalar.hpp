#pragma once

// Exact rational functions in named indeterminates.
//
// Canonical form: numerator and denominator are coprime and the denominator
// is monic under the graded-lex order, so equal values have identical
// representations and operator== is structural.

#include <map>
#include <ostream>
#include <string>
#include <string_view>

#include "lambdet/poly.hpp"

namespace lambdet {

class Scalar {
 public:
  Scalar() = default;
  Scalar(int c) : num_(static_cast<long>(c)), den_(1L) {}
  Scalar(long c) : num_(c), den_(1L) {}
  Scalar(const Rational& c) : num_(c), den_(1L) {}
  Scalar(long p, long q);
  explicit Scalar(const Poly& p) : num_(p), den_(1L) {}
  static Scalar var(std::string_view name);
  // Normalizes num/den; throws DivisionByZero if den is zero.
  static Scalar fraction(const Poly& num, const Poly& den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  Rational constant_value() const { return num_.constant_value(); }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar inverse() const;

  bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }

 private:
  Scalar(Poly num, Poly den, int) : num_(std::move(num)), den_(std::move(den)) {}
  static Scalar make_monic(Poly num, Poly den);

  Poly num_;
  Poly den_{1L};
};

Scalar pow(const Scalar& s, long e);

inline bool is_zero(const Scalar& s) { return s.is_zero(); }

enum class ArithOp { Add, Sub, Mul, Div, Neg, Pow };
// b is ignored for Neg; for Pow it must be an integer constant.
Scalar arith(ArithOp op, const Scalar& a, const Scalar& b);

using Bindings = std::map<std::string, Scalar>;

// Simultaneous substitution. Throws PoleAtSubstitution if the denominator
// vanishes identically afterwards.
Scalar substitute(const Scalar& s, const Bindings& bindings);

// Limit as var -> 0; PoleAtZero if a pole remains.
Scalar limit_at_zero(const Scalar& s, std::string_view var);

// Exponent of var in num minus exponent in den after cancellation, that is
// the order of s at var = 0.
long order_at_zero(const Scalar& s, std::string_view var);

bool depends_on(const Scalar& s, std::string_view var);
std::vector<std::string> variables(const Scalar& s);
// Total degree of the numerator and denominator in var.
unsigned degree_in(const Poly& p, std::string_view var);

std::string to_string(const Scalar& s);
std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Accepts integers, names, + - * / ^ (integer exponents) and parentheses.
Scalar parse_scalar(std::string_view text);

}  // namespace lambdet
