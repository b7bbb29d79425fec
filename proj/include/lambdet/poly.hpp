#pragma once

// Sparse multivariate polynomials over Z or Q in globally registered
// indeterminates. Terms are kept in strictly decreasing graded-lex order.

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lambdet {

using Integer = mpz_class;
using Rational = mpq_class;
using VarId = std::uint32_t;

// Interns a name; the id order is the variable order of the monomial order.
VarId var_id(std::string_view name);
std::optional<VarId> find_var(std::string_view name);
std::string var_name(VarId id);

struct VarPow {
  VarId var;
  std::uint32_t exp;
  bool operator==(const VarPow&) const = default;
};

class Monomial {
 public:
  using Storage = boost::container::small_vector<VarPow, 3>;

  Monomial() = default;
  static Monomial of(VarId v, std::uint32_t e = 1);

  bool is_one() const { return f_.empty(); }
  std::uint32_t degree() const { return deg_; }
  std::uint32_t exponent(VarId v) const;
  const Storage& factors() const { return f_; }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  // Precondition: divides(o).
  Monomial quotient_of(const Monomial& o) const;
  Monomial gcd(const Monomial& o) const;
  Monomial without(VarId v) const;

  bool operator==(const Monomial& o) const {
    return deg_ == o.deg_ && f_ == o.f_;
  }

  // Graded lex: total degree first, then lex with smaller VarId dominant.
  friend int compare(const Monomial& a, const Monomial& b);
  friend bool operator<(const Monomial& a, const Monomial& b) {
    return compare(a, b) < 0;
  }

 private:
  Storage f_;
  std::uint32_t deg_ = 0;
  friend class MonomialBuilder;
};

// Builds a monomial from unsorted (var, exp) pairs.
class MonomialBuilder {
 public:
  void mul(VarId v, std::uint32_t e);
  Monomial build();

 private:
  Monomial::Storage f_;
};

namespace detail {
inline bool coeff_is_zero(const Integer& c) { return sgn(c) == 0; }
inline bool coeff_is_zero(const Rational& c) { return sgn(c) == 0; }
// Exact coefficient quotient; false if not exact in the coefficient ring.
inline bool coeff_div(const Integer& a, const Integer& b, Integer& q) {
  if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) return false;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return true;
}
inline bool coeff_div(const Rational& a, const Rational& b, Rational& q) {
  q = a / b;
  return true;
}
}  // namespace detail

template <class C>
struct Term {
  Monomial m;
  C c;
};

template <class C>
class BasicPoly {
 public:
  using Coeff = C;
  using TermT = Term<C>;

  BasicPoly() = default;
  BasicPoly(long c) {
    if (c != 0) t_.push_back({Monomial(), C(c)});
  }
  explicit BasicPoly(const C& c) {
    if (!detail::coeff_is_zero(c)) t_.push_back({Monomial(), c});
  }
  static BasicPoly monomial(const Monomial& m, const C& c) {
    BasicPoly p;
    if (!detail::coeff_is_zero(c)) p.t_.push_back({m, c});
    return p;
  }
  static BasicPoly variable(VarId v) { return monomial(Monomial::of(v), C(1)); }
  // Terms in any order, duplicates allowed.
  static BasicPoly from_terms(std::vector<TermT> terms);
  // Precondition: strictly decreasing monomials, nonzero coefficients.
  static BasicPoly from_sorted(std::vector<TermT> terms) {
    BasicPoly p;
    p.t_ = std::move(terms);
    return p;
  }

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
  bool is_one() const;
  C constant_value() const { return t_.empty() ? C(0) : t_[0].c; }
  std::size_t size() const { return t_.size(); }
  const std::vector<TermT>& terms() const { return t_; }
  const TermT& lead() const { return t_.front(); }
  const C& lc() const { return t_.front().c; }

  std::uint32_t degree(VarId v) const;
  std::uint32_t total_degree() const;
  std::vector<VarId> variables() const;
  bool has_var(VarId v) const;
  Monomial monomial_content() const;
  // Coefficient of v^k as a polynomial free of v.
  BasicPoly coeff_of(VarId v, std::uint32_t k) const;

  BasicPoly operator-() const;
  BasicPoly operator+(const BasicPoly& o) const { return combine(o, false); }
  BasicPoly operator-(const BasicPoly& o) const { return combine(o, true); }
  BasicPoly operator*(const BasicPoly& o) const;
  BasicPoly& operator+=(const BasicPoly& o) { return *this = *this + o; }
  BasicPoly& operator-=(const BasicPoly& o) { return *this = *this - o; }
  BasicPoly& operator*=(const BasicPoly& o) { return *this = *this * o; }
  BasicPoly scaled(const C& c) const;
  BasicPoly shifted(const Monomial& m) const;
  BasicPoly mul_term(const Monomial& m, const C& c) const;
  // Precondition: m divides every monomial.
  BasicPoly divided_by_monomial(const Monomial& m) const;
  BasicPoly pow(unsigned e) const;

  // Exact division; nullopt if d does not divide *this in the coefficient ring.
  std::optional<BasicPoly> divide_exact(const BasicPoly& d) const;

  bool operator==(const BasicPoly& o) const;

 private:
  BasicPoly combine(const BasicPoly& o, bool subtract) const;
  std::vector<TermT> t_;
};

using Poly = BasicPoly<Rational>;
using ZPoly = BasicPoly<Integer>;

// Primitive integer polynomial with positive leading coefficient and the
// rational factor that recovers p: p = unit * result.
ZPoly to_primitive_z(const Poly& p, Rational* unit = nullptr);
Poly to_q(const ZPoly& p);

// gcd over Q[x...], normalized with leading coefficient 1.
Poly gcd(const Poly& a, const Poly& b);

namespace detail {
// Exposed for testing the two gcd routes against each other.
std::optional<ZPoly> heuristic_gcd(const ZPoly& f, const ZPoly& g);
Poly prs_gcd(const Poly& f, const Poly& g);
}  // namespace detail

std::string to_string(const Poly& p);

}  // namespace lambdet
