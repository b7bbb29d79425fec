#pragma once

// Arithmetic in K[x]/(f) for a monic f over the Scalar field K. Used to
// carry an algebraic number exactly through its defining polynomial.

#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "lambdet/scalar.hpp"

namespace lambdet {

// Univariate polynomial over Scalars, lowest degree first, no trailing zeros.
using ScalarPoly = std::vector<Scalar>;

struct QuotientRing {
  ScalarPoly modulus;  // monic, degree >= 1
  std::string name;    // printing name of the class of x
};

// A null ring means a plain Scalar that adopts the ring of whatever it is
// combined with.
class ExtElement {
 public:
  ExtElement() : c_{Scalar()} {}
  ExtElement(int v) : c_{Scalar(v)} {}
  ExtElement(const Scalar& v) : c_{v} {}
  ExtElement(std::shared_ptr<const QuotientRing> ring, ScalarPoly coeffs);

  static ExtElement generator(std::shared_ptr<const QuotientRing> ring);

  const std::shared_ptr<const QuotientRing>& ring() const { return ring_; }
  // Reduced coefficients, lowest first; size is deg f (or 1 without a ring).
  const ScalarPoly& coeffs() const { return c_; }

  bool is_zero() const;
  bool in_base() const;
  // Throws Internal unless in_base().
  Scalar base_value() const;

  ExtElement operator-() const;
  ExtElement operator+(const ExtElement& o) const;
  ExtElement operator-(const ExtElement& o) const;
  ExtElement operator*(const ExtElement& o) const;
  // Throws DivisionByZero for zero, NotInvertible if o shares a factor with f.
  ExtElement operator/(const ExtElement& o) const;
  ExtElement& operator+=(const ExtElement& o) { return *this = *this + o; }
  ExtElement& operator-=(const ExtElement& o) { return *this = *this - o; }
  ExtElement& operator*=(const ExtElement& o) { return *this = *this * o; }
  ExtElement& operator/=(const ExtElement& o) { return *this = *this / o; }
  ExtElement inverse() const;

  bool operator==(const ExtElement& o) const;

 private:
  std::shared_ptr<const QuotientRing> ring_;
  ScalarPoly c_;
};

inline bool is_zero(const ExtElement& e) { return e.is_zero(); }
ExtElement pow(const ExtElement& e, long k);
std::string to_string(const ExtElement& e);
std::ostream& operator<<(std::ostream& os, const ExtElement& e);

// Helpers on ScalarPoly.
ScalarPoly poly_trim(ScalarPoly p);
ScalarPoly poly_mul(const ScalarPoly& a, const ScalarPoly& b);
// Remainder mod a monic or general nonzero divisor.
ScalarPoly poly_rem(ScalarPoly a, const ScalarPoly& d);
// Coefficients of p as a polynomial in var, lowest first.
ScalarPoly as_univariate(const Scalar& p, const std::string& var);

std::shared_ptr<const QuotientRing> make_ring(ScalarPoly monic, std::string name);

}  // namespace lambdet
