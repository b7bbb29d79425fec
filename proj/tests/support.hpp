#pragma once

#include <random>

#include "lambdet/matrix.hpp"

namespace testing_support {

using lambdet::Scalar;

inline Scalar S(const char* text) { return lambdet::parse_scalar(text); }

// Nonzero rational with small numerator and denominator.
inline Scalar random_rational(std::mt19937& rng, int range = 9) {
  std::uniform_int_distribution<int> num(1, range), den(1, range), sign(0, 1);
  long p = num(rng) * (sign(rng) ? 1 : -1);
  return Scalar(p, den(rng));
}

inline lambdet::SquareMatrix random_matrix(std::mt19937& rng, Eigen::Index n, int range = 9) {
  lambdet::SquareMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = random_rational(rng, range);
  return m;
}

// Random polynomial in the given variables.
inline lambdet::Poly random_poly(std::mt19937& rng, const std::vector<std::string>& vars, int terms,
                                 int maxdeg, int range = 20) {
  std::uniform_int_distribution<int> deg(0, maxdeg), coef(-range, range);
  lambdet::Poly p;
  for (int k = 0; k < terms; ++k) {
    lambdet::MonomialBuilder mb;
    for (const auto& v : vars) mb.mul(lambdet::var_id(v), deg(rng));
    p += lambdet::Poly::monomial(mb.build(), lambdet::Rational(coef(rng)));
  }
  return p;
}

}  // namespace testing_support
