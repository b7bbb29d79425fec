#pragma once

// Dense matrices of exact scalars, as plain Eigen types.
//
// Storage is 0-based as usual in Eigen; the free functions in this library
// that take an (i, j) pair in the mathematical sense document it as 1-based.

#include <Eigen/Core>

#include "json.hpp"

#include "lambdet/scalar.hpp"

namespace Eigen {

template <>
struct NumTraits<lambdet::Scalar> : GenericNumTraits<lambdet::Scalar> {
  using Real = lambdet::Scalar;
  using NonInteger = lambdet::Scalar;
  using Nested = lambdet::Scalar;
  using Literal = lambdet::Scalar;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 100,
    MulCost = 100
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace lambdet {

template <class T>
using MatrixX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
using SquareMatrix = MatrixX<Scalar>;
using IntMatrix = MatrixX<int>;

inline SquareMatrix ones(Eigen::Index n) { return SquareMatrix::Constant(n, n, Scalar(1)); }

// Matrix of indeterminates name_i_j, 1-based.
SquareMatrix symbolic_matrix(const std::string& name, Eigen::Index n);

// Entrywise inverse; throws DivisionByZero on a zero entry.
SquareMatrix entrywise_inverse(const SquareMatrix& a);

SquareMatrix substitute(const SquareMatrix& a, const Bindings& b);

// {"rows": [[...]]}; entries are expression strings or JSON integers.
// Emits strings. Throws ParseError or SizeMismatch (ragged or non-square).
nlohmann::json to_json(const SquareMatrix& a);
SquareMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace lambdet
