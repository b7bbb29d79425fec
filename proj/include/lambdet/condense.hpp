#pragma once

// Dodgson-style condensation. A run is seeded by A0 (size m+1) and A1
// (size m) and steps
//
//   A_k(i,j) = [mu * A_{k-1}(i,j) A_{k-1}(i+1,j+1)
//               + lambda * A_{k-1}(i+1,j) A_{k-1}(i,j+1)] / A_{k-2}(i+1,j+1)
//
// until A_m is 1x1.

#include <optional>
#include <string>
#include <vector>

#include "lambdet/matrix.hpp"

namespace lambdet {

// Returns nullopt when a divisor vanishes. weight(k, i, j) takes 0-based
// i, j of the entry of A_k being produced and returns a pair of pointers
// (mu, lambda); a null mu means 1.
template <class T, class WeightFn>
std::optional<T> condense_run(const MatrixX<T>& a0, const MatrixX<T>& a1, WeightFn&& weight,
                              std::vector<MatrixX<T>>* trace = nullptr) {
  using Eigen::Index;
  const Index m = a1.rows();
  if (trace) {
    trace->clear();
    trace->push_back(a0);
    trace->push_back(a1);
  }
  if (m == 0) return T(1);
  MatrixX<T> prev = a0, cur = a1;
  for (Index k = 2; k <= m; ++k) {
    const Index s = m + 1 - k;
    MatrixX<T> next(s, s);
    for (Index i = 0; i < s; ++i)
      for (Index j = 0; j < s; ++j) {
        const T& d = prev(i + 1, j + 1);
        if (is_zero(d)) return std::nullopt;
        auto [mu, lambda] = weight(k, i, j);
        T diag = cur(i, j) * cur(i + 1, j + 1);
        if (mu) diag *= *mu;
        T anti = cur(i + 1, j) * cur(i, j + 1);
        anti *= *lambda;
        next(i, j) = (diag + anti) / d;
      }
    prev = std::move(cur);
    cur = std::move(next);
    if (trace) trace->push_back(cur);
  }
  return cur(0, 0);
}

struct CondenseOptions {
  // Use one regularizer per zero entry instead of a shared one.
  bool per_entry_regularization = false;
  std::vector<SquareMatrix>* trace = nullptr;
};

// Cond_lambda(A0, A1) with the zero-divisor regularization policy.
Scalar condense(const SquareMatrix& a0, const SquareMatrix& a1, const Scalar& lambda, const CondenseOptions& opt = {});

Scalar lambda_det(const SquareMatrix& a, const Scalar& lambda, const CondenseOptions& opt = {});

// All-ones border around Q, of size Q.rows() + 2.
SquareMatrix border_completion(const SquareMatrix& q);

// T_n(P, Q | lambda) with P of size n+1 and Q of size n.
Scalar cond_pq(const SquareMatrix& p, const SquareMatrix& q, const Scalar& lambda, const CondenseOptions& opt = {});

// Inhomogeneous condensation; vectors of length 2n-1 for A of size n+1,
// indexed by label + n - 1. With q given this is T_n(P, Q | lambda, mu).
Scalar lambda_mu_det(const SquareMatrix& a, const std::vector<Scalar>& lambdas, const std::vector<Scalar>& mus,
                     const std::optional<SquareMatrix>& q = std::nullopt, const CondenseOptions& opt = {});

// A name not occurring in any of the given scalars.
std::string fresh_variable(const std::string& stem, const std::vector<const SquareMatrix*>& mats,
                           const std::vector<Scalar>& extra = {});

}  // namespace lambdet
