#pragma once

// Counting problems reduced to lambda-determinants: squares and 2 x 2n
// strips cut out of an Aztec diamond, NW-boundary refinement, the holey
// diamond and the central-row generating functions G_n.

#include <complex>
#include <vector>

#include "lambdet/matrix.hpp"

namespace lambdet {

// Fractions of matchings with 0, 1 or 2 dimers on the central face.
struct FractionTriple {
  Rational p0, p1, p2;
  bool operator==(const FractionTriple&) const = default;
};

// p0 + p1 + p2 == 1 and 4 p2 == (p1 + 2 p2)^2.
bool satisfies_invariants(const FractionTriple& f);

// All-ones of order 2n with n(n-1)/2 zeros in each corner.
SquareMatrix square_grid_matrix(int n);
// Matchings of the 2n x 2n grid with sqrt(lambda) on vertical edges.
Scalar square_grid_partition(int n, const Scalar& lambda);

// Ones on the three main diagonals, order n+1.
SquareMatrix tridiagonal_ones(int n);
// det_lambda of tridiagonal_ones(n), that is F_{2n+1}(sqrt(lambda)).
Scalar fibonacci_det(int n, const Scalar& lambda);

// All-ones of order n+1 whose first row is the unit vector e_{l+1}.
SquareMatrix nw_matrix(int n, int l);
// Matchings with exactly l vertical dimers on the NW boundary. Throws
// Internal if the determinant disagrees with C(n,l) lambda^l (1+lambda)^{n(n-1)/2}.
Scalar refined_nw(int n, int l, const Scalar& lambda);
Scalar refined_nw_closed(int n, int l, const Scalar& lambda);

// T_n[t] with weight t on the central face and 1 elsewhere. The default
// route is det_1 P_t for n even and 2^n det_1 Q_{1/t} for n odd; the other
// route runs cond_pq on the face weighting directly.
Scalar holey_partition(int n, const Scalar& t);
Scalar holey_partition_direct(int n, const Scalar& t);
// Central-entry-t all-ones matrix of order m (m odd).
SquareMatrix centered_matrix(int m, const Scalar& t);

// Reads (p0, p1, p2) off t T_n[t] / T_n. Throws Internal on disagreement
// with holey_closed_form.
FractionTriple holey_fractions(int n);
FractionTriple holey_closed_form(int n);
// alpha_n with 1 - alpha_n = 2 sqrt(p2(n)).
Rational holey_alpha(int n);

// (-1)^{n/2} sum_k (-1/4)^k C(n/2+k, 2k) C(2k, k)^2, n even.
Rational p0_minus_p2_sum(int n);

// 2-enumeration queries.
// T_{n,l}(1).
Integer two_enum_refined(int n, int l);
// 2^{n(n+1)/2} p_i(n) for n even, 2^{n(n-1)/2} p_i(n) for n odd.
Integer two_enum_holey(int n, int i);

int gn_bound();

// Coefficients of G_n, lowest degree first.
struct GnPolynomial {
  int n;
  std::vector<Integer> coeffs;
  // True if the ASM form was evaluated and agreed.
  bool asm_checked = false;
  Scalar as_scalar(const Scalar& x) const;
  Integer at_one() const;
};

// Via lambda_mu_det on the all-ones matrix with lambda_0 = x. The ASM form
// is also evaluated (and must agree) when ASM_{n+1} is within the list bound.
GnPolynomial gn_polynomial(int n);
// Sum over ASM_{n+1} of x^{P_0} ((1+x)/2)^{N_-^0} 2^{N_-}.
std::vector<Integer> gn_asm_form(int n);
// P_0(B): diagonal zeros whose first nonzero entries to the right and below are both 1.
int diagonal_p(const IntMatrix& b);
int diagonal_minus(const IntMatrix& b);

// Numerical root report for G_n. Nothing here is asserted.
struct GnRootReport {
  std::vector<double> real_roots;  // sorted ascending
  bool all_real_negative = false;
  bool interlaces_next = false;   // with G_{n+1}; false if not computed
  double largest_ratio = 0;       // largest |root| over G'_{n-1}(0), 0 for n = 1
};
GnRootReport gn_root_report(const GnPolynomial& g, const GnPolynomial* next, const GnPolynomial* prev);

}  // namespace lambdet
