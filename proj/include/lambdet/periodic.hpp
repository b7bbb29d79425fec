#pragma once

// Two-periodic Aztec diamonds with vertical bias: the r_k, a_k, b_k
// sequences, closed forms, periodicity conditions and the elliptic curves
// around them.
//
// The sequence routines are templates over the field type F, instantiated
// for Scalar and ExtElement (the latter for parameters that are roots of a
// polynomial).

#include <optional>
#include <vector>

#include "lambdet/ext.hpp"
#include "lambdet/matrix.hpp"

namespace lambdet {

template <class F>
struct PeriodicParams {
  F a, b, lambda;
  F t() const { return a / b; }
};

template <class F>
struct SequenceTriple {
  std::vector<F> r, a_seq, b_seq;  // index 0..count
};

// r_0 .. r_count, r_0 = 1, r_1 = t. Throws PoleInSequence.
template <class F>
std::vector<F> rk_sequence(const F& lambda, const F& t, int count);

// r_k for any integer k, with r_{-k} = 1 / r_k.
template <class F>
F rk_at(const std::vector<F>& r, int k);

template <class F>
SequenceTriple<F> ab_sequences(const F& a, const F& b, const F& lambda, int count);

// (2/(ab))^floor((n+1)^2/4) (a^2+b^2)^floor(n^2/4) times 1, b or a.
template <class F>
F tn_two_periodic(int n, const F& a, const F& b);

// a^-n prod_{k<n} (1 + lambda r_k^2)^(n-k).
template <class F>
F tn_biased_product(int n, const F& a, const F& b, const F& lambda);

// Q with q_11 = a and a, b alternating along rows and columns.
SquareMatrix alternating_q(int n, const Scalar& a, const Scalar& b);

// Condition on (lambda, t) for the r-sequence to have period p, with
// factors belonging to smaller periods and to t alone removed.
struct PeriodicityPolynomial {
  int p = 0;
  // coeffs[d][k] is the coefficient of lambda^d tau_k, tau_0 = 1.
  std::vector<std::vector<Rational>> coeffs;
  // Same polynomial in lambda and t, multiplied by t^(max k) so it is a
  // polynomial.
  Poly poly;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  template <class F>
  F evaluate(const F& lambda, const F& t) const;
};

// Names of the indeterminates used by periodicity_polynomial.
inline constexpr const char* kLambdaVar = "lambda";
inline constexpr const char* kTVar = "t";

PeriodicityPolynomial periodicity_polynomial(int p);

// Closed forms for p in {3, 6, 8}; NotOnPeriodicityLocus unless
// (lambda, a/b) satisfies periodicity_polynomial(p).
template <class F>
F tn_periodic_closed(int p, int n, const F& a, const F& b, const F& lambda);

template <class F>
struct SomosResult {
  F alpha, beta;
  bool holds_a = false, holds_b = false;
  bool holds() const { return holds_a && holds_b; }
};

// s_k s_{k-4} = alpha s_{k-1} s_{k-3} + beta s_{k-2}^2 for the a and b
// sequences, k = 4..count.
template <class F>
SomosResult<F> somos4_check(const F& a, const F& b, const F& lambda, int count);

struct EllipticPoint {
  Scalar x, y;
  bool operator==(const EllipticPoint&) const = default;
};

// Right side of y^2 = x^2 + 4x(x-lambda)(x-1/lambda)/((lambda+1/lambda+2)(t+1/t)^2).
Scalar e1_rhs(const Scalar& x, const Scalar& lambda, const Scalar& t);

// Translation by (1/lambda, 1/lambda). Throws PoleInFlow.
EllipticPoint sigma_map(const EllipticPoint& p, const Scalar& lambda);

struct EllipticFlow {
  std::vector<EllipticPoint> points;  // P_0 .. P_count
  bool on_curve = false;              // every point satisfies E1
  bool matches_r = false;             // x_k = -r_k^2 and the y_k formula
  bool inversion = false;             // the x_{k-1} identity for k >= 1
};

EllipticFlow elliptic_flow(const Scalar& lambda, const Scalar& t, int count);

// K = (X^2 Y^2 + (X^2 + Y^2)/lambda + 1) / (XY).
Scalar biquadratic_invariant(const Scalar& x, const Scalar& y, const Scalar& lambda);

// j of 4x^3 + b2 x^2 + 2 b4 x + b6.
template <class F>
F j_from_b(const F& b2, const F& b4, const F& b6);

struct E2Standard {
  std::shared_ptr<const QuotientRing> ring;  // class of u modulo its quartic
  ExtElement u, gamma, p, q, b2, b4, b6;
};

// The cubic model of the biquadratic curve, with u carried symbolically.
E2Standard e2_standard_form(const Scalar& lambda, const Scalar& K);

struct JInvariants {
  Scalar j1, j2;
};

// The two closed forms. Throws SingularCurve on a vanishing denominator.
JInvariants j_invariants(const Scalar& lambda, const Scalar& K);

// j of E1 from its cubic model, b2 = lambda K^2 - 4 lambda - 4/lambda,
// b4 = 2, b6 = 0.
Scalar j1_from_model(const Scalar& lambda, const Scalar& K);
// j of the cubic model of E2; Internal if the result is not in the base field.
Scalar j2_from_model(const Scalar& lambda, const Scalar& K);

}  // namespace lambdet
