#pragma once

// Direct ASM-sum evaluation of lambda-determinants and of T_n(P, Q | lambda).

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lambdet/asm.hpp"
#include "lambdet/aztec.hpp"
#include "lambdet/matrix.hpp"

namespace lambdet {

struct WeightedAsmTerm {
  Asm B;
  std::optional<Asm> Bp;
  long exponent = 0;  // power of lambda
  Scalar monomial;    // P^B Q^{-B'}, zero entries left out
  long eps_power = 0; // how many zero entries the monomial carries, net
};

enum class RrForm { Min, Max, Corner };

// Sum over B in ASM_n of lambda^P(B) (1+lambda)^N-(B) A^B.
Scalar rr_det(const SquareMatrix& a, const Scalar& lambda);

void for_each_rr_term(const SquareMatrix& p, const SquareMatrix& q, RrForm form,
                      const std::function<void(const WeightedAsmTerm&)>& visit);
std::vector<WeightedAsmTerm> rr_terms(const SquareMatrix& p, const SquareMatrix& q, RrForm form);

Scalar rr_general(const SquareMatrix& p, const SquareMatrix& q, const Scalar& lambda, RrForm form);

// sigma_ij = i+j-1-ij and 2 tau_ij = i+j-1-2ij, 1-based.
long sigma_exponent(int i, int j);
long tau_exponent_doubled(int i, int j);

// P_lambda, Q_lambda carry powers of root, with root^2 = lambda. When lambda
// is the square of a rational the root is substituted and root is empty.
struct GaugeAbsorbed {
  SquareMatrix P_lambda, Q_lambda;
  Scalar prefactor;  // lambda^{n^2/2}, as root^{n^2}
  std::string root;
};

GaugeAbsorbed gauge_absorb(const SquareMatrix& p, const SquareMatrix& q, const Scalar& lambda);

// prefactor * T_n(P_lambda, Q_lambda | 1) with root^2 replaced by lambda.
// Throws Internal if an odd power of the root survives.
Scalar gauge_evaluate(const GaugeAbsorbed& g, const Scalar& lambda);

// Replaces root^(2k) by lambda^k in s; Internal on odd powers.
Scalar eliminate_root(const Scalar& s, const std::string& root, const Scalar& lambda);

// Vertex gauge exponents in units of lambda^(1/2), indexed like g.vertices().
// Throws Internal if two q-faces disagree on a shared vertex.
std::vector<long> gauge_vertex_half_exponents(const AztecGraph& g);

// True if after the face and vertex gauges every vertical edge carries
// lambda^(1/2) and every horizontal edge carries 1.
bool gauge_edges_uniform(const AztecGraph& g);

}  // namespace lambdet
