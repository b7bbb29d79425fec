#pragma once

// Local rewrites of weighted graphs and the shuffling step on (P, Q).

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "lambdet/matrix.hpp"

namespace lambdet {

// A 4-cycle drawn as a diamond with face x1. Outer faces: x2 lower left,
// x3 upper left, x4 upper right, x5 lower right. Edges: gamma upper left,
// beta upper right, alpha lower right, delta lower left.
struct UrbanCell {
  Scalar x1, x2, x3, x4, x5;
  Scalar alpha, beta, gamma, delta;
  bool operator==(const UrbanCell&) const = default;
};

// x1' = (alpha gamma x2 x4 + beta delta x3 x5) / x1, opposite edges swapped.
UrbanCell urban_renewal(const UrbanCell& c);

// P' = (q'_ij) of size n, Q' = (p_{i+1,j+1}) of size n-1.
std::pair<SquareMatrix, SquareMatrix> shuffle_step(const SquareMatrix& p, const SquareMatrix& q, const Scalar& lambda);

// Applies shuffle_step `steps` times; steps = n leaves (T_n, empty).
std::pair<SquareMatrix, SquareMatrix> shuffle(SquareMatrix p, SquareMatrix q, const Scalar& lambda, int steps);

// S^k(p_1_1) in the indeterminates p_i_j, q_i_j (names from the stems).
Scalar substitution_S(int k, const Scalar& lambda, const std::string& p_stem = "p", const std::string& q_stem = "q");

// Edge-weighted graphs for checking the local moves directly.
struct WeightedEdge {
  int a, b;
  Scalar w;
};

struct WeightedGraph {
  int vertex_count = 0;
  std::vector<WeightedEdge> edges;
};

// Brute-force sum over perfect matchings of the product of edge weights.
Scalar matching_sum(const WeightedGraph& g);

// Replaces v by the chain v - u - w with unit edges; edges listed in
// `moved` (indices into g.edges) move from v to w.
WeightedGraph split_vertex(const WeightedGraph& g, int v, const std::vector<int>& moved);

// Urban renewal on the 4-cycle c0 c1 c2 c3 with edge weights a,b,c,d on
// c0c1, c1c2, c2c3, c3c0. The cycle is replaced by an inner cycle with
// weights c/D, d/D, a/D, b/D joined to the old vertices by unit edges,
// D = ac + bd, and matching_sum(g) = D * matching_sum(result).
WeightedGraph urban_renewal_graph(const WeightedGraph& g, std::array<int, 4> cycle, Scalar* factor);

}  // namespace lambdet
