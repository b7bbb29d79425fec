#include "doctest.h"
#include "lambdet/condense.hpp"
#include "lambdet/error.hpp"
#include "lambdet/shuffle.hpp"
#include "support.hpp"

using namespace lambdet;
using testing_support::random_matrix;
using testing_support::random_rational;
using testing_support::S;

namespace {

const char* kT2 =
    "p_1_1*p_2_2*p_3_3/(q_1_1*q_2_2) + lambda*p_1_2*p_2_1*p_3_3/(q_1_1*q_2_2)"
    " + lambda*p_1_1*p_2_3*p_3_2/(q_1_1*q_2_2) + lambda^2*p_1_2*p_2_3*p_3_1/(q_1_2*q_2_1)"
    " + lambda^2*p_1_3*p_2_1*p_3_2/(q_1_2*q_2_1) + lambda^3*p_1_3*p_2_2*p_3_1/(q_1_2*q_2_1)"
    " + lambda*p_1_2*p_2_1*p_2_3*p_3_2/(p_2_2*q_1_2*q_2_1)"
    " + lambda^2*p_1_2*p_2_1*p_2_3*p_3_2/(p_2_2*q_1_1*q_2_2)";

// Grid graph with random edge weights, vertices numbered row by row.
WeightedGraph grid(std::mt19937& rng, int rows, int cols) {
  WeightedGraph g;
  g.vertex_count = rows * cols;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      int v = i * cols + j;
      if (j + 1 < cols) g.edges.push_back({v, v + 1, random_rational(rng)});
      if (i + 1 < rows) g.edges.push_back({v, v + cols, random_rational(rng)});
    }
  return g;
}

}  // namespace

TEST_CASE("urban renewal on a cell") {
  Scalar l = S("lambda");
  // Vertical edges carry sqrt(lambda); encode alpha gamma = lambda.
  UrbanCell c{S("q_1_1"), S("p_1_2"), S("p_1_1"), S("p_2_1"), S("p_2_2"), l, Scalar(1), Scalar(1), Scalar(1)};
  UrbanCell r = urban_renewal(c);
  CHECK(r.x1 == S("(p_1_1*p_2_2 + lambda*p_1_2*p_2_1)/q_1_1"));
  CHECK(r.alpha == Scalar(1));
  CHECK(r.gamma == l);
  CHECK(r.x2 == c.x2);

  UrbanCell ones{1, 1, 1, 1, 1, 1, 1, 1, 1};
  CHECK(urban_renewal(ones).x1 == Scalar(2));

  UrbanCell generic{S("x1"), S("x2"), S("x3"), S("x4"), S("x5"), S("a"), S("b"), S("g"), S("d")};
  UrbanCell gr = urban_renewal(generic);
  CHECK(gr.x1 == S("(a*g*x2*x4 + b*d*x3*x5)/x1"));
  CHECK(gr.alpha == S("g"));
  CHECK(gr.beta == S("d"));
  CHECK(urban_renewal(gr).alpha == S("a"));

  ones.x1 = Scalar(0);
  CHECK_THROWS_AS(urban_renewal(ones), Error);
  try {
    urban_renewal(ones);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroFaceWeight);
  }
}

TEST_CASE("shuffle step preserves T_n") {
  Scalar l = S("lambda");
  SquareMatrix p = symbolic_matrix("p", 3), q = symbolic_matrix("q", 2);
  auto [pp, qq] = shuffle_step(p, q, l);
  CHECK(pp.rows() == 2);
  CHECK(qq.rows() == 1);
  CHECK(qq(0, 0) == S("p_2_2"));
  CHECK(pp(0, 1) == S("(p_1_2*p_2_3 + lambda*p_1_3*p_2_2)/q_1_2"));
  CHECK(cond_pq(pp, qq, l) == S(kT2));

  std::mt19937 rng(7);
  for (int n = 1; n <= 4; ++n)
    for (int trial = 0; trial < 3; ++trial) {
      SquareMatrix pr = random_matrix(rng, n + 1), qr = random_matrix(rng, n);
      Scalar lam = random_rational(rng);
      Scalar expect = cond_pq(pr, qr, lam);
      auto [p1, q1] = shuffle_step(pr, qr, lam);
      if (n > 1) CHECK(cond_pq(p1, q1, lam) == expect);
      auto [pn, qn] = shuffle(pr, qr, lam, n);
      CHECK(pn.rows() == 1);
      CHECK(qn.rows() == 0);
      CHECK(pn(0, 0) == expect);
    }
}

TEST_CASE("shuffle with P = 1") {
  Scalar l = S("lambda");
  std::mt19937 rng(8);
  for (int n = 2; n <= 4; ++n) {
    SquareMatrix q = random_matrix(rng, n);
    auto [pp, qq] = shuffle_step(ones(n + 1), q, l);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(pp(i, j) == S("1+lambda") / q(i, j));
    CHECK(qq == ones(n - 1));
    CHECK(cond_pq(pp, qq, l) == pow(S("1+lambda"), n) * lambda_det(entrywise_inverse(q), l));
  }
}

TEST_CASE("shuffle rejects zero q") {
  SquareMatrix q = ones(2);
  q(1, 0) = Scalar(0);
  CHECK_THROWS_AS(shuffle_step(ones(3), q, Scalar(1)), Error);
  CHECK_THROWS_AS(shuffle(ones(3), ones(2), Scalar(1), 3), Error);
}

TEST_CASE("substitution S") {
  Scalar l = S("lambda");
  CHECK(substitution_S(0, l) == S("p_1_1"));
  CHECK(substitution_S(1, l) == S("(p_1_1*p_2_2 + lambda*p_1_2*p_2_1)/q_1_1"));
  CHECK(substitution_S(2, l) == S(kT2));
  CHECK(substitution_S(2, l) == cond_pq(symbolic_matrix("p", 3), symbolic_matrix("q", 2), l));

  Scalar t3 = substitution_S(3, l);
  std::mt19937 rng(9);
  for (int trial = 0; trial < 3; ++trial) {
    SquareMatrix p = random_matrix(rng, 4), q = random_matrix(rng, 3);
    Scalar lam = random_rational(rng);
    Bindings b{{"lambda", lam}};
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; j <= 4; ++j) {
        b["p_" + std::to_string(i) + "_" + std::to_string(j)] = p(i - 1, j - 1);
        if (i <= 3 && j <= 3) b["q_" + std::to_string(i) + "_" + std::to_string(j)] = q(i - 1, j - 1);
      }
    CHECK(substitute(t3, b) == cond_pq(p, q, lam));
  }
}

TEST_CASE("vertex splitting keeps the matching sum") {
  std::mt19937 rng(10);
  WeightedGraph g = grid(rng, 3, 4);
  Scalar z = matching_sum(g);
  CHECK(!z.is_zero());
  // Vertex 5 is interior with four edges; move two of them.
  std::vector<int> at5;
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
    if (g.edges[e].a == 5 || g.edges[e].b == 5) at5.push_back(e);
  REQUIRE(at5.size() == 4);
  CHECK(matching_sum(split_vertex(g, 5, {at5[0], at5[1]})) == z);
  CHECK(matching_sum(split_vertex(g, 5, {at5[1], at5[3]})) == z);
  CHECK(matching_sum(split_vertex(g, 5, {at5[2]})) == z);
  // Merging back: splitting twice is still fine.
  WeightedGraph twice = split_vertex(split_vertex(g, 6, {}), 0, {0});
  CHECK(matching_sum(twice) == z);
  CHECK_THROWS_AS(split_vertex(g, 0, {static_cast<int>(g.edges.size()) - 1}), Error);
}

TEST_CASE("urban renewal on graphs") {
  std::mt19937 rng(12);
  WeightedGraph sq;
  sq.vertex_count = 4;
  sq.edges = {{0, 1, S("a")}, {1, 2, S("b")}, {2, 3, S("c")}, {3, 0, S("d")}};
  Scalar d;
  WeightedGraph r = urban_renewal_graph(sq, {0, 1, 2, 3}, &d);
  CHECK(d == S("a*c + b*d"));
  CHECK(d * matching_sum(r) == matching_sum(sq));

  WeightedGraph g = grid(rng, 4, 4);
  Scalar z = matching_sum(g);
  for (std::array<int, 4> cyc : {std::array<int, 4>{0, 1, 5, 4}, {5, 6, 10, 9}, {10, 11, 15, 14}}) {
    WeightedGraph h = urban_renewal_graph(g, cyc, &d);
    CHECK(d * matching_sum(h) == z);
  }
  CHECK_THROWS_AS(urban_renewal_graph(g, {0, 1, 2, 3}, &d), Error);
}
