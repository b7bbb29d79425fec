#include "doctest.h"
#include "lambdet/aztec.hpp"
#include "lambdet/condense.hpp"
#include "lambdet/error.hpp"
#include "lambdet/rr.hpp"
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

constexpr RrForm kForms[] = {RrForm::Min, RrForm::Max, RrForm::Corner};

}  // namespace

TEST_CASE("rr_det small cases") {
  Scalar l = S("lambda");
  CHECK(rr_det(symbolic_matrix("a", 3), l) == lambda_det(symbolic_matrix("a", 3), l));
  CHECK(rr_det(symbolic_matrix("a", 3), l) ==
        S("a_1_1*a_2_2*a_3_3 + lambda*a_1_2*a_2_1*a_3_3 + lambda*a_1_1*a_2_3*a_3_2 + lambda^2*a_1_2*a_2_3*a_3_1"
          " + lambda^2*a_1_3*a_2_1*a_3_2 + lambda^3*a_1_3*a_2_2*a_3_1 + lambda*(1+lambda)*a_1_2*a_2_1*a_2_3*a_3_2/a_2_2"));
  CHECK(rr_det(ones(3), l) == pow(S("1+lambda"), 3));
  CHECK(rr_det(ones(5), l) == pow(S("1+lambda"), 10));
}

TEST_CASE("rr_det agrees with condensation and the matching sum") {
  std::mt19937 rng(101);
  for (int n = 1; n <= 4; ++n)
    for (int trial = 0; trial < 3; ++trial) {
      SquareMatrix p = random_matrix(rng, n + 1);
      Scalar lam = random_rational(rng);
      Scalar r = rr_det(p, lam);
      CHECK(r == lambda_det(p, lam));
      CHECK(r == partition_brute({p, ones(n), Homogeneous{lam}}));
    }
  SquareMatrix a = random_matrix(rng, 4);
  CHECK(rr_det(a, S("lambda")) == lambda_det(a, S("lambda")));
}

TEST_CASE("rr_det with zero entries") {
  std::mt19937 rng(5);
  SquareMatrix a = random_matrix(rng, 4);
  a(0, 0) = Scalar(0);
  a(0, 3) = Scalar(0);
  a(3, 1) = Scalar(0);
  CHECK(rr_det(a, Scalar(3)) == lambda_det(a, Scalar(3)));
  CHECK(rr_det(a, S("lambda")) == lambda_det(a, S("lambda")));
  SquareMatrix c = ones(3);
  c(1, 1) = Scalar(0);
  CHECK_THROWS_AS(rr_det(c, S("lambda")), Error);
  try {
    rr_det(c, S("lambda"));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UndefinedDeterminant);
  }
  // The pole cancels at lambda = -1.
  CHECK(rr_det(c, Scalar(-1)) == lambda_det(c, Scalar(-1)));
}

TEST_CASE("rr_det size bound") {
  CHECK_THROWS_AS(rr_det(ones(asm_stream_bound() + 1), Scalar(1)), Error);
}

TEST_CASE("three forms give T2") {
  SquareMatrix p = symbolic_matrix("p", 3), q = symbolic_matrix("q", 2);
  for (RrForm f : kForms) CHECK(rr_general(p, q, S("lambda"), f) == S(kT2));
  SquareMatrix p1 = symbolic_matrix("p", 2), q1 = symbolic_matrix("q", 1);
  for (RrForm f : kForms) CHECK(rr_general(p1, q1, S("lambda"), f) == S("(p_1_1*p_2_2 + lambda*p_1_2*p_2_1)/q_1_1"));
}

TEST_CASE("forms agree with cond_pq on random data") {
  std::mt19937 rng(202);
  for (int n = 1; n <= 4; ++n)
    for (int trial = 0; trial < 2; ++trial) {
      SquareMatrix p = random_matrix(rng, n + 1), q = random_matrix(rng, n);
      Scalar lam = random_rational(rng);
      Scalar expect = cond_pq(p, q, lam);
      for (RrForm f : kForms) CHECK(rr_general(p, q, lam, f) == expect);
    }
  SquareMatrix p = random_matrix(rng, 4), q = random_matrix(rng, 3);
  Scalar expect = cond_pq(p, q, S("lambda"));
  for (RrForm f : kForms) CHECK(rr_general(p, q, S("lambda"), f) == expect);
}

TEST_CASE("special weightings") {
  std::mt19937 rng(303);
  Scalar l = S("lambda");
  for (int n = 1; n <= 3; ++n) {
    SquareMatrix p = random_matrix(rng, n + 1), q = random_matrix(rng, n);
    for (RrForm f : kForms) {
      CHECK(rr_general(p, ones(n), l, f) == rr_det(p, l));
      CHECK(rr_general(ones(n + 1), q, l, f) == pow(S("1+lambda"), n) * lambda_det(entrywise_inverse(q), l));
    }
  }
}

TEST_CASE("per-ASM inner sums") {
  Scalar l = S("lambda");
  for (int n = 2; n <= 4; ++n) {
    for (const Asm& b : enumerate_asm(n)) {
      Scalar s;
      for (const auto& c : compatible_set(b, Direction::Smaller)) s += pow(l, c.delta);
      CHECK(s == pow(S("1+lambda"), b.stats().n_minus));
    }
    for (const Asm& bp : enumerate_asm(n)) {
      Scalar s;
      for (const auto& c : compatible_set(bp, Direction::Larger)) s += pow(l, c.delta);
      CHECK(s == pow(S("1+lambda"), bp.stats().n_plus));
    }
  }
}

TEST_CASE("corner exponents recombine term by term") {
  for (int n = 1; n <= 3; ++n) {
    auto terms = rr_terms(symbolic_matrix("p", n + 1), symbolic_matrix("q", n), RrForm::Corner);
    long pairs = 0;
    for (const auto& t : terms) {
      long doubled = static_cast<long>(n) * n;
      for (int i = 1; i <= n + 1; ++i)
        for (int j = 1; j <= n + 1; ++j) doubled += 2 * sigma_exponent(i, j) * t.B.at(i, j);
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) doubled -= tau_exponent_doubled(i, j) * t.Bp->at(i, j);
      CHECK(doubled == 2 * t.exponent);
      ++pairs;
    }
    CHECK(pairs == (1L << (n * (n + 1) / 2)) * 1L);
  }
}

TEST_CASE("min and corner exponents pair up") {
  auto p = symbolic_matrix("p", 4);
  auto q = symbolic_matrix("q", 3);
  auto a = rr_terms(p, q, RrForm::Min), c = rr_terms(p, q, RrForm::Corner);
  REQUIRE(a.size() == c.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].B == c[k].B);
    CHECK(*a[k].Bp == *c[k].Bp);
    CHECK(a[k].exponent >= 0);
  }
}

TEST_CASE("gauge edges are uniform") {
  for (int n = 1; n <= 6; ++n) {
    AztecGraph g(n);
    CHECK(gauge_edges_uniform(g));
    long total = 0;
    for (long e : gauge_vertex_half_exponents(g)) total += e;
    CHECK(total == -static_cast<long>(n) * n * n * (n + 1));
    long faces = 0;
    for (int i = 1; i <= n + 1; ++i)
      for (int j = 1; j <= n + 1; ++j) faces += 2 * sigma_exponent(i, j);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) faces += tau_exponent_doubled(i, j);
    CHECK(faces == -static_cast<long>(n) * n * (n * n + n + 1));
  }
}

TEST_CASE("gauge absorption") {
  Scalar l = S("lambda");
  SquareMatrix p1 = symbolic_matrix("p", 2), q1 = symbolic_matrix("q", 1);
  auto g1 = gauge_absorb(p1, q1, l);
  CHECK(!g1.root.empty());
  CHECK(gauge_evaluate(g1, l) == S("(p_1_1*p_2_2 + lambda*p_1_2*p_2_1)/q_1_1"));
  SquareMatrix p = symbolic_matrix("p", 3), q = symbolic_matrix("q", 2);
  CHECK(gauge_evaluate(gauge_absorb(p, q, l), l) == S(kT2));

  auto g = gauge_absorb(p, q, Scalar(1));
  CHECK(g.root.empty());
  CHECK(g.P_lambda == p);
  CHECK(g.Q_lambda == q);
  CHECK(g.prefactor == Scalar(1));

  std::mt19937 rng(404);
  for (int n = 1; n <= 4; ++n) {
    SquareMatrix pr = random_matrix(rng, n + 1), qr = random_matrix(rng, n);
    CHECK(gauge_evaluate(gauge_absorb(pr, qr, Scalar(9, 4)), Scalar(9, 4)) == cond_pq(pr, qr, Scalar(9, 4)));
    Scalar lam = random_rational(rng);
    CHECK(gauge_evaluate(gauge_absorb(pr, qr, lam), lam) == cond_pq(pr, qr, lam));
  }
}

TEST_CASE("root elimination rejects odd powers") {
  CHECK(eliminate_root(S("r^4 + r^2*x"), "r", S("t")) == S("t^2 + t*x"));
  CHECK_THROWS_AS(eliminate_root(S("r^3"), "r", S("t")), Error);
}
