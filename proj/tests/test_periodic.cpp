#include <map>

#include "doctest.h"
#include "lambdet/aztec.hpp"
#include "lambdet/condense.hpp"
#include "lambdet/error.hpp"
#include "lambdet/periodic.hpp"
#include "support.hpp"

using namespace lambdet;
using testing_support::random_rational;
using testing_support::S;

namespace {

using TauTable = std::map<int, std::vector<long>>;

// The periodicity conditions as listed in the literature, lambda degree to
// coefficients of tau_0, tau_1, ...
const std::map<int, TauTable>& listed() {
  static const std::map<int, TauTable> t = {
      {3, {{1, {1}}, {0, {-1, -1}}}},
      {4, {{1, {1}}, {0, {-1}}}},
      {5, {{3, {1}}, {2, {-3, -2, 0, -1}}, {1, {1, -2, -1}}, {0, {1, 1, 1}}}},
      {6, {{1, {1, 1}}, {0, {-1}}}},
      {7,
       {{6, {1}},
        {5, {-6, -3, 0, -2, 0, -1}},
        {4, {7, -7, -5, -4, -1, 1}},
        {3, {0, 0, 12, 5, 2, -1}},
        {2, {17, 12, 5, -1, 5, 1, 1}},
        {1, {2, -1, 4, 3}},
        {0, {-1, -1, -1, -1}}}},
      {8, {{2, {1}}, {1, {-4, 0, -1}}, {0, {1}}}},
      {9,
       {{9, {1}},
        {8, {-9, -3, 0, -3, 0, -2, 0, -1}},
        {7, {10, -28, -20, -16, -10, -6, -4, 2, -1}},
        {6, {-74, -50, -4, -35, -14, -5, -4, -9, 1, -1}},
        {5, {16, -40, -56, -16, 8, -38, 8, -2, -1}},
        {4, {-16, -5, 56, -44, -8, 18, -8, 1, 1}},
        {3, {74, -22, 4, 42, 14, -4, 4, 0, -1}},
        {2, {-10, 28, 20, -17, 10, 1, 4, 0, 1}},
        {1, {9, -6, 0, 6}},
        {0, {-1, 0, 0, -1}}}},
      {10, {{3, {1, 1, 1}}, {2, {1, -2, -1}}, {1, {-3, -2, 0, -1}}, {0, {1}}}},
      {12, {{4, {1}}, {3, {-6, 0, -2, 0, -1}}, {2, {-8, 0, -8, 0, -1}}, {1, {-6, 0, -2, 0, -1}}, {0, {1}}}},
  };
  return t;
}

std::vector<Rational> trimmed(std::vector<Rational> v) {
  while (!v.empty() && sgn(v.back()) == 0) v.pop_back();
  return v;
}

std::vector<Rational> as_rationals(const std::vector<long>& v) {
  std::vector<Rational> r;
  for (long x : v) r.push_back(Rational(x));
  return trimmed(r);
}

std::vector<Rational> scaled(std::vector<Rational> v, const Rational& c) {
  for (auto& x : v) x *= c;
  return v;
}

Scalar positive(std::mt19937& rng) {
  Scalar v = random_rational(rng);
  return v.constant_value() < 0 ? -v : v;
}

Scalar tau(int k) { return pow(S("t"), k) + pow(S("t"), -k); }

}  // namespace

TEST_CASE("quotient ring arithmetic") {
  // Q(sqrt 2) as Q[x]/(x^2 - 2).
  auto ring = make_ring({Scalar(-2), Scalar(0), Scalar(1)}, "s");
  ExtElement s = ExtElement::generator(ring);
  CHECK(s * s == ExtElement(2));
  CHECK((s * s).in_base());
  ExtElement x = ExtElement(3) + ExtElement(5) * s;
  CHECK(x * x.inverse() == ExtElement(1));
  CHECK((ExtElement(1) / (ExtElement(1) + s)) == s - ExtElement(1));
  CHECK(pow(s, 5) == ExtElement(4) * s);
  CHECK(!s.in_base());
  CHECK_THROWS_AS(s.base_value(), Error);
  // Reducible modulus: x^2 - 1 = (x - 1)(x + 1).
  auto bad = make_ring({Scalar(-1), Scalar(0), Scalar(1)}, "e");
  ExtElement e = ExtElement::generator(bad);
  CHECK_THROWS_AS((e - ExtElement(1)).inverse(), Error);
  CHECK(as_univariate(S("3*x^2 + y*x + 1/y"), "x").size() == 3);
}

TEST_CASE("r sequence") {
  Scalar t = S("t");
  auto r1 = rk_sequence(Scalar(1), t, 9);
  CHECK(r1[0] == Scalar(1));
  CHECK(r1[1] == t);
  CHECK(r1[2] == Scalar(1));
  CHECK(r1[3] == t.inverse());
  for (int k = 0; k + 4 <= 9; ++k) CHECK(r1[k + 4] == r1[k]);

  auto r3 = rk_sequence(Scalar(7, 2), Scalar(2), 8);
  const Scalar expect[3] = {Scalar(1), Scalar(2), Scalar(1, 2)};
  for (int k = 0; k <= 8; ++k) CHECK(r3[k] == expect[k % 3]);

  auto rs = rk_sequence(S("lambda"), t, 4);
  CHECK(rs[4] == S("(t^8*lambda^3 + t^6*(2*lambda^3 + 3*lambda^2 - 2*lambda + 1) + 3*t^4*lambda*(lambda^2 + 1)"
                   " + t^2*lambda*(lambda^3 - 2*lambda^2 + 3*lambda + 2) + lambda)"
                   "/(t^8*lambda + t^6*lambda*(lambda^3 - 2*lambda^2 + 3*lambda + 2) + 3*t^4*lambda*(lambda^2 + 1)"
                   " + t^2*(2*lambda^3 + 3*lambda^2 - 2*lambda + 1) + lambda^3)"));
  CHECK(rk_at(rs, -3) == rs[3].inverse());
  CHECK(rk_at(rs, -1) * rs[1] == Scalar(1));
  // The recurrence read backwards from r_1, r_0 produces r_{-k} = 1/r_k.
  Scalar lam = S("lambda");
  Scalar back = (lam + Scalar(1)) / (Scalar(1) + lam) / rs[1];
  CHECK(back == rk_at(rs, -1));
  for (int k = 2; k <= 4; ++k) {
    Scalar sq = rs[k - 1] * rs[k - 1];
    CHECK(rs[k] * rs[k - 2] * (Scalar(1) + lam * sq) == lam + sq);
  }
  CHECK_THROWS_AS(rk_sequence(Scalar(1), Scalar(0), 3), Error);
}

TEST_CASE("a and b sequences") {
  auto s = ab_sequences(Scalar(1), Scalar(1), Scalar(1), 5);
  const long expect[] = {1, 1, 2, 8, 64, 1024};
  for (int k = 0; k <= 5; ++k) CHECK(s.a_seq[k] == Scalar(expect[k]));

  Scalar a = S("a"), b = S("b"), l = S("lambda");
  auto g = ab_sequences(a, b, l, 4);
  auto r = rk_sequence(l, a / b, 4);
  for (int k = 0; k <= 4; ++k) CHECK(g.r[k] == r[k]);
  CHECK(g.a_seq[1] == a.inverse());

  auto one = ab_sequences(a, b, Scalar(1), 5);
  for (int k = 2; k <= 5; ++k) {
    Scalar sum = one.a_seq[k - 1] * one.a_seq[k - 1] + one.b_seq[k - 1] * one.b_seq[k - 1];
    CHECK(one.a_seq[k] == sum / one.a_seq[k - 2]);
    CHECK(one.b_seq[k] == sum / one.b_seq[k - 2]);
  }
  for (int n = 1; n <= 4; ++n)
    CHECK(pow(Scalar(1) + l, n) * g.a_seq[n] == tn_biased_product(n, a, b, l));
}

TEST_CASE("two-periodic closed form") {
  Scalar a = S("a"), b = S("b");
  CHECK(tn_two_periodic(2, a, b) == S("4*(a^2+b^2)/(a^2*b^2)"));
  CHECK(tn_two_periodic(1, a, b) == S("2/a"));
  CHECK(tn_two_periodic(3, Scalar(1), Scalar(1)) == Scalar(64));
  for (int n = 1; n <= 6; ++n) {
    Scalar viadet = pow(Scalar(2), n) * lambda_det(entrywise_inverse(alternating_q(n, a, b)), Scalar(1));
    CHECK(tn_two_periodic(n, a, b) == viadet);
    CHECK(tn_biased_product(n, a, b, Scalar(1)) == viadet);
  }
  for (int n = 1; n <= 4; ++n)
    CHECK(tn_two_periodic(n, a, b) == partition_brute({ones(n + 1), alternating_q(n, a, b), Homogeneous{Scalar(1)}}));
}

TEST_CASE("biased product") {
  Scalar a = S("a"), b = S("b"), l = S("lambda");
  CHECK(tn_biased_product(2, a, b, l) == cond_pq(ones(3), alternating_q(2, a, b), l));
  std::mt19937 rng(31);
  for (int n = 1; n <= 4; ++n) {
    CHECK(tn_biased_product(n, a, b, l) == cond_pq(ones(n + 1), alternating_q(n, a, b), l));
    // Positive values keep 1 + lambda r^2 away from 0.
    Scalar ar = positive(rng), br = positive(rng), lr = positive(rng);
    auto r = rk_sequence(lr, ar / br, n);
    CHECK(tn_biased_product(n, br, ar, lr) == r[n] * tn_biased_product(n, ar, br, lr));
    CHECK(tn_biased_product(n, a, a, l) == pow(Scalar(1) + l, n * (n + 1) / 2) * pow(a, -n));
  }
}

TEST_CASE("periodicity polynomials match the listed conditions") {
  for (const auto& [p, table] : listed()) {
    CAPTURE(p);
    auto pp = periodicity_polynomial(p);
    REQUIRE(pp.degree() == table.rbegin()->first);
    Rational unit = pp.coeffs.back()[0] / Rational(table.rbegin()->second[0]);
    for (int d = 0; d <= pp.degree(); ++d) {
      CAPTURE(d);
      auto it = table.find(d);
      std::vector<Rational> want = it == table.end() ? std::vector<Rational>{} : as_rationals(it->second);
      CHECK(trimmed(pp.coeffs[d]) == scaled(want, unit));
    }
  }
  // Only the two ends of the p = 11 condition are displayed.
  auto p11 = periodicity_polynomial(11);
  REQUIRE(p11.degree() == 15);
  CHECK(trimmed(p11.coeffs[15]) == as_rationals({1}));
  CHECK(trimmed(p11.coeffs[14]) == as_rationals({-15, -5, 0, -4, 0, -3, 0, -2, 0, -1}));
  CHECK(trimmed(p11.coeffs[1]) == as_rationals({3, -2, 5, 2, 11, 10}));
  CHECK(trimmed(p11.coeffs[0]) == as_rationals({-1, -1, -1, -1, -1, -1}));
}

TEST_CASE("periodicity polynomial symmetries") {
  Scalar l = S("lambda"), t = S("t");
  for (int p = 3; p <= 12; ++p) {
    auto pp = periodicity_polynomial(p);
    Scalar v = pp.evaluate(l, t);
    CHECK(v == pp.evaluate(l, t.inverse()));
    // Invariant as an equation, so up to a constant.
    if (p % 4 == 0) CHECK((v / (pow(l, pp.degree()) * pp.evaluate(l.inverse(), t))).is_constant());
  }
  for (int p : {3, 5}) {
    auto odd = periodicity_polynomial(p), even = periodicity_polynomial(2 * p);
    REQUIRE(odd.degree() == even.degree());
    Scalar flipped = pow(l, odd.degree()) * odd.evaluate(l.inverse(), t);
    Scalar ratio = even.evaluate(l, t) / flipped;
    CHECK(ratio.is_constant());
  }
  CHECK(periodicity_polynomial(4).evaluate(l, t) == l - Scalar(1));
  CHECK(periodicity_polynomial(3).evaluate(l, t) == l - Scalar(1) - tau(1));
  CHECK(periodicity_polynomial(8).evaluate(l, t) == l * l - (Scalar(4) + tau(2)) * l + Scalar(1));
}

TEST_CASE("periodic sequences and mirror inversion") {
  struct Point {
    int p;
    Scalar lambda, t;
  };
  // p = 6 with lambda = 1/(1 + t + 1/t); p = 4 at lambda = 1.
  for (const Point& pt : {Point{3, Scalar(7, 2), Scalar(2)}, Point{6, Scalar(2, 7), Scalar(2)},
                          Point{4, Scalar(1), Scalar(5, 3)}, Point{6, Scalar(6, 19), Scalar(3, 2)}}) {
    CAPTURE(pt.p);
    REQUIRE(periodicity_polynomial(pt.p).evaluate(pt.lambda, pt.t).is_zero());
    auto r = rk_sequence(pt.lambda, pt.t, 3 * pt.p);
    for (int k = 0; k + pt.p <= 3 * pt.p; ++k) CHECK(r[k + pt.p] == r[k]);
    for (int k = 0; k <= pt.p; ++k) CHECK(r[pt.p - k] == r[k].inverse());
  }
}

TEST_CASE("closed forms for p = 3 and 6") {
  Scalar a(2), b(1);
  for (int n = 0; n <= 9; ++n) {
    CHECK(tn_periodic_closed(3, n, a, b, Scalar(7, 2)) == tn_biased_product(n, a, b, Scalar(7, 2)));
    CHECK(tn_periodic_closed(6, n, a, b, Scalar(2, 7)) == tn_biased_product(n, a, b, Scalar(2, 7)));
  }
  Scalar as = S("a"), bs = S("b");
  Scalar l3 = Scalar(1) + as / bs + bs / as;
  for (int n = 0; n <= 6; ++n) {
    CHECK(tn_periodic_closed(3, n, as, bs, l3) == tn_biased_product(n, as, bs, l3));
    CHECK(tn_periodic_closed(6, n, as, bs, l3.inverse()) == tn_biased_product(n, as, bs, l3.inverse()));
  }
  CHECK_THROWS_AS(tn_periodic_closed(3, 2, a, b, Scalar(2)), Error);
  try {
    tn_periodic_closed(6, 2, a, b, Scalar(2));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotOnPeriodicityLocus);
  }
}

TEST_CASE("closed form for p = 8 in the quotient ring") {
  // t = 1 gives lambda^2 - 6 lambda + 1, with irrational roots 3 -+ 2 sqrt 2.
  for (Scalar tval : {Scalar(1), Scalar(3), Scalar(2, 5)}) {
    Scalar tau2 = tval * tval + (tval * tval).inverse();
    auto ring = make_ring({Scalar(1), -(Scalar(4) + tau2), Scalar(1)}, "lambda");
    ExtElement l = ExtElement::generator(ring);
    ExtElement a(tval), b(1);
    auto r = rk_sequence(l, a / b, 16);
    for (int k = 0; k + 8 <= 16; ++k) CHECK(r[k + 8] == r[k]);
    for (int n = 0; n <= 12; ++n) {
      CAPTURE(n);
      CHECK(tn_periodic_closed(8, n, a, b, l) == tn_biased_product(n, a, b, l));
    }
  }
  // Symbolic t, lambda a root over Q(t).
  Scalar t = S("t");
  auto ring = make_ring({Scalar(1), -(Scalar(4) + tau(2)), Scalar(1)}, "lambda");
  ExtElement l = ExtElement::generator(ring);
  for (int n = 0; n <= 8; ++n) CHECK(tn_periodic_closed(8, n, ExtElement(t), ExtElement(1), l) ==
                                     tn_biased_product(n, ExtElement(t), ExtElement(1), l));
  CHECK_THROWS_AS(tn_periodic_closed(8, 3, Scalar(2), Scalar(1), Scalar(3)), Error);
}

TEST_CASE("Somos-4") {
  auto s = somos4_check(Scalar(1), Scalar(1), Scalar(1), 8);
  CHECK(s.alpha == Scalar(16));
  CHECK(s.beta == Scalar(-16));
  CHECK(s.holds());
  Scalar a = S("a"), b = S("b"), l = S("lambda");
  auto g = somos4_check(a, b, l, 5);
  CHECK(g.holds());
  Scalar tt = a / b + b / a;
  CHECK(g.alpha == (Scalar(1) + l) * (Scalar(1) + l) * tt * tt);
  CHECK(g.beta == (Scalar(1) + l) * (Scalar(1) + l) * ((Scalar(1) - l) * (Scalar(1) - l) - tt * tt));
  auto z = somos4_check(a, b, Scalar(0), 7);
  CHECK(z.holds());
  CHECK(z.alpha == tt * tt);
  CHECK(z.beta == Scalar(1) - tt * tt);
  std::mt19937 rng(41);
  for (int trial = 0; trial < 3; ++trial)
    CHECK(somos4_check(positive(rng), positive(rng), positive(rng), 10).holds());
  // A perturbed beta breaks it.
  auto seq = ab_sequences(Scalar(2), Scalar(3), Scalar(5), 6).a_seq;
  CHECK(!(seq[4] * seq[0] == s.alpha * seq[3] * seq[1] + s.beta * seq[2] * seq[2]));
}

TEST_CASE("elliptic flow") {
  Scalar l(2), t(3);
  CHECK(biquadratic_invariant(Scalar(1), t, l) == Scalar(5));
  auto f = elliptic_flow(l, t, 8);
  CHECK(f.points[1].x == Scalar(-9));
  CHECK(f.on_curve);
  CHECK(f.matches_r);
  CHECK(f.inversion);
  auto r = rk_sequence(l, t, 6);
  for (int k = 0; k <= 6; ++k) CHECK(f.points[k].x == -r[k] * r[k]);

  Scalar ts = S("t");
  auto f1 = elliptic_flow(Scalar(1), ts, 8);
  CHECK(f1.on_curve);
  for (int k = 0; k + 4 <= 8; ++k) CHECK(f1.points[k + 4] == f1.points[k]);

  auto fs = elliptic_flow(S("lambda"), ts, 3);
  CHECK(fs.on_curve);
  CHECK(fs.matches_r);
  CHECK(fs.inversion);

  for (int trial = 0; trial < 3; ++trial) {
    Scalar lr = Scalar(1 + trial, 3), tr = Scalar(2 + trial, 5);
    auto fr = elliptic_flow(lr, tr, 8);
    CHECK(fr.on_curve);
    CHECK(fr.matches_r);
  }
}

TEST_CASE("biquadratic invariant") {
  Scalar l = S("lambda"), t = S("t");
  CHECK(biquadratic_invariant(Scalar(1), t, l) == (Scalar(1) + l.inverse()) * (t + t.inverse()));
  auto r = rk_sequence(Scalar(2), Scalar(3), 7);
  for (int k = 0; k <= 6; ++k) CHECK(biquadratic_invariant(r[k], r[k + 1], Scalar(2)) == Scalar(5));
  auto rs = rk_sequence(l, t, 3);
  CHECK(biquadratic_invariant(rs[1], rs[2], l) == biquadratic_invariant(rs[0], rs[1], l));
  CHECK(biquadratic_invariant(rs[2], rs[3], l) == biquadratic_invariant(rs[0], rs[1], l));
}

TEST_CASE("j invariants") {
  auto j = j_invariants(Scalar(2), Scalar(5));
  CHECK(!(j.j1 == j.j2));
  CHECK(j1_from_model(Scalar(2), Scalar(5)) == j.j1);
  CHECK(j2_from_model(Scalar(2), Scalar(5)) == j.j2);
  Scalar l = S("lambda"), K = S("K");
  auto js = j_invariants(l, K);
  CHECK(j1_from_model(l, K) == js.j1);
  Scalar common = S("16*lambda^4 + lambda^4*K^4 - 8*lambda^4*K^2 - 8*lambda^2*K^2 + 16");
  Scalar dp = S("(K+2)^2 - 4/lambda^2"), dm = S("(K-2)^2 - 4/lambda^2");
  CHECK(js.j1 == pow(common - S("16*lambda^2"), 3) / (pow(l, 8) * dp * dm));
  CHECK(js.j2 == pow(common + S("224*lambda^2"), 3) / (pow(l, 10) * dp * dp * dm * dm));
  for (auto [lv, kv] : {std::pair{Scalar(3), Scalar(7)}, std::pair{Scalar(1, 2), Scalar(9, 2)}})
    CHECK(j2_from_model(lv, kv) == j_invariants(lv, kv).j2);
  // (K - 2)^2 = 4 / lambda^2 at lambda = 1, K = 4.
  CHECK_THROWS_AS(j_invariants(Scalar(1), Scalar(4)), Error);
}
