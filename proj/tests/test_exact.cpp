#include "doctest.h"
#include "lambdet/error.hpp"
#include "support.hpp"

using namespace lambdet;
using testing_support::S;

namespace {

ErrorKind error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("rational arithmetic") {
  CHECK(Scalar(1, 2) + Scalar(1, 3) == Scalar(5, 6));
  CHECK(S("1/2 + 1/3") == Scalar(5, 6));
  CHECK(arith(ArithOp::Add, Scalar(1, 2), Scalar(1, 3)) == Scalar(5, 6));
  CHECK(arith(ArithOp::Pow, S("x"), Scalar(3)) == S("x*x*x"));
  CHECK(error_of([] { return Scalar(1) / Scalar(0); }) == ErrorKind::DivisionByZero);
}

TEST_CASE("gcd cancellation") {
  CHECK(S("(x^2 - 1)/(x - 1)") == S("x + 1"));
  Scalar r = S("(x^2 - y^2)/(2*x + 2*y)");
  CHECK(r == S("x/2 - y/2"));
  CHECK(r.den().is_one());
  Scalar q = S("(x*y + y)/(3*x^2 + 6*x + 3)");
  CHECK(to_string(q) == "(1/3*y)/(x + 1)");
}

TEST_CASE("canonical denominators are monic") {
  Scalar s = S("1/(2*x - 4)");
  CHECK(s.den().lc() == 1);
  CHECK(s == S("(1/2)/(x - 2)"));
  CHECK(S("(-x)/(-y)") == S("x/y"));
}

TEST_CASE("substitution") {
  CHECK(substitute(S("(1 + lambda)^3"), {{"lambda", Scalar(1)}}) == Scalar(8));
  CHECK(substitute(S("lambda/t"), {{"t", S("lambda")}}) == Scalar(1));
  CHECK(error_of([] { return substitute(S("1/(lambda - 1)"), {{"lambda", Scalar(1)}}); }) ==
        ErrorKind::PoleAtSubstitution);
  // Simultaneous, not sequential.
  CHECK(substitute(S("x - y"), {{"x", S("y")}, {"y", S("x")}}) == S("y - x"));
  CHECK(substitute(S("x^2/(y+1)"), {{"x", S("1/z")}}) == S("1/(z^2*y + z^2)"));
}

TEST_CASE("limit at zero") {
  CHECK(limit_at_zero(S("eps*(1/eps)"), "eps") == Scalar(1));
  CHECK(limit_at_zero(S("(eps^2 + eps)/eps"), "eps") == Scalar(1));
  CHECK(error_of([] { return limit_at_zero(S("1/eps"), "eps"); }) == ErrorKind::PoleAtZero);
  CHECK(limit_at_zero(S("(eps*x + y)/(eps + x)"), "eps") == S("y/x"));
  CHECK(limit_at_zero(S("eps*x"), "eps") == Scalar(0));
}

TEST_CASE("parse and print round trip") {
  for (const char* t : {"0", "-3/7", "x", "-x^2*y + 1/2", "(x + 1)/(x^2 - 3*y)", "lambda^3*t - 2*t/lambda",
                        "(p_1_1*p_2_2 + lambda*p_1_2*p_2_1)/q_1_1"}) {
    Scalar s = S(t);
    CAPTURE(t);
    CHECK(parse_scalar(to_string(s)) == s);
  }
  CHECK(S("x^(-2)") == S("1/x^2"));
  CHECK(S("-x^2") == -S("x^2"));
  CHECK(error_of([] { return S("x +"); }) == ErrorKind::ParseError);
  CHECK(error_of([] { return S("(x"); }) == ErrorKind::ParseError);
  CHECK(error_of([] { return S("1/0"); }) == ErrorKind::ParseError);
}

TEST_CASE("heuristic and prs gcd agree") {
  std::mt19937 rng(11);
  std::vector<std::vector<std::string>> varsets = {{"x"}, {"x", "y"}, {"x", "y", "z"}};
  for (int trial = 0; trial < 60; ++trial) {
    const auto& vs = varsets[trial % 3];
    Poly g = testing_support::random_poly(rng, vs, 3, 3);
    Poly a = testing_support::random_poly(rng, vs, 4, 3) * g;
    Poly b = testing_support::random_poly(rng, vs, 4, 3) * g;
    if (a.is_zero() || b.is_zero()) continue;
    Poly h = gcd(a, b);
    Poly p = detail::prs_gcd(a, b);
    CHECK(h == p);
    if (!g.is_constant()) CHECK(h.divide_exact(g.scaled(Rational(1) / g.lc())).has_value());
    CHECK(a.divide_exact(h).has_value());
    CHECK(b.divide_exact(h).has_value());
  }
}

TEST_CASE("field identities on random rational functions") {
  std::mt19937 rng(5);
  std::vector<std::string> vs = {"x", "y"};
  auto rnd = [&] {
    Poly n = testing_support::random_poly(rng, vs, 3, 2, 5);
    Poly d = testing_support::random_poly(rng, vs, 2, 2, 5);
    if (d.is_zero()) d = Poly(1L);
    return Scalar::fraction(n, d);
  };
  for (int trial = 0; trial < 30; ++trial) {
    Scalar a = rnd(), b = rnd(), c = rnd();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Scalar(0));
    if (!a.is_zero()) CHECK(a * a.inverse() == Scalar(1));
    CHECK(Scalar::fraction(a.num(), a.den()) == a);
    Bindings bind{{"x", Scalar(3, 4)}, {"y", Scalar(-2)}};
    try {
      CHECK(substitute(a * b, bind) == substitute(a, bind) * substitute(b, bind));
      CHECK(substitute(a + b, bind) == substitute(a, bind) + substitute(b, bind));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::PoleAtSubstitution);
    }
  }
}

TEST_CASE("matrix JSON round trip") {
  std::mt19937 rng(11);
  SquareMatrix m = testing_support::random_matrix(rng, 3);
  m(0, 1) = S("(x + 1/2) / (y - 3)");
  nlohmann::json j = nlohmann::json::parse(to_json(m).dump());
  CHECK(matrix_from_json(j) == m);
  CHECK(matrix_from_json(nlohmann::json::parse(R"({"rows": [[1, "a"], ["2/3", -4]]})"))(1, 1) == Scalar(-4));
  CHECK(error_of([] { matrix_from_json(nlohmann::json::parse(R"({"rows": [[1, 2], [3]]})")); }) == ErrorKind::SizeMismatch);
  CHECK(error_of([] { matrix_from_json(nlohmann::json::parse(R"({"cols": []})")); }) == ErrorKind::ParseError);
}
