#include "lambdet/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

#include "lambdet/error.hpp"

namespace lambdet {

namespace {

Poly exact_div(const Poly& a, const Poly& b) {
  if (b.is_one()) return a;
  auto q = a.divide_exact(b);
  if (!q) fail(ErrorKind::Internal, "inexact division by a gcd");
  return std::move(*q);
}

}  // namespace

Scalar::Scalar(long p, long q) {
  if (q == 0) fail(ErrorKind::DivisionByZero, "zero denominator");
  Rational r(p, q);
  r.canonicalize();
  num_ = Poly(r);
}

Scalar Scalar::var(std::string_view name) {
  return Scalar(Poly::variable(var_id(name)), Poly(1L), 0);
}

Scalar Scalar::make_monic(Poly num, Poly den) {
  if (den.lc() != 1) {
    Rational inv = Rational(1) / den.lc();
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  return Scalar(std::move(num), std::move(den), 0);
}

Scalar Scalar::fraction(const Poly& num, const Poly& den) {
  if (den.is_zero()) fail(ErrorKind::DivisionByZero, "zero denominator");
  if (num.is_zero()) return Scalar();
  Poly g = gcd(num, den);
  return make_monic(exact_div(num, g), exact_div(den, g));
}

Scalar Scalar::operator-() const { return Scalar(-num_, den_, 0); }

Scalar Scalar::operator+(const Scalar& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_.is_one() && o.den_.is_one()) return Scalar(num_ + o.num_, den_, 0);
  // With one side polynomial the sum is already reduced.
  if (o.den_.is_one()) return Scalar(num_ + o.num_ * den_, den_, 0);
  if (den_.is_one()) return Scalar(num_ * o.den_ + o.num_, o.den_, 0);
  if (den_ == o.den_) {
    Poly n = num_ + o.num_;
    if (n.is_zero()) return Scalar();
    Poly g = gcd(n, den_);
    return make_monic(exact_div(n, g), exact_div(den_, g));
  }
  Poly g = gcd(den_, o.den_);
  if (g.is_one()) return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_, 0);
  Poly b1 = exact_div(den_, g), d1 = exact_div(o.den_, g);
  Poly n = num_ * d1 + o.num_ * b1;
  if (n.is_zero()) return Scalar();
  Poly den = b1 * o.den_;
  Poly g2 = gcd(n, g);
  return make_monic(exact_div(n, g2), exact_div(den, g2));
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (is_zero() || o.is_zero()) return Scalar();
  if (is_constant()) return Scalar(o.num_.scaled(num_.lc()), o.den_, 0);
  if (o.is_constant()) return Scalar(num_.scaled(o.num_.lc()), den_, 0);
  if (den_.is_one() && o.den_.is_one()) return Scalar(num_ * o.num_, den_, 0);
  Poly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
  Poly n = exact_div(num_, g1) * exact_div(o.num_, g2);
  Poly d = exact_div(den_, g2) * exact_div(o.den_, g1);
  return Scalar(std::move(n), std::move(d), 0);
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
  return make_monic(den_, num_);
}

Scalar Scalar::operator/(const Scalar& o) const {
  if (o.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero");
  return *this * o.inverse();
}

Scalar pow(const Scalar& s, long e) {
  if (e < 0) return pow(s.inverse(), -e);
  if (e == 0) return Scalar(1);
  if (s.is_zero()) return s;
  unsigned ue = static_cast<unsigned>(e);
  return Scalar::fraction(s.num().pow(ue), s.den().pow(ue));
}

Scalar arith(ArithOp op, const Scalar& a, const Scalar& b) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
    case ArithOp::Neg: return -a;
    case ArithOp::Pow: {
      if (!b.is_constant() || b.constant_value().get_den() != 1 || !b.constant_value().get_num().fits_slong_p())
        fail(ErrorKind::ParseError, "exponent must be an integer");
      return pow(a, b.constant_value().get_num().get_si());
    }
  }
  fail(ErrorKind::Internal, "unknown op");
}

// ---------------------------------------------------------------- substitution

namespace {

struct Bound {
  Poly n, d;
  std::vector<Poly> npow, dpow;
  std::uint32_t maxdeg = 0;
  const Poly& np(std::uint32_t e) {
    while (npow.size() <= e) npow.push_back(npow.empty() ? Poly(1L) : npow.back() * n);
    return npow[e];
  }
  const Poly& dp(std::uint32_t e) {
    while (dpow.size() <= e) dpow.push_back(dpow.empty() ? Poly(1L) : dpow.back() * d);
    return dpow[e];
  }
};

// p with bound variables replaced, as numerator over denominator.
std::pair<Poly, Poly> eval_poly(const Poly& p, std::unordered_map<VarId, Bound>& bs) {
  for (auto& [v, b] : bs) b.maxdeg = p.degree(v);
  std::vector<Poly::TermT> direct;
  Poly acc;
  bool all_const = true;
  for (auto& [v, b] : bs)
    if (!(b.n.is_constant() && b.d.is_one())) all_const = false;
  for (const auto& t : p.terms()) {
    MonomialBuilder rest;
    Rational c = t.c;
    Poly factor(1L);
    for (const auto& f : t.m.factors()) {
      auto it = bs.find(f.var);
      if (it == bs.end()) {
        rest.mul(f.var, f.exp);
        continue;
      }
      Bound& b = it->second;
      if (all_const) {
        Rational v = b.n.constant_value();
        Rational pw;
        mpz_pow_ui(pw.get_num_mpz_t(), v.get_num_mpz_t(), f.exp);
        mpz_pow_ui(pw.get_den_mpz_t(), v.get_den_mpz_t(), f.exp);
        c *= pw;
      } else {
        factor = factor * b.np(f.exp);
      }
    }
    if (all_const) {
      if (sgn(c) != 0) direct.push_back({rest.build(), c});
      continue;
    }
    // Clear the denominators of every bound variable to its maximal degree.
    for (auto& [v, b] : bs) {
      std::uint32_t e = t.m.exponent(v);
      if (b.maxdeg > e) factor = factor * b.dp(b.maxdeg - e);
    }
    acc += factor.mul_term(rest.build(), c);
  }
  if (all_const) return {Poly::from_terms(std::move(direct)), Poly(1L)};
  Poly den(1L);
  for (auto& [v, b] : bs)
    if (b.maxdeg > 0) den = den * b.dp(b.maxdeg);
  return {acc, den};
}

}  // namespace

Scalar substitute(const Scalar& s, const Bindings& bindings) {
  std::unordered_map<VarId, Bound> bs;
  for (const auto& [name, val] : bindings) {
    auto id = find_var(name);
    if (!id) continue;
    if (!s.num().has_var(*id) && !s.den().has_var(*id)) continue;
    Bound b;
    b.n = val.num();
    b.d = val.den();
    bs.emplace(*id, std::move(b));
  }
  if (bs.empty()) return s;
  auto [nn, nd] = eval_poly(s.num(), bs);
  auto [dn, dd] = eval_poly(s.den(), bs);
  if (dn.is_zero()) fail(ErrorKind::PoleAtSubstitution, "denominator vanishes after substitution");
  return Scalar::fraction(nn * dd, nd * dn);
}

namespace {

std::uint32_t min_exponent(const Poly& p, VarId v) {
  std::uint32_t m = UINT32_MAX;
  for (const auto& t : p.terms()) m = std::min(m, t.m.exponent(v));
  return p.is_zero() ? 0 : m;
}

Poly lowest_part(const Poly& p, VarId v, std::uint32_t e) {
  std::vector<Poly::TermT> out;
  for (const auto& t : p.terms())
    if (t.m.exponent(v) == e) out.push_back({t.m.without(v), t.c});
  return Poly::from_terms(std::move(out));
}

}  // namespace

long order_at_zero(const Scalar& s, std::string_view var) {
  if (s.is_zero()) fail(ErrorKind::Internal, "order of zero");
  auto id = find_var(var);
  if (!id) return 0;
  return static_cast<long>(min_exponent(s.num(), *id)) - static_cast<long>(min_exponent(s.den(), *id));
}

Scalar limit_at_zero(const Scalar& s, std::string_view var) {
  if (s.is_zero()) return s;
  auto id = find_var(var);
  if (!id) return s;
  std::uint32_t a = min_exponent(s.num(), *id), b = min_exponent(s.den(), *id);
  if (a < b) fail(ErrorKind::PoleAtZero, "pole at " + std::string(var) + " = 0");
  if (a > b) return Scalar();
  return Scalar::fraction(lowest_part(s.num(), *id, a), lowest_part(s.den(), *id, b));
}

bool depends_on(const Scalar& s, std::string_view var) {
  auto id = find_var(var);
  return id && (s.num().has_var(*id) || s.den().has_var(*id));
}

std::vector<std::string> variables(const Scalar& s) {
  std::vector<VarId> ids = s.num().variables();
  for (VarId v : s.den().variables()) ids.push_back(v);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<std::string> out;
  for (VarId v : ids) out.push_back(var_name(v));
  return out;
}

unsigned degree_in(const Poly& p, std::string_view var) {
  auto id = find_var(var);
  return id ? p.degree(*id) : 0;
}

// ---------------------------------------------------------------- text

std::string to_string(const Scalar& s) {
  if (s.den().is_one()) return to_string(s.num());
  return "(" + to_string(s.num()) + ")/(" + to_string(s.den()) + ")";
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << to_string(s); }

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Scalar parse() {
    Scalar v = expr();
    skip();
    if (i_ != s_.size()) error("unexpected '" + std::string(1, s_[i_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void error(const std::string& msg) {
    fail(ErrorKind::ParseError, msg + " at offset " + std::to_string(i_) + " in \"" + std::string(s_) + "\"");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  Scalar expr() {
    Scalar v = term();
    while (true) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  Scalar term() {
    Scalar v = unary();
    while (true) {
      if (eat('*')) v *= unary();
      else if (eat('/')) {
        Scalar d = unary();
        if (d.is_zero()) error("division by zero");
        v /= d;
      } else return v;
    }
  }
  Scalar unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  Scalar power() {
    Scalar base = atom();
    if (!eat('^')) return base;
    bool paren = eat('(');
    bool neg = eat('-');
    skip();
    Integer e = integer();
    if (paren && !eat(')')) error("expected ')'");
    if (!e.fits_slong_p()) error("exponent too large");
    long ev = e.get_si();
    if (neg) ev = -ev;
    if (base.is_zero() && ev < 0) error("zero to a negative power");
    return pow(base, ev);
  }
  Integer integer() {
    std::size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) error("expected integer");
    return Integer(std::string(s_.substr(st, i_ - st)));
  }
  Scalar atom() {
    skip();
    if (i_ >= s_.size()) error("unexpected end");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Scalar v = expr();
      if (!eat(')')) error("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Scalar(Rational(integer()));
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t st = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      return Scalar::var(s_.substr(st, i_ - st));
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

Scalar parse_scalar(std::string_view text) { return Parser(text).parse(); }

}  // namespace lambdet
