#include "lambdet/periodic.hpp"

#include <map>
#include <mutex>

#include "lambdet/error.hpp"

namespace lambdet {

namespace {

template <class F>
F power(const F& x, long e) {
  return pow(x, e);
}

template <class F>
F checked_div(const F& num, const F& den, const char* what, int k) {
  if (is_zero(den)) fail(ErrorKind::PoleInSequence, std::string(what) + " has a pole at k = " + std::to_string(k));
  return num / den;
}

long floor_div(long a, long b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }

}  // namespace

template <class F>
std::vector<F> rk_sequence(const F& lambda, const F& t, int count) {
  if (count < 0) fail(ErrorKind::SizeMismatch, "count must be nonnegative");
  std::vector<F> r{F(1)};
  if (count >= 1) r.push_back(t);
  for (int k = 2; k <= count; ++k) {
    F sq = r[k - 1] * r[k - 1];
    F num = lambda + sq;
    F den = (F(1) + lambda * sq) * r[k - 2];
    r.push_back(checked_div(num, den, "r", k));
  }
  return r;
}

template <class F>
F rk_at(const std::vector<F>& r, int k) {
  int m = k < 0 ? -k : k;
  if (m >= static_cast<int>(r.size())) fail(ErrorKind::SizeMismatch, "r index out of computed range");
  if (k >= 0) return r[m];
  return checked_div(F(1), r[m], "r", k);
}

template <class F>
SequenceTriple<F> ab_sequences(const F& a, const F& b, const F& lambda, int count) {
  if (count < 0) fail(ErrorKind::SizeMismatch, "count must be nonnegative");
  SequenceTriple<F> s;
  s.a_seq.push_back(F(1));
  s.b_seq.push_back(F(1));
  if (count >= 1) {
    s.a_seq.push_back(checked_div(F(1), a, "a", 1));
    s.b_seq.push_back(checked_div(F(1), b, "b", 1));
  }
  for (int k = 2; k <= count; ++k) {
    const F &a1 = s.a_seq[k - 1], &b1 = s.b_seq[k - 1];
    F aa = a1 * a1, bb = b1 * b1;
    s.a_seq.push_back(checked_div(aa + lambda * bb, s.a_seq[k - 2], "a", k));
    s.b_seq.push_back(checked_div(bb + lambda * aa, s.b_seq[k - 2], "b", k));
  }
  for (int k = 0; k <= count; ++k) s.r.push_back(checked_div(s.b_seq[k], s.a_seq[k], "r", k));
  return s;
}

template <class F>
F tn_two_periodic(int n, const F& a, const F& b) {
  if (n < 0) fail(ErrorKind::SizeMismatch, "n must be nonnegative");
  if (is_zero(a) || is_zero(b)) fail(ErrorKind::DivisionByZero, "a and b must be nonzero");
  F v = power(F(2) / (a * b), (static_cast<long>(n) + 1) * (n + 1) / 4) * power(a * a + b * b, static_cast<long>(n) * n / 4);
  if (n % 4 == 1) v *= b;
  if (n % 4 == 3) v *= a;
  return v;
}

template <class F>
F tn_biased_product(int n, const F& a, const F& b, const F& lambda) {
  if (n < 0) fail(ErrorKind::SizeMismatch, "n must be nonnegative");
  if (is_zero(a) || is_zero(b)) fail(ErrorKind::DivisionByZero, "a and b must be nonzero");
  auto r = rk_sequence(lambda, a / b, std::max(n - 1, 0));
  F v = power(a, -static_cast<long>(n));
  for (int k = 0; k < n; ++k) v *= power(F(1) + lambda * r[k] * r[k], n - k);
  return v;
}

SquareMatrix alternating_q(int n, const Scalar& a, const Scalar& b) {
  SquareMatrix q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q(i, j) = (i + j) % 2 ? b : a;
  return q;
}

// ------------------------------------------------------------ periodicity

namespace {

Poly poly_content_in(const Poly& p, VarId v) {
  Poly g;
  for (std::uint32_t k = 0; k <= p.degree(v); ++k) {
    Poly c = p.coeff_of(v, k);
    if (!c.is_zero()) g = g.is_zero() ? c : gcd(g, c);
  }
  return g;
}

Poly exact(const Poly& a, const Poly& d) {
  auto q = a.divide_exact(d);
  if (!q) fail(ErrorKind::Internal, "expected exact polynomial division");
  return *q;
}

struct Cache {
  std::mutex mu;
  std::map<int, PeriodicityPolynomial> entries;
};

Cache& cache() {
  static Cache c;
  return c;
}

}  // namespace

template <class F>
F PeriodicityPolynomial::evaluate(const F& lambda, const F& t) const {
  F total(0);
  F lp(1);
  F tinv = F(1) / t;
  for (const auto& row : coeffs) {
    F c(0);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (sgn(row[k]) == 0) continue;
      F tau = k == 0 ? F(1) : power(t, static_cast<long>(k)) + power(tinv, static_cast<long>(k));
      c += F(Scalar(row[k])) * tau;
    }
    total += c * lp;
    lp *= lambda;
  }
  return total;
}

PeriodicityPolynomial periodicity_polynomial(int p) {
  if (p < 3) fail(ErrorKind::SizeMismatch, "period must be at least 3");
  {
    std::lock_guard<std::mutex> lock(cache().mu);
    auto it = cache().entries.find(p);
    if (it != cache().entries.end()) return it->second;
  }

  Scalar lam = Scalar::var(kLambdaVar), t = Scalar::var(kTVar);
  VarId lv = var_id(kLambdaVar), tv = var_id(kTVar);
  auto r = rk_sequence(lam, t, (p + 1) / 2);
  Scalar cond = p % 2 ? r[(p - 1) / 2] * r[(p + 1) / 2] - Scalar(1) : r[p / 2] - Scalar(1);
  Poly num = cond.num();
  Poly content = poly_content_in(num, lv);
  if (!content.is_constant()) num = exact(num, content);
  // Shorter periods divide the condition too, as do the sign-alternating
  // sequences they give under t -> -t, and lambda = -1, where
  // r = 1, t, -1, -1/t repeats. None of these are positive sequences.
  auto strip = [&](const Poly& f) {
    while (true) {
      auto q = num.divide_exact(f);
      if (!q) break;
      num = *q;
    }
  };
  strip(Poly::variable(lv) + Poly(1L));
  for (int d = 3; d < p; ++d) {
    if (p % d) continue;
    const Poly& f = periodicity_polynomial(d).poly;
    strip(f);
    Scalar flipped = substitute(Scalar(f), {{kTVar, -t}});
    strip(flipped.num());
  }

  std::uint32_t tdeg = num.degree(tv);
  if (tdeg % 2) fail(ErrorKind::Internal, "periodicity condition is not symmetric in t");
  const int m = static_cast<int>(tdeg / 2);
  PeriodicityPolynomial out;
  out.p = p;
  for (std::uint32_t d = 0; d <= num.degree(lv); ++d) {
    Poly c = num.coeff_of(lv, d);
    std::vector<Rational> row(m + 1);
    for (int k = 0; k <= m; ++k) {
      Rational hi = c.coeff_of(tv, m + k).constant_value(), lo = c.coeff_of(tv, m - k).constant_value();
      if (hi != lo) fail(ErrorKind::Internal, "periodicity condition is not symmetric in t");
      row[k] = hi;
    }
    out.coeffs.push_back(std::move(row));
  }
  // Unit: leading lambda coefficient has content 1 and a positive first entry.
  const auto& lead = out.coeffs.back();
  Integer g = 0, l = 1;
  for (const auto& c : lead) {
    if (sgn(c) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational unit(g, l);
  for (const auto& c : lead)
    if (sgn(c) != 0) {
      if (sgn(c) < 0) unit = -unit;
      break;
    }
  for (auto& row : out.coeffs)
    for (auto& c : row) c /= unit;
  out.poly = num.scaled(Rational(1) / unit);
  std::lock_guard<std::mutex> lock(cache().mu);
  cache().entries[p] = out;
  return out;
}

template <class F>
F tn_periodic_closed(int p, int n, const F& a, const F& b, const F& lambda) {
  if (p != 3 && p != 6 && p != 8) fail(ErrorKind::SizeMismatch, "closed forms exist for p = 3, 6, 8");
  if (n < 0) fail(ErrorKind::SizeMismatch, "n must be nonnegative");
  if (is_zero(a) || is_zero(b)) fail(ErrorKind::DivisionByZero, "a and b must be nonzero");
  if (!is_zero(periodicity_polynomial(p).evaluate(lambda, a / b)))
    fail(ErrorKind::NotOnPeriodicityLocus, "(lambda, a/b) does not satisfy the period " + std::to_string(p) + " condition");
  const long N = n;
  const F s2 = a * a + b * b;
  if (p == 3 || p == 6) {
    F v = power((a + b) / (a * b), (2 * N + 1) * (N + 1) / 3) * power(s2, N * N / 3);
    if (p == 3) {
      const F cases[3] = {F(1), b, a};
      return v * cases[n % 3];
    }
    v *= power(a * b / (a * a + a * b + b * b), N * (N + 1) / 2);
    const F cases[6] = {F(1), b, b, F(1), a, a};
    return v * cases[n % 6];
  }
  F v = power(a * b, -floor_div(N + 1, 2)) * power(s2 / (a * b), 3 * N * N / 8) * power(lambda, N * N / 8) *
        power(F(1) + lambda, (N + 1) * (N + 1) / 4);
  const F cases[8] = {F(1), b, (lambda * a * a + b * b) / s2, b, F(1), a, (a * a + lambda * b * b) / s2, a};
  return v * cases[n % 8];
}

template <class F>
SomosResult<F> somos4_check(const F& a, const F& b, const F& lambda, int count) {
  SomosResult<F> res;
  F t = a / b, tt = t + F(1) / t;
  res.alpha = (F(1) + lambda) * (F(1) + lambda) * tt * tt;
  F om = F(1) - lambda * lambda;
  res.beta = -res.alpha + om * om;
  auto s = ab_sequences(a, b, lambda, count);
  auto holds = [&](const std::vector<F>& x) {
    for (int k = 4; k <= count; ++k)
      if (!(x[k] * x[k - 4] == res.alpha * x[k - 1] * x[k - 3] + res.beta * x[k - 2] * x[k - 2])) return false;
    return true;
  };
  res.holds_a = holds(s.a_seq);
  res.holds_b = holds(s.b_seq);
  return res;
}

// ------------------------------------------------------------ elliptic

Scalar e1_rhs(const Scalar& x, const Scalar& lambda, const Scalar& t) {
  Scalar li = lambda.inverse(), tt = t + t.inverse();
  return x * x + Scalar(4) * x * (x - lambda) * (x - li) / ((lambda + li + Scalar(2)) * tt * tt);
}

EllipticPoint sigma_map(const EllipticPoint& p, const Scalar& lambda) {
  const Scalar &x = p.x, &y = p.y;
  Scalar d1 = Scalar(1) - lambda * x, d2 = x + y;
  if (d1.is_zero() || d2.is_zero()) fail(ErrorKind::PoleInFlow, "translation hits a pole");
  Scalar nx = (lambda - x) * (y - x) / (d1 * d2);
  Scalar ny = lambda * (x * x + y * (lambda - lambda.inverse()) - Scalar(1)) * (y - x) / (d1 * d1 * d2);
  return {nx, ny};
}

EllipticFlow elliptic_flow(const Scalar& lambda, const Scalar& t, int count) {
  if (count < 0) fail(ErrorKind::SizeMismatch, "count must be nonnegative");
  EllipticFlow f;
  Scalar t2 = t * t;
  f.points.push_back({Scalar(-1), (t2 - Scalar(1)) / (t2 + Scalar(1))});
  for (int k = 1; k <= count; ++k) f.points.push_back(sigma_map(f.points.back(), lambda));
  f.on_curve = true;
  for (const auto& pt : f.points)
    if (!(pt.y * pt.y == e1_rhs(pt.x, lambda, t))) f.on_curve = false;
  f.matches_r = true;
  try {
    auto r = rk_sequence(lambda, t, count + 1);
    for (int k = 0; k <= count; ++k) {
      Scalar rk2 = r[k] * r[k];
      Scalar prev = rk_at(r, k - 1);
      Scalar y = rk2 * (r[k + 1] - prev) / (r[k + 1] + prev);
      if (!(f.points[k].x == -rk2) || !(f.points[k].y == y)) f.matches_r = false;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::PoleInSequence && e.kind() != ErrorKind::DivisionByZero) throw;
    f.matches_r = false;
  }
  f.inversion = true;
  for (int k = 1; k <= count; ++k) {
    const auto &c = f.points[k], &pr = f.points[k - 1];
    Scalar lhs = (Scalar(1) - lambda * c.x) / (lambda - c.x) * (c.y - c.x) / (c.x + c.y);
    if (!(lhs == pr.x.inverse())) f.inversion = false;
  }
  return f;
}

Scalar biquadratic_invariant(const Scalar& x, const Scalar& y, const Scalar& lambda) {
  if (x.is_zero() || y.is_zero()) fail(ErrorKind::DivisionByZero, "X and Y must be nonzero");
  Scalar xx = x * x, yy = y * y;
  return (xx * yy + (xx + yy) / lambda + Scalar(1)) / (x * y);
}

template <class F>
F j_from_b(const F& b2, const F& b4, const F& b6) {
  F quarter = F(Scalar(1, 4));
  F num = b2 * b2 - F(24) * b4;
  F den = F(9) * b2 * b4 * b6 - quarter * b2 * b2 * b2 * b6 + quarter * b2 * b2 * b4 * b4 - F(8) * b4 * b4 * b4 -
          F(27) * b6 * b6;
  if (is_zero(den)) fail(ErrorKind::SingularCurve, "discriminant vanishes");
  return num * num * num / den;
}

E2Standard e2_standard_form(const Scalar& lambda, const Scalar& K) {
  if (lambda.is_zero()) fail(ErrorKind::SingularCurve, "lambda must be nonzero");
  E2Standard e;
  Scalar li = lambda.inverse();
  e.ring = make_ring({Scalar(1), Scalar(0), Scalar(2) * li - K, Scalar(0), Scalar(1)}, "u");
  const ExtElement u = ExtElement::generator(e.ring);
  const ExtElement L(lambda), Kx(K), uu = u * u;
  e.u = u;
  try {
    e.gamma = ExtElement(2) * uu + ExtElement(Scalar(2) * li) - Kx;
    e.p = ExtElement(-4) * u / (ExtElement(2) + L * Kx - ExtElement(2) * L * uu);
    const ExtElement& p = e.p;
    e.q = p * (e.gamma + ExtElement(4) * p * u + ExtElement(4) * p * p);
    e.b2 = ExtElement(-4) / e.q * (e.gamma + ExtElement(8) * p * u + ExtElement(12) * p * p);
    e.b4 = ExtElement(8) / e.q * (u + ExtElement(3) * p);
    e.b6 = ExtElement(-16) / e.q;
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::DivisionByZero || err.kind() == ErrorKind::NotInvertible)
      fail(ErrorKind::SingularCurve, std::string("standard form undefined: ") + err.what());
    throw;
  }
  return e;
}

JInvariants j_invariants(const Scalar& lambda, const Scalar& K) {
  if (lambda.is_zero()) fail(ErrorKind::SingularCurve, "lambda must be nonzero");
  Scalar l2 = lambda * lambda, l4 = l2 * l2, K2 = K * K, K4 = K2 * K2;
  Scalar common = Scalar(16) * l4 + l4 * K4 - Scalar(8) * l4 * K2 - Scalar(8) * l2 * K2 + Scalar(16);
  Scalar n1 = common - Scalar(16) * l2, n2 = common + Scalar(224) * l2;
  Scalar f4 = Scalar(4) / l2;
  Scalar dp = (K + Scalar(2)) * (K + Scalar(2)) - f4, dm = (K - Scalar(2)) * (K - Scalar(2)) - f4;
  if (dp.is_zero() || dm.is_zero()) fail(ErrorKind::SingularCurve, "curve is singular at these parameters");
  JInvariants j;
  j.j1 = n1 * n1 * n1 / (pow(lambda, 8) * dp * dm);
  j.j2 = n2 * n2 * n2 / (pow(lambda, 10) * dp * dp * dm * dm);
  return j;
}

Scalar j1_from_model(const Scalar& lambda, const Scalar& K) {
  if (lambda.is_zero()) fail(ErrorKind::SingularCurve, "lambda must be nonzero");
  Scalar b2 = lambda * K * K - Scalar(4) * lambda - Scalar(4) / lambda;
  return j_from_b(b2, Scalar(2), Scalar(0));
}

Scalar j2_from_model(const Scalar& lambda, const Scalar& K) {
  E2Standard e = e2_standard_form(lambda, K);
  return j_from_b(e.b2, e.b4, e.b6).base_value();
}

#define LAMBDET_PERIODIC_INSTANTIATE(F)                                                        \
  template std::vector<F> rk_sequence<F>(const F&, const F&, int);                            \
  template F rk_at<F>(const std::vector<F>&, int);                                            \
  template SequenceTriple<F> ab_sequences<F>(const F&, const F&, const F&, int);              \
  template F tn_two_periodic<F>(int, const F&, const F&);                                     \
  template F tn_biased_product<F>(int, const F&, const F&, const F&);                         \
  template F PeriodicityPolynomial::evaluate<F>(const F&, const F&) const;                    \
  template F tn_periodic_closed<F>(int, int, const F&, const F&, const F&);                   \
  template SomosResult<F> somos4_check<F>(const F&, const F&, const F&, int);                 \
  template F j_from_b<F>(const F&, const F&, const F&);

LAMBDET_PERIODIC_INSTANTIATE(Scalar)
LAMBDET_PERIODIC_INSTANTIATE(ExtElement)

}  // namespace lambdet
