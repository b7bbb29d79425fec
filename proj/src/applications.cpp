#include "lambdet/applications.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>
#include <unsupported/Eigen/Polynomials>

#include "lambdet/asm.hpp"
#include "lambdet/condense.hpp"
#include "lambdet/error.hpp"
#include "lambdet/ext.hpp"

namespace lambdet {

namespace {

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Rational pow2(long e) {
  Rational r(1);
  if (e >= 0)
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
  else
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  return r;
}

void require_positive(int n, const char* what) {
  if (n < 1) fail(ErrorKind::SizeMismatch, std::string(what) + " needs n >= 1");
}

Integer as_integer(const Rational& r) {
  if (r.get_den() != 1) fail(ErrorKind::Internal, "expected an integer, got " + r.get_str());
  return r.get_num();
}

Rational constant_of(const Scalar& s) {
  if (!s.is_constant()) fail(ErrorKind::Internal, "expected a constant, got " + to_string(s));
  return s.constant_value();
}

}  // namespace

bool satisfies_invariants(const FractionTriple& f) {
  Rational s = f.p1 + 2 * f.p2;
  return f.p0 + f.p1 + f.p2 == 1 && 4 * f.p2 == s * s;
}

// ---------------------------------------------------------------- square grid

SquareMatrix square_grid_matrix(int n) {
  require_positive(n, "square grid");
  const int m = 2 * n;
  SquareMatrix p = ones(m);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) {
      int di = std::min(i, m + 1 - i), dj = std::min(j, m + 1 - j);
      if (di + dj <= n) p(i - 1, j - 1) = Scalar(0);
    }
  return p;
}

Scalar square_grid_partition(int n, const Scalar& lambda) {
  Scalar d = lambda_det(square_grid_matrix(n), lambda);
  return d / pow(lambda, static_cast<long>(n) * (n - 1) / 2);
}

// ---------------------------------------------------------------- Fibonacci

SquareMatrix tridiagonal_ones(int n) {
  require_positive(n, "Fibonacci strip");
  SquareMatrix p = SquareMatrix::Constant(n + 1, n + 1, Scalar(0));
  for (int i = 0; i <= n; ++i)
    for (int j = std::max(0, i - 1); j <= std::min(n, i + 1); ++j) p(i, j) = Scalar(1);
  return p;
}

Scalar fibonacci_det(int n, const Scalar& lambda) { return lambda_det(tridiagonal_ones(n), lambda); }

// ---------------------------------------------------------------- NW boundary

SquareMatrix nw_matrix(int n, int l) {
  if (n < 1 || l < 0 || l > n) fail(ErrorKind::SizeMismatch, "refined count needs 0 <= l <= n");
  SquareMatrix p = ones(n + 1);
  for (int j = 0; j <= n; ++j) p(0, j) = Scalar(j == l ? 1 : 0);
  return p;
}

Scalar refined_nw_closed(int n, int l, const Scalar& lambda) {
  return Scalar(Rational(binomial(n, l))) * pow(lambda, l) * pow(Scalar(1) + lambda, static_cast<long>(n) * (n - 1) / 2);
}

Scalar refined_nw(int n, int l, const Scalar& lambda) {
  Scalar d = lambda_det(nw_matrix(n, l), lambda);
  if (!(d == refined_nw_closed(n, l, lambda)))
    fail(ErrorKind::Internal, "refined NW count disagrees with the closed form: " + to_string(d));
  return d;
}

// ---------------------------------------------------------------- holey diamond

SquareMatrix centered_matrix(int m, const Scalar& t) {
  if (m < 1 || m % 2 == 0) fail(ErrorKind::SizeMismatch, "central entry needs odd order");
  SquareMatrix a = ones(m);
  a(m / 2, m / 2) = t;
  return a;
}

Scalar holey_partition(int n, const Scalar& t) {
  require_positive(n, "holey diamond");
  if (n % 2 == 0) return lambda_det(centered_matrix(n + 1, t), Scalar(1));
  return Scalar(pow2(n)) * lambda_det(centered_matrix(n, t.inverse()), Scalar(1));
}

Scalar holey_partition_direct(int n, const Scalar& t) {
  require_positive(n, "holey diamond");
  if (n % 2 == 0) return cond_pq(centered_matrix(n + 1, t), ones(n), Scalar(1));
  return cond_pq(ones(n + 1), centered_matrix(n, t), Scalar(1));
}

Rational holey_alpha(int n) {
  if (n < 0) fail(ErrorKind::SizeMismatch, "negative order");
  if (n % 2) return -holey_alpha(n - 1);
  if (n % 4) return Rational(0);
  Integer c = binomial(n / 2, n / 4);
  return Rational(c * c) * pow2(-n);
}

FractionTriple holey_closed_form(int n) {
  if (n % 2) {
    FractionTriple e = holey_closed_form(n - 1);
    return {e.p2, e.p1, e.p0};
  }
  Rational a = holey_alpha(n);
  Rational p0 = (1 + a) * (1 + a) / 4, p2 = (1 - a) * (1 - a) / 4;
  return {p0, 1 - p0 - p2, p2};
}

FractionTriple holey_fractions(int n) {
  const std::string name = fresh_variable("t", {});
  Scalar t = Scalar::var(name);
  Scalar total(pow2(static_cast<long>(n) * (n + 1) / 2));
  Scalar scaled = holey_partition(n, t) * t / total;
  if (!scaled.is_polynomial()) fail(ErrorKind::Internal, "t T_n[t] is not a polynomial in t");
  ScalarPoly c = as_univariate(scaled, name);
  if (c.size() > 3) fail(ErrorKind::Internal, "t T_n[t] has degree above 2");
  c.resize(3, Scalar(0));
  FractionTriple f{constant_of(c[2]), constant_of(c[1]), constant_of(c[0])};
  if (!(f == holey_closed_form(n)))
    fail(ErrorKind::Internal, "holey fractions disagree with the closed form at n = " + std::to_string(n));
  return f;
}

Rational p0_minus_p2_sum(int n) {
  if (n < 0 || n % 2) fail(ErrorKind::SizeMismatch, "the central-face sum needs n even");
  const int m = n / 2;
  Rational sum(0), q(1);  // q = (-1/4)^k
  for (int k = 0; k <= m; ++k) {
    Integer c = binomial(2 * k, k);
    sum += q * Rational(binomial(m + k, 2 * k) * c * c);
    q *= Rational(-1, 4);
  }
  return m % 2 ? Rational(-sum) : sum;
}

Integer two_enum_refined(int n, int l) { return as_integer(constant_of(refined_nw(n, l, Scalar(1)))); }

Integer two_enum_holey(int n, int i) {
  if (i < 0 || i > 2) fail(ErrorKind::SizeMismatch, "face dimer count must be 0, 1 or 2");
  FractionTriple f = holey_fractions(n);
  const Rational& p = i == 0 ? f.p0 : i == 1 ? f.p1 : f.p2;
  long e = n % 2 ? static_cast<long>(n) * (n - 1) / 2 : static_cast<long>(n) * (n + 1) / 2;
  return as_integer(p * pow2(e));
}

// ---------------------------------------------------------------- G_n

int gn_bound() { return 8; }

Scalar GnPolynomial::as_scalar(const Scalar& x) const {
  Scalar s(0), xp(1);
  for (const Integer& c : coeffs) {
    s += Scalar(Rational(c)) * xp;
    xp *= x;
  }
  return s;
}

Integer GnPolynomial::at_one() const {
  Integer s = 0;
  for (const Integer& c : coeffs) s += c;
  return s;
}

int diagonal_p(const IntMatrix& b) {
  const int n = static_cast<int>(b.rows());
  int count = 0;
  for (int d = 0; d < n; ++d) {
    if (b(d, d) != 0) continue;
    int right = 0, below = 0;
    for (int l = d + 1; l < n && !right; ++l) right = b(d, l);
    for (int k = d + 1; k < n && !below; ++k) below = b(k, d);
    if (right == 1 && below == 1) ++count;
  }
  return count;
}

int diagonal_minus(const IntMatrix& b) {
  int count = 0;
  for (Eigen::Index d = 0; d < b.rows(); ++d) count += b(d, d) == -1;
  return count;
}

std::vector<Integer> gn_asm_form(int n) {
  require_positive(n, "G_n");
  // (P_0, N_-^0, N_-) -> number of ASMs
  std::map<std::tuple<int, int, int>, long> hist;
  for_each_asm(n + 1, [&](const Asm& b) {
    ++hist[{diagonal_p(b.entries()), diagonal_minus(b.entries()), static_cast<int>(b.stats().n_minus)}];
  });
  std::vector<Integer> out(n + 1, Integer(0));
  for (const auto& [key, count] : hist) {
    auto [p0, m0, m] = key;
    // x^{p0} (1+x)^{m0} 2^{m - m0}
    Integer scale = Integer(count);
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), static_cast<mp_bitcnt_t>(m - m0));
    for (int k = 0; k <= m0; ++k) {
      if (p0 + k > n) fail(ErrorKind::Internal, "ASM form exceeds degree n");
      out[p0 + k] += scale * binomial(m0, k);
    }
  }
  return out;
}

GnPolynomial gn_polynomial(int n) {
  require_positive(n, "G_n");
  if (n > gn_bound()) fail(ErrorKind::SizeTooLarge, "G_n is bounded at n = " + std::to_string(gn_bound()));
  const std::string name = fresh_variable("x", {});
  Scalar x = Scalar::var(name);
  std::vector<Scalar> lambdas(2 * n - 1, Scalar(1)), mus(2 * n - 1, Scalar(1));
  lambdas[n - 1] = x;
  Scalar g = lambda_mu_det(ones(n + 1), lambdas, mus);
  if (!g.is_polynomial()) fail(ErrorKind::Internal, "G_n is not a polynomial");
  GnPolynomial out{n, {}};
  for (const Scalar& c : as_univariate(g, name)) out.coeffs.push_back(as_integer(constant_of(c)));
  if (n + 1 <= asm_list_bound()) {
    std::vector<Integer> form = gn_asm_form(n);
    std::vector<Integer> padded = out.coeffs;
    padded.resize(form.size(), Integer(0));
    if (padded != form) fail(ErrorKind::Internal, "G_" + std::to_string(n) + " disagrees with its ASM form");
    out.asm_checked = true;
  }
  return out;
}

namespace {

std::vector<double> roots_of(const std::vector<Integer>& c, bool* all_real) {
  std::vector<double> out;
  *all_real = true;
  if (c.size() < 2) return out;
  Eigen::VectorXd v(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) v[static_cast<Eigen::Index>(k)] = c[k].get_d();
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(v);
  for (const auto& r : solver.roots()) {
    if (std::abs(r.imag()) > 1e-6 * std::max(1.0, std::abs(r.real()))) *all_real = false;
    out.push_back(r.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

GnRootReport gn_root_report(const GnPolynomial& g, const GnPolynomial* next, const GnPolynomial* prev) {
  GnRootReport r;
  bool real = false;
  r.real_roots = roots_of(g.coeffs, &real);
  r.all_real_negative = real && std::all_of(r.real_roots.begin(), r.real_roots.end(), [](double x) { return x < 0; });
  if (next) {
    bool real_next = false;
    std::vector<double> rn = roots_of(next->coeffs, &real_next);
    // Each root of G_n lies strictly between consecutive roots of G_{n+1}.
    r.interlaces_next = real && real_next && rn.size() == r.real_roots.size() + 1;
    for (std::size_t k = 0; r.interlaces_next && k < r.real_roots.size(); ++k)
      r.interlaces_next = rn[k] < r.real_roots[k] && r.real_roots[k] < rn[k + 1];
  }
  if (prev && prev->coeffs.size() > 1 && !r.real_roots.empty())
    r.largest_ratio = std::abs(r.real_roots.front()) / prev->coeffs[1].get_d();
  return r;
}

}  // namespace lambdet
