#include "lambdet/modular.hpp"

#include <cmath>
#include <mutex>
#include <tuple>

#include "lambdet/error.hpp"

namespace lambdet {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  for (a %= p; e; e >>= 1, a = mulmod(a, a, p))
    if (e & 1) r = mulmod(r, a, p);
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (n % q == 0) return n == q;
  u64 d = n - 1;
  int s = 0;
  while (!(d & 1)) d >>= 1, ++s;
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s && composite; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

u64 inverse_mod(u64 a, u64 p) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a);
  while (nr) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::pair(nt, t - q * nt);
    std::tie(r, nr) = std::pair(nr, r - q * nr);
  }
  return static_cast<u64>(t < 0 ? t + static_cast<std::int64_t>(p) : t);
}

// Montgomery arithmetic with R = 2^64. Residues are kept lazily in
// [0, 2p), which needs p < 2^62.
struct Mont {
  u64 p, twop, ninv, r2, r3;
  explicit Mont(u64 prime) : p(prime), twop(2 * prime) {
    u64 inv = p;
    for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
    ninv = ~inv + 1;
    u64 r1 = static_cast<u64>((static_cast<u128>(1) << 64) % p);
    r2 = mulmod(r1, r1, p);
    r3 = mulmod(r2, r1, p);
  }
  u64 mul(u64 a, u64 b) const {
    u128 t = static_cast<u128>(a) * b;
    u64 m = static_cast<u64>(t) * ninv;
    return static_cast<u64>((t + static_cast<u128>(m) * p) >> 64);
  }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= twop ? s - twop : s;
  }
  u64 sub(u64 a, u64 b) const { return add(a, twop - b); }
  bool is_zero(u64 a) const { return a == 0 || a == p; }
  u64 in(u64 a) const { return mul(a, r2); }
  // Canonical plain residue.
  u64 out(u64 a) const {
    u64 r = mul(a, 1);
    return r >= p ? r - p : r;
  }
  // Montgomery form in, Montgomery form out.
  u64 inv(u64 a) const { return mul(inverse_mod(a >= p ? a - p : a, p), r3); }
};

u64 residue_of(const mpz_class& z, u64 p) {
  if (z.fits_slong_p()) {
    long v = z.get_si();
    u64 a = static_cast<u64>(v < 0 ? -(v + 1) : v) + (v < 0);
    if (a >= p) a %= p;
    return v < 0 && a ? p - a : a;
  }
  return mpz_fdiv_ui(z.get_mpz_t(), p);
}

double log2_abs(const mpz_class& z) {
  if (z == 0) return 0;
  long e;
  double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

u64 splitmix(u64& state) {
  u64 z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

enum class Outcome { Ok, BadPrime, ZeroDivisor, Pole };

// Condensation over Z/p on Montgomery residues. Input slots: interior of a0
// (row-major from (1,1)), then a1, then the weight table.
//
// A zero divisor is a lambda-minor that vanishes, which small random entries
// make common over Q. It blocks one cell two levels up. That cell is the
// value of a k x k block, a Laurent polynomial with exponents in {-1, 0, 1}
// in each entry, so (x + d) f(x + d) is quadratic in d for any entry x of
// the vanishing minor; three nearby evaluations of the block recover it.
struct Kernel {
  Eigen::Index m;
  const WeightIndex& index;
  bool homogeneous;
  static constexpr int max_depth = 8;
  // Cell updates left for one run; repairs of repairs can otherwise go exponential.
  mutable long long budget = 0;

  std::size_t a1_base() const { return static_cast<std::size_t>((m - 1) * (m - 1)); }
  std::size_t table_base() const { return a1_base() + static_cast<std::size_t>(m * m); }
  std::size_t a0_slot(Eigen::Index i, Eigen::Index j) const { return static_cast<std::size_t>((i - 1) * (m - 1) + j - 1); }
  std::size_t a1_slot(Eigen::Index i, Eigen::Index j) const { return a1_base() + static_cast<std::size_t>(i * m + j); }

  // in is restored before returning; out is in Montgomery form.
  Outcome run(const Mont& M, std::vector<u64>& in, u64& out) const {
    budget = 40LL * m * m * m + 100000;
    return block(M, in, 0, 0, m, true, 0, out);
  }

  Outcome block(const Mont& M, std::vector<u64>& in, Eigen::Index r, Eigen::Index c, Eigen::Index s, bool repair_top,
                int depth, u64& out) const {
    return homogeneous ? block_with<true>(M, in, r, c, s, repair_top, depth, out)
                       : block_with<false>(M, in, r, c, s, repair_top, depth, out);
  }

  // The s x s block of a1 at (r, c). With repair_top unset a zero divisor of
  // the final cell is reported instead of repaired.
  template <bool Homogeneous>
  Outcome block_with(const Mont& M, std::vector<u64>& in, Eigen::Index r, Eigen::Index c, Eigen::Index s,
                     bool repair_top, int depth, u64& out) const {
    budget -= static_cast<long long>(s) * s * s;
    if (budget < 0) return Outcome::ZeroDivisor;
    const Eigen::Index w = s + 1;
    const u64 one = M.in(1);
    std::vector<u64> prev(w * w, one), cur(s * s), next(s * s), pre(s * s);
    for (Eigen::Index i = 1; i < s; ++i)
      for (Eigen::Index j = 1; j < s; ++j) prev[i * w + j] = in[a0_slot(r + i, c + j)];
    for (Eigen::Index i = 0; i < s; ++i)
      for (Eigen::Index j = 0; j < s; ++j) cur[i * s + j] = in[a1_slot(r + i, c + j)];
    const u64* wt = in.data() + table_base();
    Eigen::Index pw = w, cw = s;  // row strides
    for (Eigen::Index k = 2; k <= s; ++k) {
      const Eigen::Index t = s + 1 - k;
      // Forward: numerators, and prefix products of the divisors
      // prev(i+1, j+1) in four interleaved chains.
      u64 acc[4] = {one, one, one, one};
      for (Eigen::Index i = 0; i < t; ++i) {
        const u64* r0 = &cur[i * cw];
        const u64* r1 = &cur[(i + 1) * cw];
        const u64* dv = &prev[(i + 1) * pw + 1];
        u64* nx = &next[i * t];
        u64* pr = &pre[i * t];
        for (Eigen::Index j = 0; j < t; ++j) {
          if (M.is_zero(dv[j])) {
            if ((k == s && !repair_top) || depth >= max_depth) return Outcome::ZeroDivisor;
            Outcome o = repair(M, in, k, r + i, c + j, depth + 1, nx[j]);
            if (o != Outcome::Ok) return o;
            continue;
          }
          u64 diag = M.mul(r0[j], r1[j + 1]);
          u64 anti = M.mul(r1[j], r0[j + 1]);
          if constexpr (Homogeneous) {
            anti = M.mul(anti, wt[0]);
          } else {
            auto [mu, la] = index(k, r + i, c + j);
            if (mu >= 0) diag = M.mul(diag, wt[mu]);
            anti = M.mul(anti, wt[la]);
          }
          nx[j] = M.add(diag, anti);
          int ch = static_cast<int>(j & 3);
          pr[j] = acc[ch];
          acc[ch] = M.mul(acc[ch], dv[j]);
        }
      }
      // Backward: one inversion per chain, then divide in place. Repaired
      // cells are skipped.
      u64 ia[4];
      for (int ch = 0; ch < 4; ++ch) ia[ch] = M.inv(acc[ch]);
      for (Eigen::Index i = t; i-- > 0;) {
        const u64* dv = &prev[(i + 1) * pw + 1];
        u64* nx = &next[i * t];
        const u64* pr = &pre[i * t];
        for (Eigen::Index j = t; j-- > 0;) {
          if (M.is_zero(dv[j])) continue;
          int ch = static_cast<int>(j & 3);
          nx[j] = M.mul(nx[j], M.mul(ia[ch], pr[j]));
          ia[ch] = M.mul(ia[ch], dv[j]);
        }
      }
      prev.swap(cur);
      pw = cw;
      cur.swap(next);
      cw = t;
    }
    out = cur[0];
    return Outcome::Ok;
  }

  // Level-k cell at global (R, C) whose divisor, the level-(k-2) cell at
  // (R+1, C+1), is zero. Entries of the divisor block move along a random
  // line x_s + d r_s: first the centre alone, then the whole block, since a
  // minor can be independent of any single entry.
  Outcome repair(const Mont& M, std::vector<u64>& in, Eigen::Index k, Eigen::Index R, Eigen::Index C, int depth,
                 u64& out) const {
    // k = 2 and 3 divide by an input entry; zero there is a bad prime.
    if (k < 4) return Outcome::BadPrime;
    const Eigen::Index q = k - 2, mid = (q - 1) / 2;
    std::vector<std::size_t> centre{a1_slot(R + 1 + mid, C + 1 + mid)}, whole;
    for (Eigen::Index i = 0; i < q; ++i)
      for (Eigen::Index j = 0; j < q; ++j) whole.push_back(a1_slot(R + 1 + i, C + 1 + j));
    u64 seed = M.p ^ (static_cast<u64>(R) << 40) ^ (static_cast<u64>(C) << 20) ^ static_cast<u64>(k * 8 + depth);
    for (const auto* slots : {&centre, &whole}) {
      // The whole block only for repairs of the original cells.
      if (slots == &whole && (q == 1 || depth > 1)) break;
      const std::size_t n = slots->size(), need = 2 * n + 1;
      std::vector<u64> x(n), dir(n);
      u64 xprod = M.in(1);
      for (std::size_t s = 0; s < n; ++s) {
        x[s] = in[(*slots)[s]];
        dir[s] = M.in(1 + splitmix(seed) % (M.p - 1));
        xprod = M.mul(xprod, x[s]);
      }
      if (M.is_zero(xprod)) continue;
      // (prod_s (x_s + d r_s)) f is a polynomial in d of degree <= 2n.
      std::vector<u64> d, g;
      for (std::size_t attempt = 0; attempt < need + 4 && d.size() < need; ++attempt) {
        u64 dm = M.in(1 + splitmix(seed) % (M.p - 1)), lift = M.in(1);
        for (std::size_t s = 0; s < n; ++s) {
          in[(*slots)[s]] = M.add(x[s], M.mul(dm, dir[s]));
          lift = M.mul(lift, in[(*slots)[s]]);
        }
        u64 f;
        Outcome o = M.is_zero(lift) ? Outcome::ZeroDivisor : block(M, in, R, C, k, false, depth, f);
        for (std::size_t s = 0; s < n; ++s) in[(*slots)[s]] = x[s];
        if (o != Outcome::Ok) continue;
        d.push_back(dm);
        g.push_back(M.mul(f, lift));
      }
      if (d.size() < need) continue;
      // Lagrange at d = 0.
      u64 g0 = 0;
      bool distinct = true;
      for (std::size_t a = 0; a < need && distinct; ++a) {
        u64 num = M.in(1), den = M.in(1);
        for (std::size_t b = 0; b < need; ++b) {
          if (b == a) continue;
          num = M.mul(num, d[b]);
          den = M.mul(den, M.sub(d[b], d[a]));
        }
        distinct = !M.is_zero(den);
        if (distinct) g0 = M.add(g0, M.mul(g[a], M.mul(num, M.inv(den))));
      }
      if (!distinct) continue;
      out = M.mul(g0, M.inv(xprod));
      return Outcome::Ok;
    }
    return Outcome::ZeroDivisor;
  }
};

// Monomial coefficients of the polynomial through (xs, ys), plain residues.
std::vector<u64> interpolate(const std::vector<u64>& xs, std::vector<u64> ys, u64 p) {
  const std::size_t n = xs.size();
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      u64 num = (ys[i] + p - ys[i - 1]) % p, den = (xs[i] + p - xs[i - j]) % p;
      ys[i] = mulmod(num, inverse_mod(den, p), p);
    }
  std::vector<u64> c(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    // c = c * (x - xs[i]) + ys[i]
    for (std::size_t d = n - 1; d > 0; --d) c[d] = (c[d - 1] + p - mulmod(c[d], xs[i], p)) % p;
    c[0] = (p - mulmod(c[0], xs[i], p)) % p;
    c[0] = (c[0] + ys[i]) % p;
  }
  return c;
}

struct Driver {
  Kernel kern;
  std::vector<const Rational*> vals;
  std::vector<bool> zero_slot;
  // Zero entries, all moved by one shared regularizer eps. The value is the
  // eps^0 coefficient of a Laurent polynomial with at most z negative powers.
  std::vector<std::size_t> eps_slots;

  Outcome residue(u64 p, u64& r) const {
    Mont M(p);
    const std::size_t nv = vals.size(), nfaces = kern.table_base();
    // Plain residues of the inputs; denominators inverted in one batch.
    std::vector<u64> res(nv), dpre(nv);
    u64 acc = M.in(1);
    for (std::size_t t = 0; t < nv; ++t) {
      u64 d = residue_of(vals[t]->get_den(), p);
      if (!d) return Outcome::BadPrime;
      res[t] = M.in(d);
      dpre[t] = acc;
      acc = M.mul(acc, res[t]);
    }
    u64 ia = M.inv(acc);
    for (std::size_t t = nv; t-- > 0;) {
      u64 dinv = M.mul(ia, dpre[t]);
      ia = M.mul(ia, res[t]);
      res[t] = M.out(M.mul(M.in(residue_of(vals[t]->get_num(), p)), dinv));
      if (t < nfaces && !zero_slot[t] && !res[t]) return Outcome::BadPrime;
    }
    std::vector<u64> in(nv);
    for (std::size_t t = 0; t < nv; ++t) in[t] = M.in(res[t]);
    if (eps_slots.empty()) {
      u64 out;
      if (kern.run(M, in, out) != Outcome::Ok) return Outcome::BadPrime;
      r = M.out(out);
      return Outcome::Ok;
    }
    // x^z f(x) is a polynomial of degree 2z; read off its x^z coefficient.
    const int z = static_cast<int>(eps_slots.size());
    for (int attempt = 0; attempt < 3; ++attempt) {
      u64 seed = p ^ (0x5851f42d4c957f2dULL * static_cast<u64>(attempt + 1));
      std::vector<u64> xs, ys;
      while (xs.size() < static_cast<std::size_t>(2 * z + 1)) {
        u64 x = splitmix(seed) % p;
        bool dup = x == 0;
        for (u64 y : xs) dup |= y == x;
        if (dup) continue;
        u64 xm = M.in(x);
        for (std::size_t s : eps_slots) in[s] = xm;
        u64 out;
        if (kern.run(M, in, out) != Outcome::Ok) break;
        xs.push_back(x);
        ys.push_back(mulmod(M.out(out), powmod(x, static_cast<u64>(z), p), p));
      }
      if (xs.size() < static_cast<std::size_t>(2 * z + 1)) continue;
      auto c = interpolate(xs, ys, p);
      for (int e = 0; e < z; ++e)
        if (c[e]) return Outcome::Pole;
      r = c[z];
      return Outcome::Ok;
    }
    return Outcome::BadPrime;
  }
};

}  // namespace

namespace detail {

u64 nth_prime62(std::size_t k) {
  static std::mutex mu;
  static std::vector<u64> primes;
  std::lock_guard lock(mu);
  u64 c = primes.empty() ? (u64{1} << 62) - 1 : primes.back() - 2;
  while (primes.size() <= k) {
    while (!is_prime(c)) c -= 2;
    primes.push_back(c);
    c -= 2;
  }
  return primes[k];
}

}  // namespace detail

std::optional<Rational> condense_modular(const MatrixX<Rational>& a0, const MatrixX<Rational>& a1,
                                         const std::vector<Rational>& table, const WeightIndex& index) {
  const Eigen::Index m = a1.rows();
  if (m == 0) return Rational(1);
  if (m == 1) return a1(0, 0);
  const long factors = static_cast<long>(m) * (m - 1) / 2;

  Driver drv{Kernel{m, index, table.size() == 1 && index(2, 0, 0).first < 0}, {}, {}, {}};
  for (Eigen::Index i = 1; i < m; ++i)
    for (Eigen::Index j = 1; j < m; ++j) drv.vals.push_back(&a0(i, j));
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) drv.vals.push_back(&a1(i, j));
  for (const auto& x : table) drv.vals.push_back(&x);
  drv.zero_slot.assign(drv.vals.size(), false);
  for (std::size_t t = 0; t < drv.kern.table_base(); ++t)
    if (*drv.vals[t] == 0) {
      drv.zero_slot[t] = true;
      drv.eps_slots.push_back(t);
    }

  // The value is I / (D * L^factors) with D the product of numerators and
  // denominators of the nonzero faces and L the weight denominators' lcm.
  mpz_class D = 1, L = 1;
  double bits = static_cast<double>(factors) + 2;
  for (std::size_t t = 0; t < drv.kern.table_base(); ++t) {
    const Rational& x = *drv.vals[t];
    if (x == 0) continue;
    D *= x.get_num();
    D *= x.get_den();
    bits += 2 * std::max(log2_abs(x.get_num()), log2_abs(x.get_den()));
  }
  double top = 0;
  for (const auto& x : table) {
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), x.get_den_mpz_t());
    top = std::max(top, log2_abs(x.get_num()));
  }
  bits += static_cast<double>(factors) * (log2_abs(L) + top);
  mpz_class Lk;
  mpz_pow_ui(Lk.get_mpz_t(), L.get_mpz_t(), static_cast<unsigned long>(factors));
  const mpz_class scale = D * Lk;

  std::size_t k = 0;
  int bad_streak = 0;
  // Residue of I at the next usable prime; nullopt to give up.
  auto next_residue = [&](u64& p, u64& r) -> bool {
    for (;;) {
      p = detail::nth_prime62(k++);
      if (mpz_fdiv_ui(scale.get_mpz_t(), p) == 0) continue;
      Outcome o = drv.residue(p, r);
      if (o == Outcome::Ok) {
        bad_streak = 0;
        r = mulmod(r, mpz_fdiv_ui(scale.get_mpz_t(), p), p);
        return true;
      }
      if (o == Outcome::Pole) fail(ErrorKind::UndefinedDeterminant, "regularized limit has a pole");
      if (++bad_streak > 8) return false;
    }
  };
  mpz_class X = 0, mod = 1;
  while (log2_abs(mod) < bits + 1) {
    u64 p, r;
    if (!next_residue(p, r)) return std::nullopt;
    // Garner step.
    u64 xm = mpz_fdiv_ui(X.get_mpz_t(), p), mm = mpz_fdiv_ui(mod.get_mpz_t(), p);
    u64 t = mulmod((r + p - xm) % p, inverse_mod(mm, p), p);
    mpz_addmul_ui(X.get_mpz_t(), mod.get_mpz_t(), t);
    mpz_mul_ui(mod.get_mpz_t(), mod.get_mpz_t(), p);
  }
  mpz_class half = mod / 2;
  if (X > half) X -= mod;
  // One check prime; a mismatch means an input assumption failed.
  u64 p, r;
  if (!next_residue(p, r)) return std::nullopt;
  mpz_class xr;
  mpz_fdiv_r_ui(xr.get_mpz_t(), X.get_mpz_t(), p);
  if (xr.get_ui() != r) return std::nullopt;
  Rational out(X, scale);
  out.canonicalize();
  return out;
}

}  // namespace lambdet
