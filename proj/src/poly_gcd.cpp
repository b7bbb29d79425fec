#include <algorithm>

#include "lambdet/error.hpp"
#include "lambdet/poly.hpp"

namespace lambdet {

namespace {

using ZTerm = ZPoly::TermT;

Integer content(const ZPoly& f) {
  Integer g = 0;
  for (const auto& t : f.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Integer max_norm(const ZPoly& f) {
  Integer m = 0;
  for (const auto& t : f.terms())
    if (mpz_cmpabs(t.c.get_mpz_t(), m.get_mpz_t()) > 0) m = abs(t.c);
  return m;
}

ZPoly exact_ground_div(const ZPoly& f, const Integer& c) {
  if (c == 1) return f;
  std::vector<ZTerm> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), t.c.get_mpz_t(), c.get_mpz_t());
    out.push_back({t.m, std::move(q)});
  }
  return ZPoly::from_sorted(std::move(out));
}

ZPoly eval_at(const ZPoly& f, VarId v, const Integer& x) {
  std::uint32_t d = f.degree(v);
  std::vector<Integer> pw(d + 1);
  pw[0] = 1;
  for (std::uint32_t i = 1; i <= d; ++i) pw[i] = pw[i - 1] * x;
  std::vector<ZTerm> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) out.push_back({t.m.without(v), Integer(t.c * pw[t.m.exponent(v)])});
  return ZPoly::from_terms(std::move(out));
}

// Symmetric residue of c modulo x, in (-x/2, x/2].
Integer sym_mod(const Integer& c, const Integer& x) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
  if (2 * r > x) r -= x;
  return r;
}

// Reconstructs a polynomial in v from its image at v = x via x-adic digits.
ZPoly interpolate(ZPoly h, VarId v, const Integer& x) {
  std::vector<ZTerm> out;
  std::uint32_t k = 0;
  while (!h.is_zero()) {
    std::vector<ZTerm> digit, rest;
    for (const auto& t : h.terms()) {
      Integer g = sym_mod(t.c, x);
      Integer r;
      mpz_divexact(r.get_mpz_t(), Integer(t.c - g).get_mpz_t(), x.get_mpz_t());
      if (sgn(g) != 0) out.push_back({t.m * Monomial::of(v, k), g});
      if (sgn(r) != 0) rest.push_back({t.m, std::move(r)});
    }
    h = ZPoly::from_sorted(std::move(rest));
    ++k;
    if (k > 100000) fail(ErrorKind::Internal, "runaway gcd interpolation");
  }
  ZPoly r = ZPoly::from_terms(std::move(out));
  if (!r.is_zero() && sgn(r.lc()) < 0) r = -r;
  return r;
}

ZPoly primitive(const ZPoly& f) {
  if (f.is_zero()) return f;
  Integer c = content(f);
  if (sgn(f.lc()) < 0) c = -c;
  return exact_ground_div(f, c);
}

struct GcdTriple {
  ZPoly h, cf, cg;
};

struct HeuristicFailed {};

GcdTriple heu(const ZPoly& f0, const ZPoly& g0) {
  // Integer content.
  Integer cf = content(f0), cg = content(g0);
  Integer c;
  mpz_gcd(c.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  ZPoly f = exact_ground_div(f0, c), g = exact_ground_div(g0, c);

  if (f.is_constant() || g.is_constant()) {
    Integer a = content(f), b = content(g);
    Integer d;
    mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return {ZPoly(Integer(c * d)), exact_ground_div(f, d), exact_ground_div(g, d)};
  }

  // Monomial content.
  Monomial mf = f.monomial_content(), mg = g.monomial_content();
  Monomial mc = mf.gcd(mg);
  if (!mf.is_one() || !mg.is_one()) {
    ZPoly fr = f.divided_by_monomial(mf), gr = g.divided_by_monomial(mg);
    GcdTriple r = heu(fr, gr);
    ZPoly h = r.h.shifted(mc).scaled(c);
    return {h, r.cf.shifted(mc.quotient_of(mf)), r.cg.shifted(mc.quotient_of(mg))};
  }

  std::vector<VarId> vf = f.variables(), vg = g.variables();
  bool shared = false;
  for (VarId v : vf)
    if (std::binary_search(vg.begin(), vg.end(), v)) shared = true;
  if (!shared) return {ZPoly(c), f, g};

  // Main variable: the one with the largest combined degree keeps the
  // evaluation sizes balanced.
  VarId v = vf.front();
  std::uint32_t best = 0;
  for (VarId w : vf) {
    std::uint32_t d = f.degree(w) + g.degree(w);
    if (d > best) {
      best = d;
      v = w;
    }
  }

  Integer fn = max_norm(f), gn = max_norm(g);
  Integer b = 2 * std::min(fn, gn) + 29;
  Integer sq = sqrt(b);
  Integer x = std::min(b, Integer(99 * sq));
  Integer alt = 2 * std::min(Integer(fn / abs(f.lc())), Integer(gn / abs(g.lc()))) + 2;
  x = std::max(x, alt);

  for (int attempt = 0; attempt < 6; ++attempt) {
    ZPoly ff = eval_at(f, v, x), gg = eval_at(g, v, x);
    if (!ff.is_zero() && !gg.is_zero()) {
      GcdTriple r = heu(ff, gg);
      ZPoly h = primitive(interpolate(r.h, v, x));
      if (auto qf = f.divide_exact(h)) {
        if (auto qg = g.divide_exact(h)) return {h.scaled(c), *qf, *qg};
      }
      ZPoly cff = interpolate(r.cf, v, x);
      if (!cff.is_zero()) {
        if (auto hh = f.divide_exact(cff)) {
          if (auto qg = g.divide_exact(*hh)) return {hh->scaled(c), cff, *qg};
        }
      }
      ZPoly cfg = interpolate(r.cg, v, x);
      if (!cfg.is_zero()) {
        if (auto hh = g.divide_exact(cfg)) {
          if (auto qf = f.divide_exact(*hh)) return {hh->scaled(c), *qf, cfg};
        }
      }
    }
    x = 73794 * x * sqrt(sqrt(x)) / 27011;
  }
  throw HeuristicFailed{};
}

// Univariate view in v: coefficients indexed by power.
std::vector<Poly> as_univariate(const Poly& f, VarId v) {
  std::uint32_t d = f.degree(v);
  std::vector<std::vector<Poly::TermT>> parts(d + 1);
  for (const auto& t : f.terms()) parts[t.m.exponent(v)].push_back({t.m.without(v), t.c});
  std::vector<Poly> out;
  out.reserve(d + 1);
  for (auto& p : parts) out.push_back(Poly::from_terms(std::move(p)));
  return out;
}

Poly from_univariate(const std::vector<Poly>& cs, VarId v) {
  Poly r;
  for (std::uint32_t k = 0; k < cs.size(); ++k) r += cs[k].shifted(Monomial::of(v, k));
  return r;
}

int udeg(const std::vector<Poly>& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (!a[i].is_zero()) return i;
  return -1;
}

Poly monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p.scaled(Rational(1) / p.lc());
}

Poly prs(const Poly& f, const Poly& g);

// Content of a univariate-view polynomial: gcd of its coefficients.
Poly ucontent(const std::vector<Poly>& a) {
  Poly c;
  for (const auto& x : a) {
    if (x.is_zero()) continue;
    c = c.is_zero() ? monic(x) : prs(c, x);
    if (c.is_constant()) return Poly(1L);
  }
  return c;
}

// Divides out the polynomial content c and the rational content.
std::vector<Poly> udiv_content(std::vector<Poly> a, const Poly& c) {
  if (!c.is_one()) {
    for (auto& x : a) {
      auto q = x.divide_exact(c);
      if (!q) fail(ErrorKind::Internal, "content division failed");
      x = std::move(*q);
    }
  }
  Integer l = 1, g = 0;
  for (const auto& x : a)
    for (const auto& t : x.terms()) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_num_mpz_t());
    }
  if (g != 0 && !(l == 1 && g == 1)) {
    Rational s(l, g);
    s.canonicalize();
    for (auto& x : a) x = x.scaled(s);
  }
  return a;
}

// Pseudo-remainder of a by b in the univariate view.
std::vector<Poly> uprem(std::vector<Poly> a, const std::vector<Poly>& b) {
  int db = udeg(b);
  const Poly& lb = b[db];
  int da = udeg(a);
  while (da >= db && da >= 0) {
    Poly la = a[da];
    for (auto& x : a) x = x * lb;
    for (int i = 0; i <= db; ++i) a[i + da - db] -= la * b[i];
    a[da] = Poly();
    da = udeg(a);
  }
  a.resize(std::max(da + 1, 0));
  return a;
}

Poly prs(const Poly& f, const Poly& g) {
  if (f.is_zero()) return monic(g);
  if (g.is_zero()) return monic(f);
  if (f.is_constant() || g.is_constant()) return Poly(1L);
  std::vector<VarId> vs = f.variables();
  for (VarId v : g.variables()) vs.push_back(v);
  std::sort(vs.begin(), vs.end());
  VarId v = vs.front();
  auto a = as_univariate(f, v), b = as_univariate(g, v);
  Poly ca = ucontent(a), cb = ucontent(b);
  Poly c = prs(ca, cb);
  a = udiv_content(a, ca);
  b = udiv_content(b, cb);
  if (udeg(a) < udeg(b)) std::swap(a, b);
  while (true) {
    if (udeg(b) < 0) break;
    if (udeg(b) == 0) return monic(c);
    auto r = uprem(a, b);
    a = std::move(b);
    if (udeg(r) < 0) {
      b.clear();
      break;
    }
    b = udiv_content(r, ucontent(r));
  }
  return monic(c * from_univariate(a, v));
}

}  // namespace

namespace detail {

std::optional<ZPoly> heuristic_gcd(const ZPoly& f, const ZPoly& g) {
  try {
    return primitive(heu(f, g).h);
  } catch (const HeuristicFailed&) {
    return std::nullopt;
  }
}

Poly prs_gcd(const Poly& f, const Poly& g) { return prs(f, g); }

}  // namespace detail

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant()) return Poly(1L);
  if (a.size() == 1 || b.size() == 1) {
    Monomial m = a.monomial_content().gcd(b.monomial_content());
    return Poly::monomial(m, Rational(1));
  }
  if (a == b) return monic(a);
  ZPoly za = to_primitive_z(a), zb = to_primitive_z(b);
  if (za == zb) return monic(a);
  try {
    return monic(to_q(heu(za, zb).h));
  } catch (const HeuristicFailed&) {
    return prs(a, b);
  }
}

}  // namespace lambdet
