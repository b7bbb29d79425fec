#include "lambdet/rr.hpp"

#include <map>

#include "lambdet/condense.hpp"
#include "lambdet/error.hpp"

namespace lambdet {

namespace {

void check_pq(const SquareMatrix& p, const SquareMatrix& q) {
  if (p.rows() != p.cols() || q.rows() != q.cols() || p.rows() != q.rows() + 1)
    fail(ErrorKind::SizeMismatch, "P must be (n+1)x(n+1) and Q nxn");
  if (q.rows() < 1) fail(ErrorKind::SizeMismatch, "n must be positive");
}

// Multiplies num/den by a^e for e in {-1, 0, 1}; zero entries only count
// towards eps.
void absorb(const Scalar& a, int e, Scalar& num, Scalar& den, long& eps) {
  if (e == 0) return;
  if (a.is_zero()) {
    eps += e;
    return;
  }
  if (e > 0)
    num *= a;
  else
    den *= a;
}

Scalar asm_monomial(const SquareMatrix& p, const Asm& b, const SquareMatrix* q, const Asm* bp, long& eps) {
  Scalar num(1), den(1);
  eps = 0;
  for (int i = 1; i <= b.n(); ++i)
    for (int j = 1; j <= b.n(); ++j) absorb(p(i - 1, j - 1), b.at(i, j), num, den, eps);
  if (q)
    for (int i = 1; i <= bp->n(); ++i)
      for (int j = 1; j <= bp->n(); ++j) absorb((*q)(i - 1, j - 1), -bp->at(i, j), num, den, eps);
  return den.is_one() ? num : num / den;
}

// Collects a Laurent polynomial in a shared regularizer eps and returns its
// eps^0 coefficient; a surviving negative power is a genuine pole.
class EpsSum {
 public:
  void add(long eps, Scalar v) {
    if (eps > 0) return;
    auto& slot = parts_[eps];
    slot += v;
  }
  Scalar value() const {
    for (const auto& [e, v] : parts_)
      if (e < 0 && !v.is_zero()) fail(ErrorKind::UndefinedDeterminant, "pole from zero entries in the ASM sum");
    auto it = parts_.find(0);
    return it == parts_.end() ? Scalar() : it->second;
  }

 private:
  std::map<long, Scalar> parts_;
};

// lambda^e for e >= 0, with a small cache.
class Powers {
 public:
  explicit Powers(Scalar base) : p_{Scalar(1)}, base_(std::move(base)) {}
  const Scalar& operator()(long e) {
    if (e < 0) fail(ErrorKind::Internal, "negative lambda exponent");
    while (static_cast<long>(p_.size()) <= e) p_.push_back(p_.back() * base_);
    return p_[e];
  }

 private:
  std::vector<Scalar> p_;
  Scalar base_;
};

}  // namespace

Scalar rr_det(const SquareMatrix& a, const Scalar& lambda) {
  if (a.rows() != a.cols() || a.rows() < 1) fail(ErrorKind::SizeMismatch, "matrix must be square and nonempty");
  Powers lam(lambda), onep(Scalar(1) + lambda);
  EpsSum sum;
  for_each_asm(static_cast<int>(a.rows()), [&](const Asm& b) {
    long eps;
    Scalar m = asm_monomial(a, b, nullptr, nullptr, eps);
    if (eps > 0) return;
    sum.add(eps, lam(b.stats().p_exp) * onep(b.stats().n_minus) * m);
  });
  return sum.value();
}

void for_each_rr_term(const SquareMatrix& p, const SquareMatrix& q, RrForm form,
                      const std::function<void(const WeightedAsmTerm&)>& visit) {
  check_pq(p, q);
  const int n = static_cast<int>(q.rows());
  const long corner_base = static_cast<long>(n + 1) * (n + 1);
  auto emit = [&](const Asm& b, const Asm& bp, long exponent) {
    WeightedAsmTerm t{b, bp, exponent, Scalar(), 0};
    t.monomial = asm_monomial(p, b, &q, &bp, t.eps_power);
    visit(t);
  };
  if (form == RrForm::Max) {
    for_each_asm(n, [&](const Asm& bp) {
      for (const auto& c : compatible_set(bp, Direction::Larger)) emit(c.m, bp, bp.stats().p_exp + c.delta);
    });
    return;
  }
  for_each_asm(n + 1, [&](const Asm& b) {
    for (const auto& c : compatible_set(b, Direction::Smaller)) {
      long e = form == RrForm::Min ? b.stats().p_exp + c.delta
                                   : corner_base + c.m.corner().total() - b.corner().total();
      emit(b, c.m, e);
    }
  });
}

std::vector<WeightedAsmTerm> rr_terms(const SquareMatrix& p, const SquareMatrix& q, RrForm form) {
  check_pq(p, q);
  if (q.rows() + 1 > asm_list_bound()) fail(ErrorKind::SizeTooLarge, "term list exceeds ASM list bound");
  std::vector<WeightedAsmTerm> out;
  for_each_rr_term(p, q, form, [&](const WeightedAsmTerm& t) { out.push_back(t); });
  return out;
}

Scalar rr_general(const SquareMatrix& p, const SquareMatrix& q, const Scalar& lambda, RrForm form) {
  Powers lam(lambda);
  EpsSum sum;
  for_each_rr_term(p, q, form, [&](const WeightedAsmTerm& t) {
    if (t.eps_power > 0) return;
    sum.add(t.eps_power, lam(t.exponent) * t.monomial);
  });
  return sum.value();
}

long sigma_exponent(int i, int j) { return i + j - 1 - static_cast<long>(i) * j; }
long tau_exponent_doubled(int i, int j) { return i + j - 1 - 2L * i * j; }

namespace {

std::optional<Rational> rational_sqrt(const Scalar& s) {
  if (!s.is_constant()) return std::nullopt;
  Rational v = s.constant_value();
  if (sgn(v) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(v.get_num_mpz_t()) || !mpz_perfect_square_p(v.get_den_mpz_t())) return std::nullopt;
  Integer a, b;
  mpz_sqrt(a.get_mpz_t(), v.get_num_mpz_t());
  mpz_sqrt(b.get_mpz_t(), v.get_den_mpz_t());
  return Rational(a, b);
}

Poly halve_in(const Poly& p, VarId v) {
  std::vector<Poly::TermT> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    std::uint32_t e = t.m.exponent(v);
    if (e % 2) fail(ErrorKind::Internal, "odd power of " + var_name(v) + " survives");
    out.push_back({t.m.without(v) * Monomial::of(v, e / 2), t.c});
  }
  return Poly::from_terms(std::move(out));
}

}  // namespace

GaugeAbsorbed gauge_absorb(const SquareMatrix& p, const SquareMatrix& q, const Scalar& lambda) {
  check_pq(p, q);
  const int n = static_cast<int>(q.rows());
  GaugeAbsorbed g;
  Scalar s;
  if (auto r = rational_sqrt(lambda)) {
    s = Scalar(*r);
  } else {
    g.root = fresh_variable("sqrt_lambda", {&p, &q}, {lambda});
    s = Scalar::var(g.root);
  }
  g.P_lambda = p;
  g.Q_lambda = q;
  for (int i = 1; i <= n + 1; ++i)
    for (int j = 1; j <= n + 1; ++j) g.P_lambda(i - 1, j - 1) *= pow(s, 2 * sigma_exponent(i, j));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) g.Q_lambda(i - 1, j - 1) *= pow(s, tau_exponent_doubled(i, j));
  g.prefactor = pow(s, static_cast<long>(n) * n);
  return g;
}

Scalar eliminate_root(const Scalar& s, const std::string& root, const Scalar& lambda) {
  if (root.empty()) return s;
  auto id = find_var(root);
  if (!id) return s;
  Scalar halved = Scalar::fraction(halve_in(s.num(), *id), halve_in(s.den(), *id));
  return substitute(halved, {{root, lambda}});
}

Scalar gauge_evaluate(const GaugeAbsorbed& g, const Scalar& lambda) {
  Scalar t = g.prefactor * cond_pq(g.P_lambda, g.Q_lambda, Scalar(1));
  return eliminate_root(t, g.root, lambda);
}

std::vector<long> gauge_vertex_half_exponents(const AztecGraph& g) {
  const int n = g.n();
  std::vector<std::optional<long>> e(g.vertices().size());
  auto put = [&](int x2, int y2, long v) {
    auto idx = g.vertex_at(x2, y2);
    if (!idx) fail(ErrorKind::Internal, "q-face corner missing from the graph");
    if (e[*idx] && *e[*idx] != v) fail(ErrorKind::Internal, "vertex gauges disagree");
    e[*idx] = v;
  };
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      Face f = g.q_face(i, j);
      long gamma = static_cast<long>(i - 1) * (2 * j - 1);
      // Top is the side of p_{i,j+1}, left the side of p_{i,j}.
      put(2 * f.k - 1, 2 * f.l + 1, -gamma);
      put(2 * f.k + 1, 2 * f.l + 1, -(gamma + i + j - 1));
      put(2 * f.k - 1, 2 * f.l - 1, -(gamma + j - i));
      put(2 * f.k + 1, 2 * f.l - 1, -(gamma + 2 * j - 1));
    }
  std::vector<long> out;
  for (const auto& v : e) {
    if (!v) fail(ErrorKind::Internal, "vertex not touched by any q-face");
    out.push_back(*v);
  }
  return out;
}

bool gauge_edges_uniform(const AztecGraph& g) {
  auto w = gauge_vertex_half_exponents(g);
  for (const Edge& e : g.edges()) {
    long total = w[e.a] + w[e.b];
    for (const Face& f : g.edge_faces(e)) {
      auto [i, j] = g.matrix_position(f);
      total -= g.is_p_face(f) ? 2 * sigma_exponent(i, j) : tau_exponent_doubled(i, j);
    }
    if (total != (g.is_vertical(e) ? 1 : 0)) return false;
  }
  return true;
}

}  // namespace lambdet
