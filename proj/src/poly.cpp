#include "lambdet/poly.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_map>

#include "lambdet/error.hpp"

namespace lambdet {

namespace {

struct Registry {
  std::mutex mu;
  std::deque<std::string> names;
  std::unordered_map<std::string, VarId> ids;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

VarId var_id(std::string_view name) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  auto it = r.ids.find(std::string(name));
  if (it != r.ids.end()) return it->second;
  VarId id = static_cast<VarId>(r.names.size());
  r.names.emplace_back(name);
  r.ids.emplace(std::string(name), id);
  return id;
}

std::optional<VarId> find_var(std::string_view name) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  auto it = r.ids.find(std::string(name));
  if (it == r.ids.end()) return std::nullopt;
  return it->second;
}

std::string var_name(VarId id) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  if (id >= r.names.size()) fail(ErrorKind::Internal, "unknown variable id");
  return r.names[id];
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(VarId v, std::uint32_t e) {
  Monomial m;
  if (e > 0) {
    m.f_.push_back({v, e});
    m.deg_ = e;
  }
  return m;
}

std::uint32_t Monomial::exponent(VarId v) const {
  for (const auto& f : f_) {
    if (f.var == v) return f.exp;
    if (f.var > v) break;
  }
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  if (o.f_.empty()) return *this;
  if (f_.empty()) return o;
  Monomial r;
  r.deg_ = deg_ + o.deg_;
  std::size_t i = 0, j = 0;
  while (i < f_.size() && j < o.f_.size()) {
    if (f_[i].var == o.f_[j].var) {
      r.f_.push_back({f_[i].var, f_[i].exp + o.f_[j].exp});
      ++i;
      ++j;
    } else if (f_[i].var < o.f_[j].var) {
      r.f_.push_back(f_[i++]);
    } else {
      r.f_.push_back(o.f_[j++]);
    }
  }
  for (; i < f_.size(); ++i) r.f_.push_back(f_[i]);
  for (; j < o.f_.size(); ++j) r.f_.push_back(o.f_[j]);
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (deg_ > o.deg_) return false;
  std::size_t j = 0;
  for (const auto& f : f_) {
    while (j < o.f_.size() && o.f_[j].var < f.var) ++j;
    if (j == o.f_.size() || o.f_[j].var != f.var || o.f_[j].exp < f.exp) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial r;
  r.deg_ = o.deg_ - deg_;
  std::size_t i = 0;
  for (const auto& g : o.f_) {
    if (i < f_.size() && f_[i].var == g.var) {
      if (g.exp > f_[i].exp) r.f_.push_back({g.var, g.exp - f_[i].exp});
      ++i;
    } else {
      r.f_.push_back(g);
    }
  }
  return r;
}

Monomial Monomial::gcd(const Monomial& o) const {
  Monomial r;
  std::size_t j = 0;
  for (const auto& f : f_) {
    while (j < o.f_.size() && o.f_[j].var < f.var) ++j;
    if (j == o.f_.size()) break;
    if (o.f_[j].var == f.var) {
      std::uint32_t e = std::min(f.exp, o.f_[j].exp);
      r.f_.push_back({f.var, e});
      r.deg_ += e;
    }
  }
  return r;
}

Monomial Monomial::without(VarId v) const {
  Monomial r;
  for (const auto& f : f_) {
    if (f.var == v) continue;
    r.f_.push_back(f);
    r.deg_ += f.exp;
  }
  return r;
}

int compare(const Monomial& a, const Monomial& b) {
  if (a.deg_ != b.deg_) return a.deg_ < b.deg_ ? -1 : 1;
  std::size_t n = std::min(a.f_.size(), b.f_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.f_[i].var != b.f_[i].var) return a.f_[i].var < b.f_[i].var ? 1 : -1;
    if (a.f_[i].exp != b.f_[i].exp) return a.f_[i].exp > b.f_[i].exp ? 1 : -1;
  }
  if (a.f_.size() == b.f_.size()) return 0;
  return a.f_.size() > b.f_.size() ? 1 : -1;
}

void MonomialBuilder::mul(VarId v, std::uint32_t e) {
  if (e == 0) return;
  for (auto& f : f_) {
    if (f.var == v) {
      f.exp += e;
      return;
    }
  }
  f_.push_back({v, e});
}

Monomial MonomialBuilder::build() {
  std::sort(f_.begin(), f_.end(), [](const VarPow& a, const VarPow& b) { return a.var < b.var; });
  Monomial m;
  m.f_ = std::move(f_);
  for (const auto& f : m.f_) m.deg_ += f.exp;
  f_.clear();
  return m;
}

// ---------------------------------------------------------------- BasicPoly

template <class C>
BasicPoly<C> BasicPoly<C>::from_terms(std::vector<TermT> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const TermT& a, const TermT& b) { return compare(a.m, b.m) > 0; });
  BasicPoly p;
  p.t_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.t_.empty() && p.t_.back().m == t.m) {
      p.t_.back().c += t.c;
    } else {
      if (!p.t_.empty() && detail::coeff_is_zero(p.t_.back().c)) p.t_.pop_back();
      p.t_.push_back(std::move(t));
    }
  }
  if (!p.t_.empty() && detail::coeff_is_zero(p.t_.back().c)) p.t_.pop_back();
  return p;
}

template <class C>
bool BasicPoly<C>::is_one() const {
  return t_.size() == 1 && t_[0].m.is_one() && t_[0].c == 1;
}

template <class C>
std::uint32_t BasicPoly<C>::degree(VarId v) const {
  std::uint32_t d = 0;
  for (const auto& t : t_) d = std::max(d, t.m.exponent(v));
  return d;
}

template <class C>
std::uint32_t BasicPoly<C>::total_degree() const {
  return t_.empty() ? 0 : t_.front().m.degree();
}

template <class C>
std::vector<VarId> BasicPoly<C>::variables() const {
  std::vector<VarId> vs;
  for (const auto& t : t_)
    for (const auto& f : t.m.factors()) vs.push_back(f.var);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

template <class C>
bool BasicPoly<C>::has_var(VarId v) const {
  for (const auto& t : t_)
    if (t.m.exponent(v) > 0) return true;
  return false;
}

template <class C>
Monomial BasicPoly<C>::monomial_content() const {
  if (t_.empty()) return Monomial();
  Monomial g = t_.front().m;
  for (const auto& t : t_) {
    if (g.is_one()) break;
    g = g.gcd(t.m);
  }
  return g;
}

template <class C>
BasicPoly<C> BasicPoly<C>::coeff_of(VarId v, std::uint32_t k) const {
  std::vector<TermT> out;
  for (const auto& t : t_)
    if (t.m.exponent(v) == k) out.push_back({t.m.without(v), t.c});
  return from_terms(std::move(out));
}

template <class C>
BasicPoly<C> BasicPoly<C>::operator-() const {
  BasicPoly r = *this;
  for (auto& t : r.t_) t.c = -t.c;
  return r;
}

template <class C>
BasicPoly<C> BasicPoly<C>::combine(const BasicPoly& o, bool subtract) const {
  if (o.t_.empty()) return *this;
  if (t_.empty()) return subtract ? -o : o;
  BasicPoly r;
  r.t_.reserve(t_.size() + o.t_.size());
  std::size_t i = 0, j = 0;
  while (i < t_.size() && j < o.t_.size()) {
    int c = compare(t_[i].m, o.t_[j].m);
    if (c > 0) {
      r.t_.push_back(t_[i++]);
    } else if (c < 0) {
      r.t_.push_back(o.t_[j++]);
      if (subtract) r.t_.back().c = -r.t_.back().c;
    } else {
      C s = subtract ? C(t_[i].c - o.t_[j].c) : C(t_[i].c + o.t_[j].c);
      if (!detail::coeff_is_zero(s)) r.t_.push_back({t_[i].m, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < t_.size(); ++i) r.t_.push_back(t_[i]);
  for (; j < o.t_.size(); ++j) {
    r.t_.push_back(o.t_[j]);
    if (subtract) r.t_.back().c = -r.t_.back().c;
  }
  return r;
}

template <class C>
BasicPoly<C> BasicPoly<C>::mul_term(const Monomial& m, const C& c) const {
  if (detail::coeff_is_zero(c)) return BasicPoly();
  BasicPoly r;
  r.t_.reserve(t_.size());
  for (const auto& t : t_) r.t_.push_back({t.m * m, t.c * c});
  return r;
}

template <class C>
BasicPoly<C> BasicPoly<C>::scaled(const C& c) const {
  return mul_term(Monomial(), c);
}

template <class C>
BasicPoly<C> BasicPoly<C>::shifted(const Monomial& m) const {
  BasicPoly r = *this;
  for (auto& t : r.t_) t.m = t.m * m;
  return r;
}

template <class C>
BasicPoly<C> BasicPoly<C>::divided_by_monomial(const Monomial& m) const {
  if (m.is_one()) return *this;
  BasicPoly r = *this;
  for (auto& t : r.t_) t.m = m.quotient_of(t.m);
  return r;
}

template <class C>
BasicPoly<C> BasicPoly<C>::operator*(const BasicPoly& o) const {
  if (t_.empty() || o.t_.empty()) return BasicPoly();
  if (t_.size() == 1) return o.mul_term(t_[0].m, t_[0].c);
  if (o.t_.size() == 1) return mul_term(o.t_[0].m, o.t_[0].c);
  const BasicPoly& a = t_.size() <= o.t_.size() ? *this : o;
  const BasicPoly& b = t_.size() <= o.t_.size() ? o : *this;
  // Pairwise merge of the |a| shifted copies of b.
  std::vector<BasicPoly> parts;
  parts.reserve(a.t_.size());
  for (const auto& t : a.t_) parts.push_back(b.mul_term(t.m, t.c));
  while (parts.size() > 1) {
    std::vector<BasicPoly> next;
    next.reserve((parts.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(parts[i] + parts[i + 1]);
    if (parts.size() % 2) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  return std::move(parts.front());
}

template <class C>
BasicPoly<C> BasicPoly<C>::pow(unsigned e) const {
  BasicPoly r(1L), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

template <class C>
std::optional<BasicPoly<C>> BasicPoly<C>::divide_exact(const BasicPoly& d) const {
  if (d.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (t_.empty()) return BasicPoly();
  if (d.t_.size() == 1) {
    BasicPoly r;
    r.t_.reserve(t_.size());
    for (const auto& t : t_) {
      if (!d.t_[0].m.divides(t.m)) return std::nullopt;
      C q;
      if (!detail::coeff_div(t.c, d.t_[0].c, q)) return std::nullopt;
      r.t_.push_back({d.t_[0].m.quotient_of(t.m), std::move(q)});
    }
    return r;
  }
  if (d.total_degree() > total_degree()) return std::nullopt;
  for (VarId v : d.variables())
    if (d.degree(v) > degree(v)) return std::nullopt;
  // The trailing term of d must divide the trailing term of *this.
  if (!d.t_.back().m.divides(t_.back().m)) return std::nullopt;

  std::vector<TermT> q;
  BasicPoly rem = *this;
  const TermT& dl = d.t_.front();
  while (!rem.t_.empty()) {
    const TermT& rl = rem.t_.front();
    if (!dl.m.divides(rl.m)) return std::nullopt;
    C c;
    if (!detail::coeff_div(rl.c, dl.c, c)) return std::nullopt;
    Monomial m = dl.m.quotient_of(rl.m);
    rem = rem - d.mul_term(m, c);
    q.push_back({std::move(m), std::move(c)});
  }
  BasicPoly r;
  r.t_ = std::move(q);
  return r;
}

template <class C>
bool BasicPoly<C>::operator==(const BasicPoly& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (std::size_t i = 0; i < t_.size(); ++i)
    if (!(t_[i].m == o.t_[i].m) || t_[i].c != o.t_[i].c) return false;
  return true;
}

template class BasicPoly<Integer>;
template class BasicPoly<Rational>;

// ---------------------------------------------------------------- conversions

ZPoly to_primitive_z(const Poly& p, Rational* unit) {
  if (p.is_zero()) {
    if (unit) *unit = 0;
    return ZPoly();
  }
  Integer l = 1;
  for (const auto& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
  Integer g = 0;
  for (const auto& t : p.terms()) {
    Integer v = t.c.get_num() * (l / t.c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  if (sgn(p.lc()) < 0) g = -g;
  std::vector<ZPoly::TermT> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back({t.m, Integer(t.c.get_num() * (l / t.c.get_den()) / g)});
  if (unit) {
    *unit = Rational(g, l);
    unit->canonicalize();
  }
  return ZPoly::from_sorted(std::move(out));
}

Poly to_q(const ZPoly& p) {
  std::vector<Poly::TermT> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back({t.m, Rational(t.c)});
  return Poly::from_sorted(std::move(out));
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : p.terms()) {
    bool neg = sgn(t.c) < 0;
    Rational a = abs(t.c);
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    std::string vars;
    for (const auto& f : t.m.factors()) {
      if (!vars.empty()) vars += "*";
      vars += var_name(f.var);
      if (f.exp > 1) vars += "^" + std::to_string(f.exp);
    }
    if (vars.empty()) {
      s += a.get_str();
    } else if (a == 1) {
      s += vars;
    } else {
      s += a.get_str() + "*" + vars;
    }
  }
  return s;
}

}  // namespace lambdet
