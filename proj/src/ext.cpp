#include "lambdet/ext.hpp"

#include <sstream>

#include "lambdet/error.hpp"

namespace lambdet {

ScalarPoly poly_trim(ScalarPoly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

ScalarPoly poly_mul(const ScalarPoly& a, const ScalarPoly& b) {
  if (a.empty() || b.empty()) return {};
  ScalarPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
  }
  return poly_trim(std::move(r));
}

ScalarPoly poly_rem(ScalarPoly a, const ScalarPoly& d) {
  a = poly_trim(std::move(a));
  if (d.empty()) fail(ErrorKind::DivisionByZero, "polynomial remainder by zero");
  const std::size_t n = d.size() - 1;
  Scalar lead_inv = d.back().is_one() ? Scalar(1) : d.back().inverse();
  while (a.size() > n) {
    if (a.empty()) break;
    Scalar c = a.back() * lead_inv;
    std::size_t shift = a.size() - 1 - n;
    for (std::size_t k = 0; k <= n; ++k) a[shift + k] -= c * d[k];
    a.pop_back();
    a = poly_trim(std::move(a));
  }
  return a;
}

namespace {

// (q, r) with a = q d + r.
std::pair<ScalarPoly, ScalarPoly> poly_divmod(ScalarPoly a, const ScalarPoly& d) {
  a = poly_trim(std::move(a));
  const std::size_t n = d.size() - 1;
  ScalarPoly q(a.size() > n ? a.size() - n : 0);
  Scalar lead_inv = d.back().inverse();
  while (a.size() > n && !a.empty()) {
    Scalar c = a.back() * lead_inv;
    std::size_t shift = a.size() - 1 - n;
    q[shift] = c;
    for (std::size_t k = 0; k <= n; ++k) a[shift + k] -= c * d[k];
    a.pop_back();
    a = poly_trim(std::move(a));
  }
  return {poly_trim(std::move(q)), a};
}

ScalarPoly poly_sub(const ScalarPoly& a, const ScalarPoly& b) {
  ScalarPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return poly_trim(std::move(r));
}

void check_ring(const std::shared_ptr<const QuotientRing>& r) {
  if (!r || r->modulus.size() < 2 || !r->modulus.back().is_one())
    fail(ErrorKind::Internal, "quotient ring needs a monic modulus of degree >= 1");
}

}  // namespace

std::shared_ptr<const QuotientRing> make_ring(ScalarPoly monic, std::string name) {
  monic = poly_trim(std::move(monic));
  if (monic.size() < 2) fail(ErrorKind::Internal, "modulus must have positive degree");
  if (!monic.back().is_one()) {
    Scalar inv = monic.back().inverse();
    for (auto& c : monic) c *= inv;
  }
  auto r = std::make_shared<QuotientRing>(QuotientRing{std::move(monic), std::move(name)});
  return r;
}

ExtElement::ExtElement(std::shared_ptr<const QuotientRing> ring, ScalarPoly coeffs) : ring_(std::move(ring)) {
  if (!ring_) {
    coeffs = poly_trim(std::move(coeffs));
    if (coeffs.size() > 1) fail(ErrorKind::Internal, "polynomial element without a ring");
    c_ = {coeffs.empty() ? Scalar() : coeffs[0]};
    return;
  }
  check_ring(ring_);
  c_ = poly_rem(std::move(coeffs), ring_->modulus);
  c_.resize(ring_->modulus.size() - 1);
}

ExtElement ExtElement::generator(std::shared_ptr<const QuotientRing> ring) {
  return ExtElement(std::move(ring), {Scalar(0), Scalar(1)});
}

bool ExtElement::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

bool ExtElement::in_base() const {
  for (std::size_t k = 1; k < c_.size(); ++k)
    if (!c_[k].is_zero()) return false;
  return true;
}

Scalar ExtElement::base_value() const {
  if (!in_base()) fail(ErrorKind::Internal, "element is not in the base field");
  return c_[0];
}

namespace {

std::shared_ptr<const QuotientRing> common(const ExtElement& a, const ExtElement& b) {
  const auto &ra = a.ring(), &rb = b.ring();
  if (!ra) return rb;
  if (!rb || ra == rb) return ra;
  if (ra->modulus != rb->modulus) fail(ErrorKind::Internal, "elements from different quotient rings");
  return ra;
}

}  // namespace

ExtElement ExtElement::operator-() const {
  ExtElement r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

ExtElement ExtElement::operator+(const ExtElement& o) const {
  auto ring = common(*this, o);
  ScalarPoly r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return ExtElement(ring, std::move(r));
}

ExtElement ExtElement::operator-(const ExtElement& o) const { return *this + (-o); }

ExtElement ExtElement::operator*(const ExtElement& o) const {
  auto ring = common(*this, o);
  return ExtElement(ring, poly_mul(poly_trim(c_), poly_trim(o.c_)));
}

ExtElement ExtElement::inverse() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
  if (!ring_) return ExtElement(c_[0].inverse());
  // Extended Euclid: s * a + t * f = g.
  ScalarPoly r0 = ring_->modulus, r1 = poly_trim(c_);
  ScalarPoly s0{}, s1{Scalar(1)};
  while (r1.size() > 1) {
    auto [q, r] = poly_divmod(r0, r1);
    ScalarPoly s = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
    if (r1.empty()) fail(ErrorKind::NotInvertible, "element shares a factor with the modulus");
  }
  Scalar inv = r1[0].inverse();
  for (auto& c : s1) c *= inv;
  return ExtElement(ring_, std::move(s1));
}

ExtElement ExtElement::operator/(const ExtElement& o) const { return *this * o.inverse(); }

bool ExtElement::operator==(const ExtElement& o) const { return (*this - o).is_zero(); }

ExtElement pow(const ExtElement& e, long k) {
  if (k < 0) return pow(e.inverse(), -k);
  ExtElement r(1), b = e;
  while (k) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

std::string to_string(const ExtElement& e) {
  if (!e.ring() || e.in_base()) return to_string(e.coeffs()[0]);
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < e.coeffs().size(); ++k) {
    if (e.coeffs()[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << e.coeffs()[k] << ")";
    if (k) os << "*" << e.ring()->name << (k > 1 ? "^" + std::to_string(k) : "");
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ExtElement& e) { return os << to_string(e); }

ScalarPoly as_univariate(const Scalar& p, const std::string& var) {
  if (depends_on(Scalar(p.den()), var)) fail(ErrorKind::Internal, "denominator depends on " + var);
  auto id = find_var(var);
  if (!id) return poly_trim({p});
  ScalarPoly out;
  Scalar den_inv = Scalar(p.den()).inverse();
  for (std::uint32_t k = 0; k <= p.num().degree(*id); ++k) out.push_back(Scalar(p.num().coeff_of(*id, k)) * den_inv);
  return poly_trim(std::move(out));
}

}  // namespace lambdet
