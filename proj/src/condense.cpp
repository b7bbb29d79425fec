#include "lambdet/condense.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "lambdet/error.hpp"
#include "lambdet/modular.hpp"

namespace lambdet {

std::string fresh_variable(const std::string& stem, const std::vector<const SquareMatrix*>& mats,
                           const std::vector<Scalar>& extra) {
  auto used = [&](const std::string& name) {
    if (!find_var(name)) return false;
    for (const auto* m : mats)
      for (Eigen::Index i = 0; i < m->rows(); ++i)
        for (Eigen::Index j = 0; j < m->cols(); ++j)
          if (depends_on((*m)(i, j), name)) return true;
    for (const auto& s : extra)
      if (depends_on(s, name)) return true;
    return false;
  };
  if (!used(stem)) return stem;
  for (int k = 1;; ++k) {
    std::string name = stem + "_" + std::to_string(k);
    if (!used(name)) return name;
  }
}

namespace {

// Truncated Laurent series in a perturbation variable delta:
// delta^v (c0 + c1 delta + ...). Exact values carry every coefficient;
// inexact ones know c.size() coefficients, and an empty inexact series is
// O(delta^v) with unknown leading term.
struct Series {
  long v = 0;
  std::vector<Scalar> c;
  bool exact = true;
  static inline long precision = 8;

  Series() = default;
  Series(int k) : Series(Scalar(k)) {}
  explicit Series(const Scalar& s) {
    if (!s.is_zero()) c.push_back(s);
  }

  long end() const { return exact ? std::numeric_limits<long>::max() : v + static_cast<long>(c.size()); }
  Scalar at(long e) const {
    long k = e - v;
    return k >= 0 && k < static_cast<long>(c.size()) ? c[k] : Scalar();
  }

  void normalize() {
    std::size_t lead = 0;
    while (lead < c.size() && c[lead].is_zero()) ++lead;
    if (lead) {
      c.erase(c.begin(), c.begin() + lead);
      v += static_cast<long>(lead);
    }
    if (exact) {
      while (!c.empty() && c.back().is_zero()) c.pop_back();
      if (c.empty()) v = 0;
      if (static_cast<long>(c.size()) > precision) {
        c.resize(precision);
        exact = false;
      }
    }
  }

  friend bool is_zero(const Series& s) { return s.c.empty(); }

  friend Series operator+(const Series& a, const Series& b) {
    if (a.exact && a.c.empty()) return b;
    if (b.exact && b.c.empty()) return a;
    Series r;
    r.exact = a.exact && b.exact;
    r.v = std::min(a.v, b.v);
    long stop = r.exact ? std::max(a.v + long(a.c.size()), b.v + long(b.c.size())) : std::min(a.end(), b.end());
    for (long e = r.v; e < stop; ++e) r.c.push_back(a.at(e) + b.at(e));
    r.normalize();
    return r;
  }

  friend Series operator*(const Series& a, const Series& b) {
    Series r;
    if ((a.exact && a.c.empty()) || (b.exact && b.c.empty())) return r;
    r.exact = a.exact && b.exact;
    r.v = a.v + b.v;
    long na = long(a.c.size()), nb = long(b.c.size());
    long len = r.exact ? na + nb - 1 : std::min(a.exact ? nb : na, b.exact ? na : nb);
    r.c.assign(len, Scalar());
    for (long i = 0; i < na && i < len; ++i)
      for (long j = 0; j < nb && i + j < len; ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.normalize();
    return r;
  }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  // b must have a known nonzero leading coefficient.
  friend Series operator/(const Series& a, const Series& b) {
    Series r;
    if (a.exact && a.c.empty()) return r;
    r.v = a.v - b.v;
    if (a.exact && b.exact && b.c.size() == 1) {
      for (const auto& x : a.c) r.c.push_back(x / b.c[0]);
      return r;
    }
    r.exact = false;
    long na = a.exact ? precision : long(a.c.size()), nb = b.exact ? precision : long(b.c.size());
    long len = std::min(na, nb);
    Scalar inv0 = b.c[0].inverse();
    r.c.assign(len, Scalar());
    for (long k = 0; k < len; ++k) {
      Scalar t = k < long(a.c.size()) ? a.c[k] : Scalar();
      for (long j = 1; j <= k && j < long(b.c.size()); ++j) t -= b.c[j] * r.c[k - j];
      r.c[k] = t * inv0;
    }
    r.normalize();
    return r;
  }
};

template <class T>
std::optional<T> run_with(const MatrixX<T>& a0, const MatrixX<T>& a1, const std::vector<T>& table,
                          const WeightIndex& index, std::vector<MatrixX<T>>* trace) {
  auto weight = [&](Eigen::Index k, Eigen::Index i, Eigen::Index j) {
    auto [mu, la] = index(k, i, j);
    return std::pair<const T*, const T*>(mu < 0 ? nullptr : &table[mu], &table[la]);
  };
  return condense_run<T>(a0, a1, weight, trace);
}

// Replaces zeros by regularizers; returns the names used.
std::vector<std::string> regularize(SquareMatrix& m, const std::string& shared, bool per_entry, const std::string& tag,
                                    const std::vector<const SquareMatrix*>& all, const std::vector<Scalar>& extra) {
  std::vector<std::string> names;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_zero()) continue;
      std::string name = shared;
      if (per_entry) name = fresh_variable(shared + tag + std::to_string(i + 1) + "_" + std::to_string(j + 1), all, extra);
      m(i, j) = Scalar::var(name);
      names.push_back(name);
    }
  return names;
}

Scalar limits(Scalar r, std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  try {
    for (const auto& n : names) r = limit_at_zero(r, n);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::PoleAtZero) throw;
    fail(ErrorKind::UndefinedDeterminant, "regularized limit has a pole");
  }
  return r;
}

// A minor vanished by accident: shift every entry by delta * r_ij in a fixed
// generic direction, condense over truncated series in delta and read off
// the delta^0 coefficient. The series precision doubles until it suffices.
std::optional<Scalar> series_run(const SquareMatrix& a0, const SquareMatrix& a1, const std::vector<Scalar>& table,
                                 const WeightIndex& index, int attempt) {
  auto lift = [&](const SquareMatrix& a, long salt) {
    MatrixX<Series> out(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        Series s(a(i, j));
        s.exact = true;
        if (s.c.empty()) s.c.push_back(Scalar());
        s.v = 0;
        s.c.resize(2);
        s.c[1] = Scalar((i * 31 + j * 17 + salt * 7 + attempt * 13) % 29 + 1);
        s.normalize();
        out(i, j) = s;
      }
    return out;
  };
  MatrixX<Series> s0 = lift(a0, 0), s1 = lift(a1, 5);
  std::vector<Series> stable;
  for (const auto& x : table) stable.emplace_back(x);
  const long saved = Series::precision;
  for (long prec = 8; prec <= 256; prec *= 2) {
    Series::precision = prec;
    auto v = run_with<Series>(s0, s1, stable, index, nullptr);
    if (!v) continue;
    if (v->exact || v->end() > 0) {
      Series::precision = saved;
      if (v->v < 0 && !v->c.empty()) fail(ErrorKind::UndefinedDeterminant, "pole in the perturbation");
      return v->at(0);
    }
  }
  Series::precision = saved;
  return std::nullopt;
}

// Large constant inputs go through the multi-modular engine.
constexpr Eigen::Index modular_threshold = 10;

std::optional<Scalar> try_modular(const SquareMatrix& a0, const SquareMatrix& a1, const std::vector<Scalar>& table,
                                  const WeightIndex& index) {
  const Eigen::Index m = a1.rows();
  MatrixX<Rational> r0 = MatrixX<Rational>::Constant(m + 1, m + 1, Rational(1)), r1(m, m);
  auto usable = [](const Scalar& x) { return x.is_constant(); };
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      if (!usable(a1(i, j))) return std::nullopt;
      r1(i, j) = a1(i, j).constant_value();
      if (i > 0 && j > 0) {
        if (!usable(a0(i, j))) return std::nullopt;
        r0(i, j) = a0(i, j).constant_value();
      }
    }
  std::vector<Rational> t;
  for (const auto& x : table) {
    if (!x.is_constant()) return std::nullopt;
    t.push_back(x.constant_value());
  }
  if (auto v = condense_modular(r0, r1, t, index)) return Scalar(*v);
  return std::nullopt;
}

Scalar with_regularization(const SquareMatrix& a0, const SquareMatrix& a1, const std::vector<Scalar>& table,
                           const WeightIndex& index, const CondenseOptions& opt) {
  if (!opt.trace && a1.rows() >= modular_threshold)
    if (auto v = try_modular(a0, a1, table, index)) return *v;
  if (auto v = run_with<Scalar>(a0, a1, table, index, opt.trace)) return *v;
  std::vector<const SquareMatrix*> all{&a0, &a1};
  std::string eps = fresh_variable("eps", all, table);
  std::vector<bool> modes{opt.per_entry_regularization};
  if (!opt.per_entry_regularization) modes.push_back(true);
  for (bool per_entry : modes) {
    SquareMatrix r0 = a0, r1 = a1;
    std::vector<std::string> names = regularize(r0, eps, per_entry, "_b", all, table);
    for (auto& s : regularize(r1, eps, per_entry, "_", all, table)) names.push_back(s);
    if (names.empty()) break;
    if (auto v = run_with<Scalar>(r0, r1, table, index, opt.trace)) return limits(*v, names);
  }
  SquareMatrix r0 = a0, r1 = a1;
  std::vector<std::string> names = regularize(r0, eps, opt.per_entry_regularization, "_b", all, table);
  for (auto& s : regularize(r1, eps, opt.per_entry_regularization, "_", all, table)) names.push_back(s);
  for (int attempt = 0; attempt < 3; ++attempt)
    if (auto v = series_run(r0, r1, table, index, attempt)) {
      if (opt.trace) opt.trace->clear();
      return limits(*v, names);
    }
  fail(ErrorKind::UndefinedDeterminant, "zero divisor persists after regularization");
}

}  // namespace

Scalar condense(const SquareMatrix& a0, const SquareMatrix& a1, const Scalar& lambda, const CondenseOptions& opt) {
  if (a0.rows() != a1.rows() + 1 || a0.cols() != a0.rows() || a1.cols() != a1.rows())
    fail(ErrorKind::SizeMismatch, "condensation needs square seeds of sizes m+1 and m");
  WeightIndex index = [](Eigen::Index, Eigen::Index, Eigen::Index) { return std::pair<int, int>(-1, 0); };
  return with_regularization(a0, a1, {lambda}, index, opt);
}

Scalar lambda_det(const SquareMatrix& a, const Scalar& lambda, const CondenseOptions& opt) {
  if (a.rows() != a.cols() || a.rows() < 1) fail(ErrorKind::SizeMismatch, "lambda_det needs a nonempty square matrix");
  return condense(ones(a.rows() + 1), a, lambda, opt);
}

SquareMatrix border_completion(const SquareMatrix& q) {
  SquareMatrix b = ones(q.rows() + 2);
  b.block(1, 1, q.rows(), q.cols()) = q;
  return b;
}

Scalar cond_pq(const SquareMatrix& p, const SquareMatrix& q, const Scalar& lambda, const CondenseOptions& opt) {
  if (p.rows() != p.cols() || q.rows() != q.cols() || p.rows() != q.rows() + 1)
    fail(ErrorKind::SizeMismatch, "cond_pq needs P of size n+1 and Q of size n");
  return condense(border_completion(q), p, lambda, opt);
}

Scalar lambda_mu_det(const SquareMatrix& a, const std::vector<Scalar>& lambdas, const std::vector<Scalar>& mus,
                     const std::optional<SquareMatrix>& q, const CondenseOptions& opt) {
  if (a.rows() != a.cols() || a.rows() < 1) fail(ErrorKind::SizeMismatch, "lambda_mu_det needs a nonempty square matrix");
  const Eigen::Index n = a.rows() - 1;
  if (static_cast<Eigen::Index>(lambdas.size()) != std::max<Eigen::Index>(2 * n - 1, 0) || lambdas.size() != mus.size())
    fail(ErrorKind::SizeMismatch, "bias vectors must have length 2n-1");
  SquareMatrix a0 = ones(n + 2);
  if (q) {
    if (q->rows() != n || q->cols() != n) fail(ErrorKind::SizeMismatch, "Q must have size n");
    a0 = border_completion(*q);
  }
  // Table: lambdas then mus.
  std::vector<Scalar> table = lambdas;
  table.insert(table.end(), mus.begin(), mus.end());
  const int off = static_cast<int>(n - 1), len = static_cast<int>(lambdas.size());
  WeightIndex index = [=](Eigen::Index k, Eigen::Index i, Eigen::Index j) {
    // 1-based labels: mu_{i+j-(n+3-k)}, lambda_{j-i}.
    int mu = static_cast<int>((i + 1) + (j + 1) - (n + 3 - k)), la = static_cast<int>(j - i);
    return std::pair<int, int>(len + mu + off, la + off);
  };
  return with_regularization(a0, a, table, index, opt);
}

}  // namespace lambdet
