#include "lambdet/asm.hpp"

#include <cstdlib>
#include <sstream>

#include "lambdet/error.hpp"

namespace lambdet {

namespace {

IntMatrix corner_of(const IntMatrix& b) {
  const Eigen::Index n = b.rows();
  IntMatrix c = IntMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      c(i, j) = b(i, j) + (i ? c(i - 1, j) : 0) + (j ? c(i, j - 1) : 0) - (i && j ? c(i - 1, j - 1) : 0);
  return c;
}

AsmStats compute_stats(const IntMatrix& b) {
  int n = static_cast<int>(b.rows());
  AsmStats s;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (b(i, j) < 0) ++s.n_minus;
      if (b(i, j) > 0) ++s.n_plus;
    }
  // below_left(i, j) = sum of b(k, l) with k > i, l < j.
  IntMatrix below_left = IntMatrix::Zero(n, n + 1);
  for (Eigen::Index i = n - 2; i >= 0; --i) {
    int pref = 0;
    for (Eigen::Index j = 0; j <= n; ++j) {
      below_left(i, j) = below_left(i + 1, j) + pref;
      if (j < n) pref += b(i + 1, j);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (b(i, j)) s.inv += static_cast<long>(b(i, j)) * below_left(i, j);
  s.p_exp = s.inv - s.n_minus;
  return s;
}

[[noreturn]] void bad(ErrorKind k, const char* what, int idx) {
  fail(k, std::string(what) + " " + std::to_string(idx + 1));
}

// Checks one line: entries in {-1,0,1}, sum 1, partial sums in {0,1}.
void check_line(const IntMatrix& m, int idx, bool row) {
  int n = static_cast<int>(m.rows());
  int sum = 0;
  for (int k = 0; k < n; ++k) {
    int v = row ? m(idx, k) : m(k, idx);
    if (v < -1 || v > 1) bad(ErrorKind::NotAlternating, row ? "entry out of range in row" : "entry out of range in column", idx);
    sum += v;
  }
  if (sum != 1) bad(row ? ErrorKind::BadRowSum : ErrorKind::BadColSum, row ? "row" : "column", idx);
  int p = 0;
  for (int k = 0; k < n; ++k) {
    p += row ? m(idx, k) : m(k, idx);
    if (p < 0 || p > 1) bad(ErrorKind::NotAlternating, row ? "row" : "column", idx);
  }
}

}  // namespace

CornerSum::CornerSum(IntMatrix entries) : c_(std::move(entries)) {
  int n = static_cast<int>(c_.rows());
  if (c_.cols() != n || n < 1) fail(ErrorKind::NotACornerSum, "not square");
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      int d1 = at(i, j) - at(i, j - 1), d2 = at(i, j) - at(i - 1, j);
      if (d1 < 0 || d1 > 1 || d2 < 0 || d2 > 1) fail(ErrorKind::NotACornerSum, "not monotone with unit steps");
    }
  for (int k = 1; k <= n; ++k)
    if (at(n, k) != k || at(k, n) != k) fail(ErrorKind::NotACornerSum, "wrong last row or column");
}

Asm::Asm(IntMatrix m) : b_(std::move(m)), stats_(compute_stats(b_)), corner_(corner_of(b_), CornerSum::Unchecked{}) {}

Asm Asm::validate(const IntMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) fail(ErrorKind::SizeMismatch, "ASM must be square and nonempty");
  int n = static_cast<int>(m.rows());
  for (int i = 0; i < n; ++i) check_line(m, i, true);
  for (int j = 0; j < n; ++j) check_line(m, j, false);
  return Asm(m);
}

Asm Asm::identity(int n) { return Asm(IntMatrix::Identity(n, n)); }

AsmStats stats(const Asm& b) { return b.stats(); }

long df13_zero_count(const Asm& b) {
  int n = b.n();
  long count = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (b.at(i, j) != 0) continue;
      int right = 0, below = 0;
      for (int l = j + 1; l <= n && !right; ++l) right = b.at(i, l);
      for (int k = i + 1; k <= n && !below; ++k) below = b.at(k, j);
      if (right == 1 && below == 1) ++count;
    }
  return count;
}

CornerSum corner_sum(const Asm& b) { return b.corner(); }

Asm from_corner_sum(const CornerSum& c) {
  int n = c.n();
  IntMatrix m(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) m(i - 1, j - 1) = c.at(i, j) - c.at(i - 1, j) - c.at(i, j - 1) + c.at(i - 1, j - 1);
  try {
    return Asm::validate(m);
  } catch (const Error& e) {
    fail(ErrorKind::NotACornerSum, std::string("reconstruction is not an ASM (") + e.what() + ")");
  }
}

namespace {

int env_bound() {
  const char* v = std::getenv("LAMBDET_MAX_ASM_ORDER");
  return v ? std::atoi(v) : 0;
}

struct Enumerator {
  int n;
  const std::function<void(const Asm&)>& visit;
  IntMatrix m;
  std::vector<int> col;  // column partial sums

  void row(int i) {
    if (i == n) {
      visit(Asm::validate(m));
      return;
    }
    cell(i, 0, 0);
  }

  // Choices for entry (i, j) in increasing order of the new column sum.
  void cell(int i, int j, int prefix) {
    if (j == n) {
      if (prefix == 1) row(i + 1);
      return;
    }
    int options[2];
    int k = 0;
    if (col[j] == 1) {
      options[k++] = -1;
      options[k++] = 0;
    } else {
      options[k++] = 0;
      options[k++] = 1;
    }
    for (int t = 0; t < k; ++t) {
      int v = options[t];
      int p = prefix + v;
      if (p < 0 || p > 1) continue;
      // On the last row every column must close.
      if (i == n - 1 && col[j] + v != 1) continue;
      m(i, j) = v;
      col[j] += v;
      cell(i, j + 1, p);
      col[j] -= v;
    }
    m(i, j) = 0;
  }
};

}  // namespace

int asm_stream_bound() {
  int e = env_bound();
  return e > 0 ? e : 8;
}

int asm_list_bound() {
  int e = env_bound();
  return e > 0 ? e : 7;
}

void for_each_asm(int n, const std::function<void(const Asm&)>& visit) {
  if (n < 1) fail(ErrorKind::SizeMismatch, "order must be positive");
  if (n > asm_stream_bound()) fail(ErrorKind::SizeTooLarge, "ASM order " + std::to_string(n) + " exceeds bound");
  Enumerator e{n, visit, IntMatrix::Zero(n, n), std::vector<int>(n, 0)};
  e.row(0);
}

std::vector<Asm> enumerate_asm(int n) {
  if (n > asm_list_bound()) fail(ErrorKind::SizeTooLarge, "ASM order " + std::to_string(n) + " exceeds list bound");
  std::vector<Asm> out;
  for_each_asm(n, [&](const Asm& a) { out.push_back(a); });
  return out;
}

namespace {

void check_orders(const Asm& b, const Asm& bp) {
  if (b.n() != bp.n() + 1) fail(ErrorKind::SizeMismatch, "compatibility needs orders n+1 and n");
}

}  // namespace

bool compatible(const Asm& b, const Asm& bp) {
  check_orders(b, bp);
  const CornerSum &c = b.corner(), &cp = bp.corner();
  int n = bp.n();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      int lo = std::max(c.at(i, j), c.at(i + 1, j + 1) - 1);
      int hi = std::min(c.at(i, j + 1), c.at(i + 1, j));
      if (cp.at(i, j) < lo || cp.at(i, j) > hi) return false;
    }
  return true;
}

bool compatible_dual(const Asm& b, const Asm& bp) {
  check_orders(b, bp);
  const CornerSum &c = b.corner(), &cp = bp.corner();
  int n = bp.n();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      int lo = std::max(cp.at(i, j - 1), cp.at(i - 1, j));
      int hi = std::min(cp.at(i, j), cp.at(i - 1, j - 1) + 1);
      if (c.at(i, j) < lo || c.at(i, j) > hi) return false;
    }
  return true;
}

std::vector<CompatibleAsm> compatible_set(const Asm& fixed, Direction dir) {
  const CornerSum& c = fixed.corner();
  std::vector<CompatibleAsm> out;
  if (dir == Direction::Smaller) {
    int n = fixed.n() - 1;
    if (n < 1) return out;
    IntMatrix base(n, n);
    std::vector<std::pair<int, int>> free;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        base(i - 1, j - 1) = std::max(c.at(i, j), c.at(i + 1, j + 1) - 1);
        if (fixed.at(i + 1, j + 1) == -1) free.push_back({i - 1, j - 1});
      }
    for (unsigned mask = 0; mask < (1u << free.size()); ++mask) {
      IntMatrix cp = base;
      int delta = 0;
      for (std::size_t k = 0; k < free.size(); ++k)
        if (mask >> k & 1) {
          ++cp(free[k].first, free[k].second);
          ++delta;
        }
      out.push_back({from_corner_sum(CornerSum(cp)), delta});
    }
  } else {
    int n = fixed.n();
    IntMatrix base(n + 1, n + 1);
    std::vector<std::pair<int, int>> free;
    for (int i = 1; i <= n + 1; ++i)
      for (int j = 1; j <= n + 1; ++j) {
        if (i == n + 1 || j == n + 1) {
          base(i - 1, j - 1) = std::min(i, j);
          continue;
        }
        // Upper bound; free entries may drop by one.
        base(i - 1, j - 1) = std::min(c.at(i, j), c.at(i - 1, j - 1) + 1);
        if (fixed.at(i, j) == 1) free.push_back({i - 1, j - 1});
      }
    for (unsigned mask = 0; mask < (1u << free.size()); ++mask) {
      IntMatrix cb = base;
      int delta = 0;
      for (std::size_t k = 0; k < free.size(); ++k)
        if (mask >> k & 1) {
          --cb(free[k].first, free[k].second);
          ++delta;
        }
      out.push_back({from_corner_sum(CornerSum(cb)), delta});
    }
  }
  return out;
}

nlohmann::json to_json(const Asm& b) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 1; i <= b.n(); ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (int j = 1; j <= b.n(); ++j) r.push_back(b.at(i, j));
    rows.push_back(r);
  }
  return {{"n", b.n()}, {"rows", rows}};
}

Asm asm_from_json(const nlohmann::json& j) {
  const auto& rows = j.at("rows");
  int n = static_cast<int>(rows.size());
  if (j.contains("n") && j.at("n").get<int>() != n) fail(ErrorKind::SizeMismatch, "n does not match rows");
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) fail(ErrorKind::SizeMismatch, "ragged rows");
    for (int k = 0; k < n; ++k) m(i, k) = rows[i][k].get<int>();
  }
  return Asm::validate(m);
}

std::string sign_grid(const Asm& b) {
  std::ostringstream os;
  for (int i = 1; i <= b.n(); ++i) {
    for (int j = 1; j <= b.n(); ++j) {
      int v = b.at(i, j);
      os << (v > 0 ? '+' : v < 0 ? '-' : '.');
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace lambdet
