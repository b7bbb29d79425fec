#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lambdet/matrix.hpp"

namespace lambdet {

struct AsmStats {
  int n_minus = 0;
  int n_plus = 0;
  long inv = 0;
  long p_exp = 0;
  bool operator==(const AsmStats&) const = default;
};

class CornerSum {
 public:
  // Checks the monotone corner-sum shape; throws NotACornerSum.
  explicit CornerSum(IntMatrix entries);

  int n() const { return static_cast<int>(c_.rows()); }
  // 1-based; index 0 reads as 0.
  int at(int i, int j) const { return (i == 0 || j == 0) ? 0 : c_(i - 1, j - 1); }
  const IntMatrix& entries() const { return c_; }
  long total() const { return c_.cast<long>().sum(); }
  bool operator==(const CornerSum& o) const { return c_ == o.c_; }

 private:
  struct Unchecked {};
  CornerSum(IntMatrix entries, Unchecked) : c_(std::move(entries)) {}
  friend class Asm;
  IntMatrix c_;
};

class Asm {
 public:
  // Throws NotAlternating, BadRowSum or BadColSum naming the first bad line.
  static Asm validate(const IntMatrix& m);
  static Asm identity(int n);

  int n() const { return static_cast<int>(b_.rows()); }
  // 1-based.
  int at(int i, int j) const { return b_(i - 1, j - 1); }
  const IntMatrix& entries() const { return b_; }
  const AsmStats& stats() const { return stats_; }
  const CornerSum& corner() const { return corner_; }
  bool is_permutation() const { return stats_.n_minus == 0; }

  bool operator==(const Asm& o) const { return b_ == o.b_; }

 private:
  explicit Asm(IntMatrix m);
  IntMatrix b_;
  AsmStats stats_;
  CornerSum corner_;
};

AsmStats stats(const Asm& b);
// Zeros whose first nonzero entries to the right and below are both +1.
long df13_zero_count(const Asm& b);

CornerSum corner_sum(const Asm& b);
// Throws NotACornerSum if the reconstruction is not an ASM.
Asm from_corner_sum(const CornerSum& c);

// Largest order accepted by enumerate_asm / for_each_asm. Defaults to 8 for
// streaming, 7 for the materialized list; LAMBDET_MAX_ASM_ORDER overrides both.
int asm_stream_bound();
int asm_list_bound();

// Every ASM of order n in lexicographic order of the successive column
// partial-sum vectors (one per row, read as 0/1 words).
void for_each_asm(int n, const std::function<void(const Asm&)>& visit);
std::vector<Asm> enumerate_asm(int n);

// B has order n+1, bp order n. Throws SizeMismatch otherwise.
bool compatible(const Asm& b, const Asm& bp);
bool compatible_dual(const Asm& b, const Asm& bp);

enum class Direction { Smaller, Larger };

struct CompatibleAsm {
  Asm m;
  int delta;
};

// Smaller: all B' compatible with fixed, delta = |B'bar| - min.
// Larger: all B compatible with fixed, delta = max - |Bbar|.
std::vector<CompatibleAsm> compatible_set(const Asm& fixed, Direction dir);

nlohmann::json to_json(const Asm& b);
Asm asm_from_json(const nlohmann::json& j);
std::string sign_grid(const Asm& b);

}  // namespace lambdet
