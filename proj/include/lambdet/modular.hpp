#pragma once

// Multi-modular condensation for constant rational inputs. Every term of
// T(P, Q | weights) is a monomial with face exponents in {-1, 0, 1} and at
// most n(n+1)/2 weight factors, so the denominator is known up front and
// the numerator is recovered by Chinese remaindering over 62-bit primes.

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "lambdet/matrix.hpp"

namespace lambdet {

// (mu, lambda) indices into the weight table for the entry (i, j) of A_k;
// a negative mu means 1.
using WeightIndex = std::function<std::pair<int, int>(Eigen::Index, Eigen::Index, Eigen::Index)>;

// Only the interior of a0 and all of a1 matter; their entries must be
// nonzero. A cell whose divisor vanishes mod p is rebuilt from nearby
// values of its block. Returns nullopt when repairs keep failing (minors
// vanishing at many nested levels) or a check prime disagrees.
std::optional<Rational> condense_modular(const MatrixX<Rational>& a0, const MatrixX<Rational>& a1,
                                         const std::vector<Rational>& table, const WeightIndex& index);

namespace detail {
// Descending 62-bit primes, generated on demand.
std::uint64_t nth_prime62(std::size_t k);
}  // namespace detail

}  // namespace lambdet
