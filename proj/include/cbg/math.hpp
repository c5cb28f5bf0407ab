#pragma once

#include <cstdint>

namespace cbg {

// C(n, k) with overflow checking; zero when k < 0 or k > n.
// Throws std::overflow_error past 64 bits.
std::uint64_t binom(std::int64_t n, std::int64_t k);

// Ceiling of a non-negative real with a small tolerance for values that
// are integers up to rounding error.
std::int64_t ceil_tolerant(double x);
std::int64_t floor_tolerant(double x);

}  // namespace cbg
