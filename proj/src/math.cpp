#include "cbg/math.hpp"

#include <cmath>
#include <stdexcept>

namespace cbg {

std::uint64_t binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    if (r > static_cast<unsigned __int128>(UINT64_MAX)) throw std::overflow_error("binomial overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

std::int64_t ceil_tolerant(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) < 1e-9) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::ceil(x));
}

std::int64_t floor_tolerant(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) < 1e-9) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::floor(x));
}

}  // namespace cbg
