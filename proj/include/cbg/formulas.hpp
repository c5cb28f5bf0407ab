#pragma once

#include <cstdint>
#include <string>

#include "cbg/pattern.hpp"

namespace cbg {

// How far a closed form is claimed to hold at the given arguments.
enum class Regime {
  Exact,       // proved for these arguments
  Asymptotic,  // proved only for n past an unspecified threshold
  OutOfDomain  // outside the stated parameter range; value is a placeholder
};

std::string to_string(Regime r);

struct FormulaValue {
  std::int64_t value = 0;
  Regime regime = Regime::Exact;
  std::string note;
};

// ex(n, S_l, S_{k+1}) for 1 <= l <= k: the k-regular closed form for n > k,
// the count in K_n for n <= k (K_n is then S_{k+1}-free).
FormulaValue ex_star(int n, int k, int l);
// g(n, S_l, S_{k+1}); the l >= 2 case is asymptotic. For l = 1 the exact
// solver disagrees at n = 2 and for k = 3 on small boards, so only k <= 2,
// n >= 3 is labeled exact.
FormulaValue g_star(int n, int k, int l);
// Balanced two-star P3 count C(floor((n-2)/2), 2) + C(ceil((n-2)/2), 2).
std::int64_t b_of_n(int n);

struct ReferenceBounds {
  double lower = 0;
  double upper = 0;
  Regime regime = Regime::Exact;
  std::string formula;
};

// Tags: P4P5, K3P5, exP4P5, exP3P4, exK3P5. Throws std::invalid_argument
// for an unknown tag.
ReferenceBounds reference_bounds(const std::string& game, int n);

struct TreeCount {
  std::int64_t value = 0;
  // nk odd: the value is the k-regular leading term, rounded down.
  bool odd_correction = false;
};

// Copies of the tree T in a k-regular graph on n vertices with girth > |T|:
// n * e(k, T) / |Aut(T)|. Zero when T has a vertex of degree above k.
TreeCount tree_copy_count_regular(int n, int k, const Pattern& t);

}  // namespace cbg
