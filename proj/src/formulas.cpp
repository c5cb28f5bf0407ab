#include "cbg/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cbg/math.hpp"

namespace cbg {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Exact: return "exact";
    case Regime::Asymptotic: return "asymptotic-regime";
    case Regime::OutOfDomain: return "out-of-domain";
  }
  return "?";
}

namespace {

std::int64_t as_int(std::uint64_t x) {
  if (x > static_cast<std::uint64_t>(INT64_MAX)) throw std::overflow_error("formula value exceeds 64 bits");
  return static_cast<std::int64_t>(x);
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("formula value exceeds 64 bits");
  return r;
}

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("formula value exceeds 64 bits");
  return r;
}

std::optional<FormulaValue> star_domain(int n, int k, int l) {
  if (n < 1 || k < 1 || l < 1) throw std::invalid_argument("star formulas need n, k, l >= 1");
  if (l > k) return FormulaValue{0, Regime::OutOfDomain, "l > k: no S_l fits under the degree cap"};
  return std::nullopt;
}

}  // namespace

FormulaValue ex_star(int n, int k, int l) {
  if (auto z = star_domain(n, k, l)) return *z;
  const std::int64_t nn = n;
  FormulaValue f;
  if (n <= k) {
    // No k-regular graph exists; K_n itself is S_{k+1}-free and optimal.
    f.value = l == 1 ? as_int(binom(n, 2)) : mul(nn, as_int(binom(n - 1, l)));
    f.note = "n <= k: value of K_n";
  } else if (l == 1) {
    f.value = mul(nn, k) / 2;
  } else if ((nn * k) % 2 == 0) {
    f.value = mul(as_int(binom(k, l)), nn);
  } else {
    f.value = add(mul(as_int(binom(k, l)), nn - 1), as_int(binom(k - 1, l)));
  }
  return f;
}

FormulaValue g_star(int n, int k, int l) {
  if (auto z = star_domain(n, k, l)) return *z;
  const std::int64_t nn = n;
  FormulaValue f;
  if (l == 1) {
    f.value = (mul(nn, k) - 1) / 2;
    // The solver finds small boards below this value (n = 2; k = 3 up to n = 7 at least).
    if (n < 3 || k >= 3) {
      f.regime = Regime::Asymptotic;
      f.note = "exact value differs on small boards; see the solver";
    }
  } else if ((nn * k) % 2 == 0) {
    f.value = add(mul(as_int(binom(k, l)), nn - 2), mul(2, as_int(binom(k - 1, l))));
    f.regime = Regime::Asymptotic;
  } else {
    f.value = add(mul(as_int(binom(k, l)), nn - 1), as_int(binom(k - 1, l)));
    f.regime = Regime::Asymptotic;
  }
  if (n <= k) {
    f.regime = Regime::OutOfDomain;
    f.note = "n <= k: the closed form assumes a k-regular or almost k-regular graph";
  }
  return f;
}

std::int64_t b_of_n(int n) {
  if (n < 2) throw std::invalid_argument("B(n) needs n >= 2");
  const std::int64_t m = n - 2;
  return add(as_int(binom(m / 2, 2)), as_int(binom(m - m / 2, 2)));
}

ReferenceBounds reference_bounds(const std::string& game, int n) {
  if (n < 2) throw std::invalid_argument("reference bounds need n >= 2");
  const double x = n;
  ReferenceBounds b;
  if (game == "P4P5") {
    b.lower = 8.0 * (x - 2) * (x - 2) / 49.0;
    b.upper = 4.0 * x * x / 23.0;
    b.regime = Regime::Asymptotic;
    b.formula = "8(n-2)^2/49 <= g <= 4n^2/23 + o(n^2)";
  } else if (game == "K3P5") {
    b.lower = static_cast<double>(std::max<std::int64_t>(0, ceil_tolerant(x / 4 - 5 * std::sqrt(x) / 4)));
    b.upper = static_cast<double>(n / 4);
    b.formula = "ceil(n/4 - 5 sqrt(n)/4) <= g <= floor(n/4)";
  } else if (game == "exP4P5") {
    const std::int64_t m = n - 2;
    b.lower = b.upper = static_cast<double>(mul(m / 2, m - m / 2));
    b.regime = Regime::Asymptotic;
    b.formula = "floor((n-2)/2) ceil((n-2)/2)";
  } else if (game == "exP3P4") {
    b.lower = b.upper = static_cast<double>(binom(n - 1, 2));
    b.regime = Regime::Asymptotic;
    b.formula = "C(n-1, 2)";
  } else if (game == "exK3P5") {
    b.lower = b.upper = x;
    b.regime = Regime::Asymptotic;
    b.formula = "n - O(1)";
  } else {
    throw std::invalid_argument("unknown reference game '" + game + "'");
  }
  return b;
}

TreeCount tree_copy_count_regular(int n, int k, const Pattern& t) {
  if (!t.is_tree()) throw std::invalid_argument("tree_copy_count_regular needs a tree, got " + t.name());
  if (t.max_degree() > k) return {};
  // Embeddings rooted at vertex 0: each child has k minus the parent's
  // already-used edges as choices.
  const int order = t.order();
  std::vector<int> used(static_cast<std::size_t>(order), 0);
  std::vector<int> queue{0};
  std::vector<bool> seen(static_cast<std::size_t>(order), false);
  seen[0] = true;
  std::int64_t e = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const int v = queue[i];
    for (int w = 0; w < order; ++w) {
      if (!t.adjacent(v, w) || seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      e = mul(e, k - used[static_cast<std::size_t>(v)]);
      ++used[static_cast<std::size_t>(v)];
      ++used[static_cast<std::size_t>(w)];
      queue.push_back(w);
    }
  }
  TreeCount out;
  out.value = mul(n, e) / static_cast<std::int64_t>(t.automorphisms());
  out.odd_correction = (static_cast<std::int64_t>(n) * k) % 2 != 0;
  return out;
}

}  // namespace cbg
