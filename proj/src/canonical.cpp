#include "cbg/canonical.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace cbg {

namespace {

constexpr int kMax = kMaxSmallBoard;
using Colors = std::array<int, kMax>;
using Types = std::array<std::array<std::uint8_t, kMax>, kMax>;

struct EdgeTable {
  std::array<std::array<int, kMax>, kMax> index{};
};

const EdgeTable& edge_table(int n) {
  static const auto tables = [] {
    std::array<EdgeTable, kMax + 1> t{};
    for (int m = 2; m <= kMax; ++m)
      for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
          const int i = static_cast<int>(edge_index(m, Edge{a, b}));
          t[static_cast<std::size_t>(m)].index[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = i;
          t[static_cast<std::size_t>(m)].index[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = i;
        }
    return t;
  }();
  return tables[static_cast<std::size_t>(n)];
}

// Replaces colours by the rank of (colour, sorted neighbour signature) until stable.
void refine(int n, const Types& type, Colors& color) {
  while (true) {
    std::array<std::pair<std::array<int, kMax + 1>, int>, kMax> sig{};
    for (int v = 0; v < n; ++v) {
      auto& s = sig[static_cast<std::size_t>(v)].first;
      s.fill(-1);
      s[0] = color[static_cast<std::size_t>(v)];
      std::array<int, kMax> nb{};
      int c = 0;
      for (int w = 0; w < n; ++w) {
        const int t = type[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)];
        if (w != v && t) nb[static_cast<std::size_t>(c++)] = color[static_cast<std::size_t>(w)] * 4 + t;
      }
      std::sort(nb.begin(), nb.begin() + c);
      for (int i = 0; i < c; ++i) s[static_cast<std::size_t>(i + 1)] = nb[static_cast<std::size_t>(i)];
      sig[static_cast<std::size_t>(v)].second = v;
    }
    std::sort(sig.begin(), sig.begin() + n);
    Colors next{};
    int rank = 0;
    for (int i = 0; i < n; ++i) {
      if (i > 0 && sig[static_cast<std::size_t>(i)].first != sig[static_cast<std::size_t>(i - 1)].first) rank = i;
      next[static_cast<std::size_t>(sig[static_cast<std::size_t>(i)].second)] = rank;
    }
    // Ranks are cell starting positions, so the number of cells grows iff something changed.
    auto cells = [n](const Colors& c) {
      std::array<bool, kMax> seen{};
      int k = 0;
      for (int v = 0; v < n; ++v)
        if (!seen[static_cast<std::size_t>(c[static_cast<std::size_t>(v)])]) {
          seen[static_cast<std::size_t>(c[static_cast<std::size_t>(v)])] = true;
          ++k;
        }
      return k;
    };
    const bool changed = cells(next) != cells(color);
    color = next;
    if (!changed) return;
  }
}

struct Search {
  int n;
  Types type;
  EdgeMask cons;
  EdgeMask blok;
  int leaf_limit;
  int leaves = 0;
  bool aborted = false;
  bool have_best = false;
  std::uint64_t best = 0;
  EdgeMask best_cons = 0;
  EdgeMask best_blok = 0;

  void leaf(const Colors& color) {
    ++leaves;
    int perm[kMax];
    for (int v = 0; v < n; ++v) perm[v] = color[static_cast<std::size_t>(v)];
    const EdgeMask c = relabel(n, cons, perm);
    const EdgeMask b = relabel(n, blok, perm);
    const std::uint64_t key = (static_cast<std::uint64_t>(c) << 32) | b;
    if (!have_best || key < best) {
      have_best = true;
      best = key;
      best_cons = c;
      best_blok = b;
    }
  }

  bool twins(int u, int v) const {
    for (int w = 0; w < n; ++w) {
      if (w == u || w == v) continue;
      if (type[static_cast<std::size_t>(u)][static_cast<std::size_t>(w)] != type[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)])
        return false;
    }
    return true;
  }

  void descend(Colors color) {
    if (aborted) return;
    refine(n, type, color);
    // First non-singleton cell, by colour.
    std::array<int, kMax> size{};
    for (int v = 0; v < n; ++v) ++size[static_cast<std::size_t>(color[static_cast<std::size_t>(v)])];
    int target = -1;
    for (int c = 0; c < n; ++c)
      if (size[static_cast<std::size_t>(c)] > 1) {
        target = c;
        break;
      }
    if (target < 0) {
      leaf(color);
      if (leaves > leaf_limit) aborted = true;
      return;
    }
    std::array<int, kMax> tried{};
    int ntried = 0;
    for (int v = 0; v < n && !aborted; ++v) {
      if (color[static_cast<std::size_t>(v)] != target) continue;
      bool redundant = false;
      for (int i = 0; i < ntried && !redundant; ++i) redundant = twins(v, tried[static_cast<std::size_t>(i)]);
      if (redundant) continue;
      tried[static_cast<std::size_t>(ntried++)] = v;
      Colors next = color;
      // Individualized vertex keeps the cell's rank; the rest move one step up.
      for (int w = 0; w < n; ++w)
        if (w != v && next[static_cast<std::size_t>(w)] == target) next[static_cast<std::size_t>(w)] = target + 1;
      descend(next);
    }
  }
};

}  // namespace

EdgeMask relabel(int n, EdgeMask m, const int* perm) {
  const EdgeTable& t = edge_table(n);
  EdgeMask out = 0;
  while (m) {
    const int i = std::countr_zero(m);
    m &= m - 1;
    const Edge e = edge_at(n, i);
    out |= EdgeMask{1} << t.index[static_cast<std::size_t>(perm[e.u])][static_cast<std::size_t>(perm[e.v])];
  }
  return out;
}

CanonicalForm canonical_form(int n, EdgeMask cons, EdgeMask blok, int leaf_limit) {
  if (n < 2) return {cons, blok, true};
  Search s{n, {}, cons, blok, leaf_limit};
  Colors color{};
  std::array<int, kMax> dc{};
  std::array<int, kMax> db{};
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const int i = static_cast<int>(edge_index(n, Edge{a, b}));
      const std::uint8_t t = ((cons >> i) & 1U) ? 1 : ((blok >> i) & 1U) ? 2 : 0;
      s.type[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = t;
      s.type[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = t;
      if (t == 1) ++dc[static_cast<std::size_t>(a)], ++dc[static_cast<std::size_t>(b)];
      if (t == 2) ++db[static_cast<std::size_t>(a)], ++db[static_cast<std::size_t>(b)];
    }
  // Initial colours: rank of the (Constructor degree, Blocker degree) pair.
  std::array<int, kMax> code{};
  for (int v = 0; v < n; ++v) code[static_cast<std::size_t>(v)] = dc[static_cast<std::size_t>(v)] * 16 + db[static_cast<std::size_t>(v)];
  for (int v = 0; v < n; ++v) {
    int rank = 0;
    for (int w = 0; w < n; ++w) rank += code[static_cast<std::size_t>(w)] < code[static_cast<std::size_t>(v)];
    color[static_cast<std::size_t>(v)] = rank;
  }
  s.descend(color);
  if (s.aborted) return {cons, blok, false};
  return {s.best_cons, s.best_blok, true};
}

}  // namespace cbg
