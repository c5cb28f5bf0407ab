#include "cbg/small_board.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace cbg {

EdgeMask full_mask(int n) {
  const auto pairs = pair_count(n);
  return pairs >= 32 ? ~EdgeMask{0} : (EdgeMask{1} << pairs) - 1;
}

EdgeMask mask_of(int n, const SimpleGraph& g) {
  EdgeMask m = 0;
  for (const Edge& e : g.edges()) m |= EdgeMask{1} << edge_index(n, e);
  return m;
}

SimpleGraph graph_of_mask(int n, EdgeMask m) {
  SimpleGraph g(n);
  while (m) {
    const int i = std::countr_zero(m);
    m &= m - 1;
    g.add_edge(edge_at(n, i));
  }
  return g;
}

CopyIndex::CopyIndex(const Pattern& p, int n) : n_(n), through_(static_cast<std::size_t>(pair_count(n))) {
  if (n > kMaxSmallBoard) throw std::invalid_argument("small board supports at most 8 vertices");
  const int r = p.order();
  if (r <= n) {
    std::vector<int> image(static_cast<std::size_t>(r));
    std::uint32_t used = 0;
    auto rec = [&](auto&& self, int i) -> void {
      if (i == r) {
        EdgeMask m = 0;
        for (const auto& [a, b] : p.edges())
          m |= EdgeMask{1} << edge_index(n, Edge::of(image[static_cast<std::size_t>(a)], image[static_cast<std::size_t>(b)]));
        copies_.push_back(m);
        return;
      }
      for (int x = 0; x < n; ++x) {
        if ((used >> x) & 1U) continue;
        used |= 1U << x;
        image[static_cast<std::size_t>(i)] = x;
        self(self, i + 1);
        used &= ~(1U << x);
      }
    };
    rec(rec, 0);
    std::sort(copies_.begin(), copies_.end());
    copies_.erase(std::unique(copies_.begin(), copies_.end()), copies_.end());
  }
  for (EdgeMask m : copies_) {
    EdgeMask rest = m;
    while (rest) {
      const int i = std::countr_zero(rest);
      rest &= rest - 1;
      through_[static_cast<std::size_t>(i)].push_back(m & ~(EdgeMask{1} << i));
    }
  }
}

int CopyIndex::count_in(EdgeMask g) const {
  int c = 0;
  for (EdgeMask m : copies_) c += (m & ~g) == 0;
  return c;
}

int CopyIndex::completed_by(EdgeMask g, int i) const {
  int c = 0;
  for (EdgeMask rest : through_[static_cast<std::size_t>(i)]) c += (rest & ~g) == 0;
  return c;
}

bool CopyIndex::completes_any(EdgeMask g, int i) const {
  for (EdgeMask rest : through_[static_cast<std::size_t>(i)])
    if ((rest & ~g) == 0) return true;
  return false;
}

int CopyIndex::achievable(EdgeMask g, EdgeMask open) const {
  const EdgeMask avail = g | open;
  int c = 0;
  for (EdgeMask m : copies_) c += (m & ~avail) == 0;
  return c;
}

}  // namespace cbg
