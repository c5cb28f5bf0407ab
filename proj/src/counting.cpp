#include "cbg/counting.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <vector>

#include "cbg/math.hpp"

namespace cbg {

namespace {

// Vertex order for backtracking: preset vertices first, then greedily the
// vertex with most already-placed neighbours. back[i] lists the earlier
// positions adjacent to position i.
struct SearchPlan {
  int order = 0;
  std::array<int, Pattern::kMaxOrder> vertex{};
  std::array<std::array<int, Pattern::kMaxOrder>, Pattern::kMaxOrder> back{};
  std::array<int, Pattern::kMaxOrder> back_count{};
};

SearchPlan make_plan(const Pattern& p, std::initializer_list<int> preset) {
  SearchPlan plan;
  plan.order = p.order();
  std::uint32_t placed = 0;
  int pos = 0;
  auto place = [&](int v) {
    plan.vertex[static_cast<std::size_t>(pos)] = v;
    int c = 0;
    for (int j = 0; j < pos; ++j)
      if (p.adjacent(v, plan.vertex[static_cast<std::size_t>(j)])) plan.back[static_cast<std::size_t>(pos)][static_cast<std::size_t>(c++)] = j;
    plan.back_count[static_cast<std::size_t>(pos)] = c;
    placed |= 1U << v;
    ++pos;
  };
  for (int v : preset) place(v);
  while (pos < p.order()) {
    int best = -1;
    int best_links = -1;
    for (int v = 0; v < p.order(); ++v) {
      if ((placed >> v) & 1U) continue;
      const int links = std::popcount(static_cast<std::uint32_t>(p.adjacency(v)) & placed);
      if (links > best_links || (links == best_links && p.degree(v) > p.degree(best))) {
        best = v;
        best_links = links;
      }
    }
    place(best);
  }
  return plan;
}

struct GraphRows {
  const SimpleGraph& g;
  Word word(int x, int w) const { return g.row(x)[static_cast<std::size_t>(w)]; }
};

// Rows of G + e without materializing the extra edge.
struct PlusEdgeRows {
  const SimpleGraph& g;
  Edge e;
  Word word(int x, int w) const {
    Word r = g.row(x)[static_cast<std::size_t>(w)];
    if (x == e.u && w == e.v / kWordBits) r |= bit_of(e.v);
    if (x == e.v && w == e.u / kWordBits) r |= bit_of(e.u);
    return r;
  }
};

// Counts (or, with stop_at_first, detects) labeled extensions of the images
// already fixed for positions [0, start).
template <class Rows>
class Embedder {
 public:
  Embedder(const SearchPlan& plan, const Rows& rows, int n, bool stop_at_first)
      : plan_(plan), rows_(rows), n_(n), words_(words_for(n)), stop_(stop_at_first) {}

  std::uint64_t run(int start, std::array<int, Pattern::kMaxOrder>& image) {
    image_ = &image;
    found_ = 0;
    extend(start);
    return found_;
  }

 private:
  bool used(int x, int upto) const {
    for (int j = 0; j < upto; ++j)
      if ((*image_)[static_cast<std::size_t>(j)] == x) return true;
    return false;
  }

  void extend(int i) {
    if (i == plan_.order) {
      ++found_;
      return;
    }
    const auto& back = plan_.back[static_cast<std::size_t>(i)];
    const int nb = plan_.back_count[static_cast<std::size_t>(i)];
    if (nb == 0) {
      for (int x = 0; x < n_; ++x) {
        if (used(x, i)) continue;
        (*image_)[static_cast<std::size_t>(i)] = x;
        extend(i + 1);
        if (stop_ && found_) return;
      }
      return;
    }
    for (int w = 0; w < words_; ++w) {
      Word cand = rows_.word((*image_)[static_cast<std::size_t>(back[0])], w);
      for (int j = 1; j < nb && cand; ++j) cand &= rows_.word((*image_)[static_cast<std::size_t>(back[static_cast<std::size_t>(j)])], w);
      while (cand) {
        const int x = w * kWordBits + std::countr_zero(cand);
        cand &= cand - 1;
        if (used(x, i)) continue;
        (*image_)[static_cast<std::size_t>(i)] = x;
        extend(i + 1);
        if (stop_ && found_) return;
      }
    }
  }

  const SearchPlan& plan_;
  const Rows& rows_;
  int n_;
  int words_;
  bool stop_;
  std::array<int, Pattern::kMaxOrder>* image_ = nullptr;
  std::uint64_t found_ = 0;
};

void require_supported(const Pattern& h) {
  if (h.order() > kMaxCountedOrder)
    throw UnsupportedPattern("pattern " + h.name() + " has more than " + std::to_string(kMaxCountedOrder) + " vertices");
}

int common_neighbours(const SimpleGraph& g, int a, int b) {
  const auto ra = g.row(a);
  const auto rb = g.row(b);
  int c = 0;
  for (std::size_t w = 0; w < ra.size(); ++w) c += std::popcount(ra[w] & rb[w]);
  return c;
}

// Anchored count of labeled embeddings mapping a->x, b->y.
template <class Rows>
std::uint64_t anchored(const Pattern& h, const Rows& rows, int n, int a, int b, int x, int y, bool stop) {
  const SearchPlan plan = make_plan(h, {a, b});
  std::array<int, Pattern::kMaxOrder> image{};
  image[0] = x;
  image[1] = y;
  Embedder<Rows> emb(plan, rows, n, stop);
  return emb.run(2, image);
}

}  // namespace

std::uint64_t count_stars(int leaves, const SimpleGraph& g) {
  if (leaves < 1) throw std::invalid_argument("star needs at least one leaf");
  if (leaves == 1) return static_cast<std::uint64_t>(g.edge_count());
  std::uint64_t total = 0;
  for (int v = 0; v < g.order(); ++v) total += binom(g.degree(v), leaves);
  return total;
}

std::uint64_t count_copies(const Pattern& h, const SimpleGraph& g) {
  require_supported(h);
  if (const auto l = h.star_leaves()) return count_stars(*l, g);
  if (h.order() > g.order()) return 0;
  const SearchPlan plan = make_plan(h, {});
  std::array<int, Pattern::kMaxOrder> image{};
  GraphRows rows{g};
  Embedder<GraphRows> emb(plan, rows, g.order(), false);
  return emb.run(0, image) / h.automorphisms();
}

bool creates_copy(const Pattern& f, const SimpleGraph& g, Edge e) {
  if (const auto l = f.star_leaves()) {
    // A star with l leaves appears iff an endpoint reaches degree l.
    return g.degree(e.u) + 1 >= *l || g.degree(e.v) + 1 >= *l;
  }
  if (f.is_triangle()) return common_neighbours(g, e.u, e.v) > 0;
  require_supported(f);
  if (f.order() > g.order()) return false;
  PlusEdgeRows rows{g, e};
  for (const AnchorOrbit& o : f.anchor_orbits())
    if (anchored(f, rows, g.order(), o.a, o.b, e.u, e.v, true) > 0) return true;
  return false;
}

std::uint64_t count_copies_through(const Pattern& h, const SimpleGraph& g, Edge e) {
  if (const auto l = h.star_leaves()) {
    if (*l == 1) return 1;
    return binom(g.degree(e.u), *l - 1) + binom(g.degree(e.v), *l - 1);
  }
  if (h.is_triangle()) return static_cast<std::uint64_t>(common_neighbours(g, e.u, e.v));
  if (h.is_path() && h.order() == 4) {
    // Middle edge: du*dv minus shared neighbours; end edge: paths of length 2 from either endpoint.
    const std::int64_t du = g.degree(e.u);
    const std::int64_t dv = g.degree(e.v);
    const std::int64_t c = common_neighbours(g, e.u, e.v);
    std::int64_t total = du * dv - c;
    for_each_bit(g.row(e.u), [&](int w) { total += g.degree(w) - 1 - (g.has_edge(w, e.v) ? 1 : 0); });
    for_each_bit(g.row(e.v), [&](int w) { total += g.degree(w) - 1 - (g.has_edge(w, e.u) ? 1 : 0); });
    return static_cast<std::uint64_t>(total);
  }
  require_supported(h);
  if (h.order() > g.order()) return 0;
  PlusEdgeRows rows{g, e};
  std::uint64_t labeled = 0;
  for (const AnchorOrbit& o : h.anchor_orbits())
    labeled += static_cast<std::uint64_t>(o.size) * anchored(h, rows, g.order(), o.a, o.b, e.u, e.v, false);
  return labeled / h.automorphisms();
}

VertexSet distance_ball(const SimpleGraph& g, int v, int r) {
  if (r < 0) throw std::invalid_argument("negative radius");
  VertexSet seen(g.order());
  seen.set(v);
  std::vector<int> frontier{v};
  for (int step = 0; step < r && !frontier.empty(); ++step) {
    std::vector<int> next;
    for (int x : frontier)
      for_each_bit(g.row(x), [&](int y) {
        if (!seen.test(y)) {
          seen.set(y);
          next.push_back(y);
        }
      });
    frontier = std::move(next);
  }
  seen.reset(v);
  return seen;
}

int girth(const SimpleGraph& g) {
  const int n = g.order();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) adj[static_cast<std::size_t>(v)] = g.neighbor_list(v);
  int best = kInfiniteGirth;
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> queue;
  queue.reserve(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    if (adj[static_cast<std::size_t>(s)].size() < 2) continue;
    queue.clear();
    queue.push_back(s);
    dist[static_cast<std::size_t>(s)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int x = queue[head];
      const int dx = dist[static_cast<std::size_t>(x)];
      if (best != kInfiniteGirth && 2 * dx + 1 >= best) break;
      for (int y : adj[static_cast<std::size_t>(x)]) {
        if (dist[static_cast<std::size_t>(y)] < 0) {
          dist[static_cast<std::size_t>(y)] = dx + 1;
          parent[static_cast<std::size_t>(y)] = x;
          queue.push_back(y);
        } else if (parent[static_cast<std::size_t>(x)] != y) {
          best = std::min(best, dx + dist[static_cast<std::size_t>(y)] + 1);
        }
      }
    }
    for (int x : queue) {
      dist[static_cast<std::size_t>(x)] = -1;
      parent[static_cast<std::size_t>(x)] = -1;
    }
  }
  return best;
}

std::uint64_t naive_embeddings(const Pattern& h, const SimpleGraph& g) {
  const int n = g.order();
  const int r = h.order();
  if (r > n) return 0;
  std::vector<int> image(static_cast<std::size_t>(r), 0);
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  std::uint64_t count = 0;
  auto rec = [&](auto&& self, int i) -> void {
    if (i == r) {
      for (const auto& [a, b] : h.edges())
        if (!g.has_edge(Edge::of(image[static_cast<std::size_t>(a)], image[static_cast<std::size_t>(b)]))) return;
      ++count;
      return;
    }
    for (int x = 0; x < n; ++x) {
      if (taken[static_cast<std::size_t>(x)]) continue;
      taken[static_cast<std::size_t>(x)] = true;
      image[static_cast<std::size_t>(i)] = x;
      self(self, i + 1);
      taken[static_cast<std::size_t>(x)] = false;
    }
  };
  rec(rec, 0);
  return count;
}

}  // namespace cbg
