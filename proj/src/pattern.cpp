#include "cbg/pattern.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cbg {

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

std::uint64_t factorial(int r) {
  std::uint64_t f = 1;
  for (int i = 2; i <= r; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::string edge_list_token(const EdgeList& edges) {
  std::string s;
  for (const auto& [a, b] : edges) {
    if (!s.empty()) s += ',';
    s += std::to_string(a) + "-" + std::to_string(b);
  }
  return s;
}

// Enumerates automorphisms by extending a partial map one vertex at a time.
template <class Visit>
void enumerate_automorphisms(int order, const std::vector<std::uint16_t>& adj, Visit&& visit) {
  std::vector<int> image(static_cast<std::size_t>(order), -1);
  std::uint16_t used = 0;
  auto degree = [&](int v) { return std::popcount(adj[static_cast<std::size_t>(v)]); };
  auto rec = [&](auto&& self, int i) -> void {
    if (i == order) {
      visit(image);
      return;
    }
    for (int c = 0; c < order; ++c) {
      if ((used >> c) & 1U) continue;
      if (degree(c) != degree(i)) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        const bool e1 = (adj[static_cast<std::size_t>(i)] >> j) & 1U;
        const bool e2 = (adj[static_cast<std::size_t>(c)] >> image[static_cast<std::size_t>(j)]) & 1U;
        ok = e1 == e2;
      }
      if (!ok) continue;
      image[static_cast<std::size_t>(i)] = c;
      used = static_cast<std::uint16_t>(used | (1U << c));
      self(self, i + 1);
      used = static_cast<std::uint16_t>(used & ~(1U << c));
    }
  };
  rec(rec, 0);
}

int parse_int(std::string_view s, std::string_view token) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("malformed pattern token: '" + std::string(token) + "'");
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

EdgeList parse_dash_list(std::string_view body, std::string_view token) {
  EdgeList edges;
  while (!body.empty()) {
    const auto comma = body.find(',');
    std::string_view item = trim(body.substr(0, comma));
    body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
    const auto dash = item.find('-');
    if (dash == std::string_view::npos)
      throw std::invalid_argument("malformed pattern token: '" + std::string(token) + "'");
    edges.emplace_back(parse_int(trim(item.substr(0, dash)), token), parse_int(trim(item.substr(dash + 1)), token));
  }
  return edges;
}

int infer_order(const EdgeList& edges) {
  int order = 0;
  for (const auto& [a, b] : edges) order = std::max({order, a + 1, b + 1});
  return order;
}

}  // namespace

Pattern::Pattern(PatternKind kind, int order, EdgeList edges, std::string name)
    : kind_(kind), order_(order), name_(std::move(name)) {
  if (order < 2) throw std::invalid_argument("pattern needs at least one edge");
  if (order > kMaxOrder) throw std::invalid_argument("pattern order exceeds " + std::to_string(kMaxOrder));
  adj_.assign(static_cast<std::size_t>(order), 0);
  for (auto [a, b] : edges) {
    if (a == b || a < 0 || b < 0 || a >= order || b >= order)
      throw std::invalid_argument("bad pattern edge " + std::to_string(a) + "-" + std::to_string(b));
    if (a > b) std::swap(a, b);
    if (adjacent(a, b)) throw std::invalid_argument("duplicate pattern edge");
    adj_[static_cast<std::size_t>(a)] = static_cast<std::uint16_t>(adj_[static_cast<std::size_t>(a)] | (1U << b));
    adj_[static_cast<std::size_t>(b)] = static_cast<std::uint16_t>(adj_[static_cast<std::size_t>(b)] | (1U << a));
    edges_.emplace_back(a, b);
  }
  std::sort(edges_.begin(), edges_.end());
  for (int v = 0; v < order; ++v)
    if (adj_[static_cast<std::size_t>(v)] == 0) throw std::invalid_argument("pattern has an isolated vertex");

  std::uint16_t seen = 1;
  std::uint16_t frontier = 1;
  while (frontier) {
    std::uint16_t next = 0;
    for (int v = 0; v < order; ++v)
      if ((frontier >> v) & 1U) next = static_cast<std::uint16_t>(next | adj_[static_cast<std::size_t>(v)]);
    frontier = static_cast<std::uint16_t>(next & ~seen);
    seen = static_cast<std::uint16_t>(seen | next);
  }
  connected_ = std::popcount(seen) == order;

  int center = -1;
  for (int v = 0; v < order; ++v)
    if (degree(v) == order - 1) center = v;
  if (center >= 0 && size() == order - 1) star_leaves_ = order - 1;
  if (connected_ && size() == order - 1) {
    int ends = 0;
    bool small = true;
    for (int v = 0; v < order; ++v) {
      ends += degree(v) == 1;
      small = small && degree(v) <= 2;
    }
    is_path_ = small && ends == 2;
  }

  if (order <= 10) {
    automorphisms_ = 0;
    enumerate_automorphisms(order, adj_, [&](const std::vector<int>&) { ++automorphisms_; });
  } else if (kind == PatternKind::Clique) {
    automorphisms_ = factorial(order);
  } else if (kind == PatternKind::Path) {
    automorphisms_ = 2;
  } else if (kind == PatternKind::Star) {
    automorphisms_ = factorial(order - 1);
  } else if (name_.starts_with("C")) {
    automorphisms_ = 2 * static_cast<std::uint64_t>(order);
  } else {
    throw std::invalid_argument("irregular patterns are limited to 10 vertices");
  }

  if (order <= 8) {
    // Union-find over oriented edges 2i (a->b) and 2i+1 (b->a).
    const int m = size();
    std::vector<int> parent(static_cast<std::size_t>(2 * m));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      return x;
    };
    auto oriented = [&](int a, int b) {
      const auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{std::min(a, b), std::max(a, b)});
      const int i = static_cast<int>(it - edges_.begin());
      return 2 * i + (a > b ? 1 : 0);
    };
    enumerate_automorphisms(order, adj_, [&](const std::vector<int>& img) {
      for (int i = 0; i < m; ++i) {
        const auto [a, b] = edges_[static_cast<std::size_t>(i)];
        const int x = find(2 * i);
        const int y = find(oriented(img[static_cast<std::size_t>(a)], img[static_cast<std::size_t>(b)]));
        if (x != y) parent[static_cast<std::size_t>(std::max(x, y))] = std::min(x, y);
      }
    });
    std::vector<int> orbit_size(static_cast<std::size_t>(2 * m), 0);
    for (int x = 0; x < 2 * m; ++x) ++orbit_size[static_cast<std::size_t>(find(x))];
    for (int x = 0; x < 2 * m; ++x) {
      if (find(x) != x) continue;
      auto [a, b] = edges_[static_cast<std::size_t>(x / 2)];
      if (x % 2) std::swap(a, b);
      anchor_orbits_.push_back({a, b, orbit_size[static_cast<std::size_t>(x)]});
    }
  }
}

int Pattern::degree(int v) const { return std::popcount(adj_[static_cast<std::size_t>(v)]); }

int Pattern::max_degree() const {
  int d = 0;
  for (int v = 0; v < order_; ++v) d = std::max(d, degree(v));
  return d;
}

Pattern Pattern::clique(int r) {
  if (r < 2) throw std::invalid_argument("clique needs at least 2 vertices");
  EdgeList e;
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b) e.emplace_back(a, b);
  return Pattern(PatternKind::Clique, r, std::move(e), "K" + std::to_string(r));
}

Pattern Pattern::path(int r) {
  if (r == 2) return clique(2);
  if (r < 2) throw std::invalid_argument("path needs at least 2 vertices");
  EdgeList e;
  for (int a = 0; a + 1 < r; ++a) e.emplace_back(a, a + 1);
  return Pattern(PatternKind::Path, r, std::move(e), "P" + std::to_string(r));
}

Pattern Pattern::star(int leaves) {
  if (leaves == 1) return clique(2);
  if (leaves < 1) throw std::invalid_argument("star needs at least one leaf");
  EdgeList e;
  for (int l = 1; l <= leaves; ++l) e.emplace_back(0, l);
  return Pattern(PatternKind::Star, leaves + 1, std::move(e), "S" + std::to_string(leaves));
}

Pattern Pattern::cycle(int r) {
  if (r == 3) return clique(3);
  if (r < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  EdgeList e;
  for (int a = 0; a < r; ++a) e.emplace_back(std::min(a, (a + 1) % r), std::max(a, (a + 1) % r));
  return Pattern(PatternKind::General, r, std::move(e), "C" + std::to_string(r));
}

Pattern Pattern::from_edges(int order, EdgeList edges) {
  const bool tree_shaped = static_cast<int>(edges.size()) == order - 1;
  Pattern probe(PatternKind::General, order, edges, "G:" + edge_list_token(edges));
  if (tree_shaped && probe.connected()) {
    return Pattern(PatternKind::Tree, order, std::move(edges), "T:" + edge_list_token(probe.edges()));
  }
  probe.name_ = "G:" + edge_list_token(probe.edges());
  return probe;
}

Pattern Pattern::parse(std::string_view token) {
  const std::string_view t = trim(token);
  if (t.size() >= 2 && (t.starts_with("T:") || t.starts_with("G:"))) {
    EdgeList edges = parse_dash_list(t.substr(2), token);
    if (edges.empty()) throw std::invalid_argument("malformed pattern token: '" + std::string(token) + "'");
    const int order = infer_order(edges);
    Pattern p = from_edges(order, std::move(edges));
    if (t.front() == 'T' && p.kind() != PatternKind::Tree)
      throw std::invalid_argument("pattern token '" + std::string(token) + "' is not a tree");
    return p;
  }
  if (t.size() < 2) throw std::invalid_argument("malformed pattern token: '" + std::string(token) + "'");
  const int r = parse_int(t.substr(1), token);
  switch (t.front()) {
    case 'K': return clique(r);
    case 'P': return path(r);
    case 'S': return star(r);
    case 'C': return cycle(r);
    default: throw std::invalid_argument("malformed pattern token: '" + std::string(token) + "'");
  }
}

Pattern Pattern::from_edge_list_text(std::string_view text) {
  EdgeList edges;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    int a = 0;
    int b = 0;
    if (!(ls >> a)) continue;
    if (!(ls >> b)) throw std::invalid_argument("edge list line needs two vertices: '" + line + "'");
    edges.emplace_back(a, b);
  }
  if (edges.empty()) throw std::invalid_argument("empty edge list");
  const int order = infer_order(edges);
  return from_edges(order, std::move(edges));
}

std::uint64_t brute_force_automorphisms(const Pattern& p) {
  std::vector<int> perm(static_cast<std::size_t>(p.order()));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (const auto& [a, b] : p.edges())
      if (!p.adjacent(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)])) {
        ok = false;
        break;
      }
    count += ok;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

}  // namespace cbg
