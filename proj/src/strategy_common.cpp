#include "cbg/strategy_common.hpp"

#include <algorithm>
#include <stdexcept>

namespace cbg {

void DegreeBuckets::insert(int v, int key) {
  if (key >= static_cast<int>(buckets_.size())) buckets_.resize(static_cast<std::size_t>(key) + 1);
  buckets_[static_cast<std::size_t>(key)].insert(v);
}

void DegreeBuckets::erase(int v, int key) { buckets_[static_cast<std::size_t>(key)].erase(v); }

int DegreeBuckets::max_key() const {
  for (int k = static_cast<int>(buckets_.size()) - 1; k >= 0; --k)
    if (!buckets_[static_cast<std::size_t>(k)].empty()) return k;
  return -1;
}

int DegreeBuckets::min_key() const {
  for (int k = 0; k < static_cast<int>(buckets_.size()); ++k)
    if (!buckets_[static_cast<std::size_t>(k)].empty()) return k;
  return -1;
}

const std::set<int>& DegreeBuckets::at(int key) const {
  static const std::set<int> empty;
  if (key < 0 || key >= static_cast<int>(buckets_.size())) return empty;
  return buckets_[static_cast<std::size_t>(key)];
}

void InducedTracker::build(const Position& p, const VertexSet& members) {
  const int n = p.n();
  members_ = members;
  degree_.assign(static_cast<std::size_t>(n), 0);
  buckets_.clear();
  size_ = 0;
  edges_ = 0;
  const auto m = members_.words();
  members_.for_each([&](int v) {
    const auto rc = p.cons().row(v);
    const auto rb = p.blok().row(v);
    int d = 0;
    for (std::size_t w = 0; w < m.size(); ++w) d += std::popcount((rc[w] | rb[w]) & m[w]);
    degree_[static_cast<std::size_t>(v)] = d;
    edges_ += d;
    ++size_;
    buckets_.insert(v, d);
  });
  edges_ /= 2;
}

void InducedTracker::add_edge(Edge e) {
  if (!contains(e.u) || !contains(e.v)) return;
  for (int x : {e.u, e.v}) {
    int& d = degree_[static_cast<std::size_t>(x)];
    buckets_.move(x, d, d + 1);
    ++d;
  }
  ++edges_;
}

void InducedTracker::remove(const Position& p, int v) {
  if (!contains(v)) return;
  members_.reset(v);
  buckets_.erase(v, degree_[static_cast<std::size_t>(v)]);
  --size_;
  const auto rc = p.cons().row(v);
  const auto rb = p.blok().row(v);
  const auto m = members_.words();
  for (std::size_t w = 0; w < m.size(); ++w) {
    Word x = (rc[w] | rb[w]) & m[w];
    while (x) {
      const int u = static_cast<int>(w) * kWordBits + std::countr_zero(x);
      x &= x - 1;
      int& d = degree_[static_cast<std::size_t>(u)];
      buckets_.move(u, d, d - 1);
      --d;
      --edges_;
    }
  }
  degree_[static_cast<std::size_t>(v)] = 0;
}

std::vector<int> component_of(const SimpleGraph& g, int v) {
  std::vector<int> comp{v};
  VertexSet seen(g.order());
  seen.set(v);
  for (std::size_t i = 0; i < comp.size(); ++i)
    for_each_bit(g.row(comp[i]), [&](int w) {
      if (!seen.test(w)) {
        seen.set(w);
        comp.push_back(w);
      }
    });
  std::sort(comp.begin(), comp.end());
  return comp;
}

ComponentShape classify_component(const SimpleGraph& g, const std::vector<int>& comp) {
  ComponentShape s;
  s.vertices = static_cast<int>(comp.size());
  std::int64_t degree_sum = 0;
  for (int v : comp) degree_sum += g.degree(v);
  s.edges = static_cast<int>(degree_sum / 2);
  if (s.vertices == 1) {
    s.kind = ComponentShape::Isolated;
    s.a = comp[0];
    return s;
  }
  if (s.vertices == 2) {
    s.kind = ComponentShape::SingleEdge;
    s.a = comp[0];
    s.b = comp[1];
    return s;
  }
  if (s.vertices == 3 && s.edges == 3) {
    s.kind = ComponentShape::Triangle;
    return s;
  }
  if (s.edges != s.vertices - 1) return s;
  std::vector<int> inner;
  for (int v : comp)
    if (g.degree(v) > 1) inner.push_back(v);
  if (inner.size() == 1) {
    s.kind = ComponentShape::Star;
    s.a = inner[0];
  } else if (inner.size() == 2 && g.has_edge(inner[0], inner[1])) {
    s.kind = ComponentShape::DoubleStar;
    s.a = inner[0];
    s.b = inner[1];
  }
  return s;
}

std::optional<Edge> lowest_legal_avoiding(const Position& p, Player side, const VertexSet& avoid) {
  const int n = p.n();
  for (int u = 0; u < n; ++u) {
    if (avoid.test(u)) continue;
    for (int v = u + 1; v < n; ++v) {
      if (avoid.test(v) || p.claimed(u, v)) continue;
      if (p.is_legal_for(side, Edge{u, v})) return Edge{u, v};
    }
  }
  return std::nullopt;
}

void require_game(const RuleSet& rules, const char* h, const char* f, const std::string& strategy) {
  if (!(rules.H == Pattern::parse(h)) || !(rules.F == Pattern::parse(f)))
    throw ConfigurationError("strategy '" + strategy + "' plays the " + h + "/" + f + " game, not " + rules.H.name() +
                             "/" + rules.F.name());
}

}  // namespace cbg
