#include "cbg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cbg {

Edge Edge::of(int a, int b) {
  if (a == b) throw std::invalid_argument("loop edge at vertex " + std::to_string(a));
  return a < b ? Edge{a, b} : Edge{b, a};
}

std::string to_string(Edge e) { return std::to_string(e.u) + "-" + std::to_string(e.v); }

std::int64_t edge_index(int n, Edge e) {
  const std::int64_t u = e.u;
  return u * (2 * static_cast<std::int64_t>(n) - u - 1) / 2 + (e.v - e.u - 1);
}

Edge edge_at(int n, std::int64_t index) {
  if (index < 0 || index >= pair_count(n)) throw std::out_of_range("edge index out of range");
  // Row u starts at u(2n-u-1)/2; solve for the largest u with start <= index.
  const double nn = n;
  auto u = static_cast<std::int64_t>(
      std::floor(((2 * nn - 1) - std::sqrt((2 * nn - 1) * (2 * nn - 1) - 8.0 * static_cast<double>(index))) / 2));
  auto start = [n](std::int64_t r) { return r * (2 * static_cast<std::int64_t>(n) - r - 1) / 2; };
  while (u > 0 && start(u) > index) --u;
  while (u + 1 < n && start(u + 1) <= index) ++u;
  return Edge{static_cast<int>(u), static_cast<int>(index - start(u) + u + 1)};
}

SimpleGraph::SimpleGraph(int n)
    : n_(n),
      words_(words_for(n)),
      bits_(static_cast<std::size_t>(n) * static_cast<std::size_t>(words_for(n)), 0),
      degree_(static_cast<std::size_t>(n), 0) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
}

SimpleGraph SimpleGraph::from_edges(int n, std::span<const Edge> edges) {
  SimpleGraph g(n);
  for (Edge e : edges) g.add_edge(e);
  return g;
}

SimpleGraph SimpleGraph::complete(int n) {
  SimpleGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge({u, v});
  return g;
}

int SimpleGraph::max_degree() const {
  return degree_.empty() ? 0 : *std::max_element(degree_.begin(), degree_.end());
}

int SimpleGraph::min_degree() const {
  return degree_.empty() ? 0 : *std::min_element(degree_.begin(), degree_.end());
}

std::vector<int> SimpleGraph::neighbor_list(int v) const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(degree(v)));
  for_each_bit(row(v), [&](int w) { out.push_back(w); });
  return out;
}

std::vector<Edge> SimpleGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(edges_));
  for (int u = 0; u < n_; ++u)
    for_each_bit(row(u), [&](int v) {
      if (v > u) out.push_back({u, v});
    });
  return out;
}

SimpleGraph SimpleGraph::with_edge(Edge e) const {
  SimpleGraph g = *this;
  g.add_edge(e);
  return g;
}

void SimpleGraph::add_edge(Edge e) {
  if (e.u < 0 || e.v >= n_ || e.u >= e.v) throw std::invalid_argument("bad edge " + to_string(e));
  if (has_edge(e)) throw std::invalid_argument("edge already present: " + to_string(e));
  bits_[row_offset(e.u) + static_cast<std::size_t>(e.v / kWordBits)] |= bit_of(e.v);
  bits_[row_offset(e.v) + static_cast<std::size_t>(e.u / kWordBits)] |= bit_of(e.u);
  ++degree_[static_cast<std::size_t>(e.u)];
  ++degree_[static_cast<std::size_t>(e.v)];
  ++edges_;
}

void SimpleGraph::remove_edge(Edge e) {
  if (!has_edge(e)) throw std::invalid_argument("edge not present: " + to_string(e));
  bits_[row_offset(e.u) + static_cast<std::size_t>(e.v / kWordBits)] &= ~bit_of(e.v);
  bits_[row_offset(e.v) + static_cast<std::size_t>(e.u / kWordBits)] &= ~bit_of(e.u);
  --degree_[static_cast<std::size_t>(e.u)];
  --degree_[static_cast<std::size_t>(e.v)];
  --edges_;
}

}  // namespace cbg
